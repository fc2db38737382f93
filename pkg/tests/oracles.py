"""Independent reference implementations used as oracles by the tests.

Everything here is written in the most straightforward way available
(full tables, exhaustive enumeration, direct transcriptions of the
definitions) and shares no code with the package under test.
"""

from itertools import combinations, product


def lcs_ref(v, w) -> int:
    """Textbook full-table LCS dynamic program."""
    a = list(v)
    b = list(w)
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if a[i - 1] == b[j - 1]:
                dp[i][j] = dp[i - 1][j - 1] + 1
            else:
                dp[i][j] = max(dp[i - 1][j], dp[i][j - 1])
    return dp[n][m]


def lcs_brute(v, w) -> int:
    """LCS by enumerating subsequences of the shorter word (tiny inputs)."""
    a = list(v)
    b = list(w)
    if len(a) > len(b):
        a, b = b, a

    def is_subseq(s, t):
        it = iter(t)
        return all(c in it for c in s)

    for r in range(len(a), 0, -1):
        for idx in combinations(range(len(a)), r):
            if is_subseq([a[i] for i in idx], b):
                return r
    return 0


def lcs_banded_ref(v, w, t: int) -> int:
    """Full-table LCS allowing only matches (i, j) with |i - j| <= t."""
    a = list(v)
    b = list(w)
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            best = max(dp[i - 1][j], dp[i][j - 1])
            if a[i - 1] == b[j - 1] and abs(i - j) <= t:
                best = max(best, dp[i - 1][j - 1] + 1)
            dp[i][j] = best
    return dp[n][m]


def periodic_prefix(w, n: int) -> list:
    """First n symbols of the periodic extension of w, by plain repetition."""
    period = list(w)
    out = []
    while len(out) < n:
        out.extend(period)
    return out[:n]


def height_profile(r, w, upto: int) -> list:
    """[LCS(r, w-periodic prefix of length x) for x in 0..upto]."""
    return [lcs_ref(r, periodic_prefix(w, x)) for x in range(upto + 1)]


def optimistic_scan(k: int, positives, negatives) -> list:
    """Pads from which every cyclic signed partial sum stays positive.

    Direct transcription of the partial-sum condition; returns every pad
    that passes, so uniqueness can be asserted by the caller.
    """
    hits = []
    for x in sorted(set(positives) - set(negatives)):
        ok = True
        for j in range(k):
            s = 0
            for i in range(j + 1):
                pad = (x + i) % k
                s += (1 if pad in positives else 0) - (1 if pad in negatives else 0)
            if s <= 0:
                ok = False
                break
        if ok:
            hits.append(x)
    return hits


def omega_member(k, pos, neg, sign, idx, phase) -> bool:
    """Membership test for labeled cascade configurations.

    A configuration is admissible when the arrangement is valid (no two
    same-sign frogs per pad) at begin or end; at trans either the only
    clash is a same-sign pair involving the focused frog, or the
    arrangement is valid, the focus positive, and a negative frog sits
    on the focused pad.
    """
    own = pos if sign == "+" else neg
    if not 0 <= idx < len(own):
        return False
    if any(not 0 <= p < k for p in pos + neg):
        return False
    valid = len(set(pos)) == len(pos) and len(set(neg)) == len(neg)
    if phase in ("begin", "end"):
        return valid
    if phase != "trans":
        return False
    shadowed = valid and sign == "+" and pos[idx] in neg
    rest = own[:idx] + own[idx + 1:]
    other = neg if sign == "+" else pos
    clash_on_focus = (
        not valid
        and len(set(rest)) == len(rest)
        and len(set(other)) == len(other)
    )
    return shadowed or clash_on_focus


def enumerate_omega(k, a, b, phases=("begin", "trans", "end")) -> list:
    """All admissible (pos, neg, sign, idx, phase) tuples for given sizes."""
    out = []
    for pos in product(range(k), repeat=a):
        for neg in product(range(k), repeat=b):
            for sign, count in (("+", a), ("-", b)):
                for idx in range(count):
                    for phase in phases:
                        if omega_member(k, pos, neg, sign, idx, phase):
                            out.append((pos, neg, sign, idx, phase))
    return out


def stationary_ref(rows):
    """Exact stationary distribution of a finite chain by Gaussian elimination.

    ``rows[i]`` is a list of ``(j, p)`` pairs with exact probabilities
    summing to one.  Solves ``pi P = pi`` together with ``sum(pi) = 1``
    over the rationals and raises ``ValueError`` unless the solution is
    unique.
    """
    from fractions import Fraction

    n = len(rows)
    # Equations: columns of (P^T - I) applied to pi, then the normalization.
    mat = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i, row in enumerate(rows):
        for j, p in row:
            mat[j][i] += Fraction(p)
        mat[i][i] -= 1
    for i in range(n):
        mat[n][i] = Fraction(1)
    mat[n][n] = Fraction(1)  # right-hand side of the normalization row

    pivots = []
    r = 0
    for c in range(n):
        sel = next((i for i in range(r, n + 1) if mat[i][c] != 0), None)
        if sel is None:
            raise ValueError("stationary distribution is not unique")
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(n + 1):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n + 1):
        if mat[i][n] != 0:
            raise ValueError("no stationary distribution")
    pi = [Fraction(0)] * n
    for row_idx, c in enumerate(pivots):
        pi[c] = mat[row_idx][n]
    return pi
