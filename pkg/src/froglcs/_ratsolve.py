"""Exact rational solutions of integer linear systems.

Two entry points:

- kernel_vector(M): the one-dimensional kernel of an integer matrix whose
  columns sum to zero (stationary-balance matrices), normalized so a chosen
  reference entry is 1.
- solve_linear(A, b): the unique solution of a nonsingular integer system.

Both try a floating-point solve first and promote it to rationals with a
denominator ladder; if the promoted candidate fails exact verification they
fall back to Gaussian elimination modulo several word-sized primes, a CRT
combine, and rational reconstruction.  Every returned vector has been
verified exactly in integer arithmetic, so the float stage can never leak
an approximation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

_PRIME_FLOOR = (1 << 31) - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # Deterministic Miller-Rabin witnesses for n < 3.3 * 10^24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes():
    n = _PRIME_FLOOR
    while True:
        if _is_prime(n):
            yield n
        n -= 2


def _solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve a x = b mod p by elimination; None when a is singular mod p."""
    n = a.shape[0]
    m = np.concatenate([a % p, (b % p).reshape(n, 1)], axis=1).astype(np.int64)
    for col in range(n):
        piv = col + int(np.argmax(m[col:, col] != 0))
        if m[piv, col] == 0:
            return None
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
        inv = pow(int(m[col, col]), p - 2, p)
        m[col] = m[col] * inv % p
        factors = m[col + 1 :, col].copy()
        nz = factors != 0
        if nz.any():
            m[col + 1 :][nz] = (m[col + 1 :][nz] - np.outer(factors[nz], m[col])) % p
    x = np.zeros(n, dtype=np.int64)
    for col in range(n - 1, -1, -1):
        acc = int(m[col, n])
        if col + 1 < n:
            # Reduce each product mod p before summing so the int64
            # accumulator cannot overflow (n * p stays under 2^63).
            prods = m[col, col + 1 : n] * x[col + 1 :] % p
            acc = (acc - int(prods.sum())) % p
        x[col] = acc
    return x


def _rat_reconstruct(r: int, modulus: int) -> Fraction | None:
    """num/den with num = den*r mod modulus and |num|, den <= sqrt(modulus/2)."""
    bound = isqrt(modulus // 2)
    a0, a1 = modulus, r % modulus
    s0, s1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(a1, abs(s1)) != 1:
        return None
    return Fraction(a1, s1) if s1 > 0 else Fraction(-a1, -s1)


def _as_int_matrix(rows) -> list[list[int]]:
    return [[int(x) for x in row] for row in rows]


def _verify_int_solution(m_rows, numerators, denominator, rhs_scaled) -> bool:
    """Check m x = rhs exactly, with x_j = numerators[j]/denominator and the
    rhs already multiplied by the common denominator."""
    for row, want in zip(m_rows, rhs_scaled):
        acc = 0
        for coeff, num in zip(row, numerators):
            if coeff:
                acc += coeff * num
        if acc != want:
            return False
    return True


def _common_denominator(fracs) -> tuple[list[int], int]:
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    return [int(f * den) for f in fracs], den


def _float_candidate(sol: np.ndarray) -> list[Fraction] | None:
    out = []
    for v in sol:
        v = float(v)
        if not np.isfinite(v):
            return None
        best = None
        for cap in (10**3, 10**6, 10**9, 10**12):
            f = Fraction(v).limit_denominator(cap)
            if abs(float(f) - v) < 1e-9 * max(1.0, abs(v)):
                best = f
                break
        if best is None:
            return None
        out.append(best)
    return out


def _modular_solve(m_int, rhs_int, check) -> list[Fraction]:
    """CRT-accumulating exact solve of the square system m x = rhs."""
    n = len(m_int)
    cap = 1 << 62
    small = all(abs(x) < cap for row in m_int for x in row) and all(
        abs(x) < cap for x in rhs_int
    )
    if small:
        a64 = np.asarray(m_int, dtype=np.int64)
        b64 = np.asarray(rhs_int, dtype=np.int64)
    residues = None
    modulus = 1
    singular_seen = 0
    for p in _primes():
        if small:
            amod = a64 % p
            bmod = b64 % p
        else:
            amod = np.asarray([[x % p for x in row] for row in m_int], dtype=np.int64)
            bmod = np.asarray([x % p for x in rhs_int], dtype=np.int64)
        xp = _solve_mod(amod, bmod, p)
        if xp is None:
            singular_seen += 1
            if singular_seen >= 3:
                raise ArithmeticError("matrix is singular")
            continue
        if residues is None:
            residues = [int(v) for v in xp]
            modulus = p
        else:
            # CRT combine entrywise.
            inv = pow(modulus % p, p - 2, p)
            new = []
            for r_old, r_new in zip(residues, xp):
                t = (int(r_new) - r_old) % p * inv % p
                new.append(r_old + modulus * t)
            residues = new
            modulus *= p
        cand = []
        ok = True
        for r in residues:
            f = _rat_reconstruct(r, modulus)
            if f is None:
                ok = False
                break
            cand.append(f)
        if ok and check(cand):
            return cand
        if modulus.bit_length() > 4000:
            raise ArithmeticError("rational reconstruction failed")
    raise AssertionError("unreachable")


def solve_linear(a_rows, b) -> list[Fraction]:
    """Exact solution of the nonsingular integer system a x = b."""
    m_int = _as_int_matrix(a_rows)
    rhs = [int(x) for x in b]
    n = len(m_int)
    if n == 0:
        return []

    def check(cand: list[Fraction]) -> bool:
        nums, den = _common_denominator(cand)
        scaled = [x * den for x in rhs]
        return _verify_int_solution(m_int, nums, den, scaled)

    try:
        sol = np.linalg.solve(
            np.asarray(m_int, dtype=np.float64), np.asarray(rhs, dtype=np.float64)
        )
        cand = _float_candidate(sol)
        if cand is not None and check(cand):
            return cand
    except np.linalg.LinAlgError:
        pass
    return _modular_solve(m_int, rhs, check)


def kernel_vector(m_rows, ref: int = 0) -> list[Fraction]:
    """The kernel vector x of an integer matrix with zero column sums,
    normalized to x[ref] = 1.

    Requires the kernel to be one-dimensional; raises ArithmeticError
    otherwise.  The rows of m sum to the zero row (zero column sums), so one
    row is redundant and gets replaced by the normalization constraint; a
    nonsingularity certificate modulo a prime then proves the kernel is
    exactly one-dimensional.
    """
    m_int = _as_int_matrix(m_rows)
    n = len(m_int)
    if n == 0:
        raise ValueError("empty matrix")
    for j in range(n):
        if sum(row[j] for row in m_int) != 0:
            raise ValueError("columns must sum to zero")
    if n == 1:
        return [Fraction(1)]
    sq = [row[:] for row in m_int]
    sq[0] = [1 if j == ref else 0 for j in range(n)]
    rhs = [1] + [0] * (n - 1)

    def check(cand: list[Fraction]) -> bool:
        if cand[ref] != 1:
            return False
        nums, den = _common_denominator(cand)
        return _verify_int_solution(m_int[1:], nums, den, [0] * (n - 1)) and sum(
            a * b for a, b in zip(m_int[0], nums)
        ) == 0

    # A verified candidate shows m x = 0 has a solution with x[ref] = 1; a
    # nonsingularity certificate mod p for the square system (which keeps
    # n-1 rows of m) proves rank(m) = n-1, so the kernel is exactly
    # one-dimensional.  _modular_solve certifies implicitly: it only
    # returns after a successful elimination mod some prime.
    cand = None
    try:
        sol = np.linalg.solve(
            np.asarray(sq, dtype=np.float64), np.asarray(rhs, dtype=np.float64)
        )
        cand = _float_candidate(sol)
    except np.linalg.LinAlgError:
        pass
    if cand is not None and check(cand):
        for tries, p in enumerate(_primes()):
            amod = np.asarray([[x % p for x in row] for row in sq], dtype=np.int64)
            bmod = np.asarray(rhs, dtype=np.int64)
            if _solve_mod(amod, bmod, p) is not None:
                return cand
            if tries >= 2:
                break
        raise ArithmeticError("kernel dimension exceeds one")
    try:
        return _modular_solve(sq, rhs, check)
    except ArithmeticError as exc:
        raise ArithmeticError("kernel dimension exceeds one") from exc
