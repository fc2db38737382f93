"""The arrangement Markov chain of a periodic word and its consequences.

Poking a uniformly random symbol turns frog arrangements into a finite
Markov chain.  Enumerating the states reachable from rest, solving for the
stationary distribution, and averaging displacements gives the asymptotic
speed of every frog; from the speeds follow the rate curve

    gamma(rho) = rho - (1/k) * sum over m with s_m <= rho of (rho - s_m)

and, at the corner points rho = s_m, the fluctuation constant
tau = sigma_m / (k sqrt(2 pi)), where sigma_m^2 is the asymptotic variance
of frog m's displacement along the chain (computed from the fundamental
matrix of the auxiliary state-symbol chain).

Chains with at most RATIONAL_STATE_CAP states are solved exactly in
rational arithmetic; larger chains fall back to floating point with 1e-9
tolerances.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm, pi as _PI, sqrt
import json

import numpy as np

from ._ratsolve import kernel_vector, solve_linear
from .frogs import FrogArrangement, poke
from .words import Alphabet, Word, is_irreducible, parse_word

RATIONAL_STATE_CAP = 5000
DEFAULT_STATE_LIMIT = 10**6
FLOAT_TOL = 1e-9


def _as_word(w, alphabet_size: int | None = None) -> Word:
    if isinstance(w, str):
        w = parse_word(w, alphabet_size)
    elif not isinstance(w, Word):
        codes = tuple(int(c) for c in w)
        size = alphabet_size if alphabet_size is not None else max(codes, default=0) + 1
        w = Word(codes, Alphabet(size))
    if alphabet_size is not None:
        if alphabet_size < w.alphabet.size:
            raise ValueError("alphabet smaller than the word's symbols")
        w = Word(w.symbols, Alphabet(alphabet_size))
    return w


@dataclass
class ChainSolution:
    """The arrangement chain of a word: states, transitions, and lazily
    filled solution data.  Construct with enumerate_recurrent; once the
    solver functions have run, treat the object as immutable."""

    word: Word
    alphabet_size: int
    states: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    transitions: list[list[tuple[int, tuple[int, ...]]]]
    exact: bool
    stationary: list | None = None
    speeds: list | None = None
    sigmas: dict[int, float] = field(default_factory=dict)
    sigma_sqs: dict[int, object] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.word)


def enumerate_recurrent(
    w, alphabet_size: int | None = None, state_limit: int = DEFAULT_STATE_LIMIT
) -> ChainSolution:
    """Breadth-first closure of the resting arrangement under all pokes.

    The word must be irreducible (a word that is a strict power of a
    shorter word yields the degenerate chain of its root).
    """
    w = _as_word(w, alphabet_size)
    if not is_irreducible(w):
        raise ValueError("reducible word")
    k = len(w)
    sigma = w.alphabet.size
    init = FrogArrangement.initial(k)
    states: list[tuple[int, ...]] = [init.pad_of]
    index = {init.pad_of: 0}
    transitions: list[list[tuple[int, tuple[int, ...]]]] = []
    frontier = deque([init])
    while frontier:
        f = frontier.popleft()
        row = []
        for a in range(sigma):
            rec = poke(f, a, w)
            key = rec.arrangement.pad_of
            j = index.get(key)
            if j is None:
                j = len(states)
                if j >= state_limit:
                    raise ValueError("state space too large")
                index[key] = j
                states.append(key)
                frontier.append(rec.arrangement)
            row.append((j, rec.displacement))
        transitions.append(row)
    return ChainSolution(
        word=w,
        alphabet_size=sigma,
        states=states,
        index=index,
        transitions=transitions,
        exact=len(states) <= RATIONAL_STATE_CAP,
    )


def _bottom_sccs(n: int, succ: list[list[int]]) -> list[list[int]]:
    """Strongly connected components with no outgoing edges (recurrent
    classes), via iterative Tarjan."""
    sccs = []
    indexof = [-1] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    counter = 0
    for root in range(n):
        if indexof[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                indexof[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack[v] = True
            advanced = False
            for i in range(pi, len(succ[v])):
                u = succ[v][i]
                if indexof[u] == -1:
                    work[-1] = (v, i + 1)
                    work.append((u, 0))
                    advanced = True
                    break
                if onstack[u]:
                    low[v] = min(low[v], indexof[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == indexof[v]:
                group = []
                while True:
                    u = stack.pop()
                    onstack[u] = False
                    comp[u] = len(sccs)
                    group.append(u)
                    if u == v:
                        break
                sccs.append(group)
    bottoms = []
    for ci, group in enumerate(sccs):
        if all(comp[u] == ci for v in group for u in succ[v]):
            bottoms.append(sorted(group))
    return bottoms


def _stationary_on(sub: list[int], succ: list[list[int]], sigma: int, exact: bool):
    """Stationary distribution of the chain restricted to the closed set sub
    (list of state indices); returns a dict index -> probability."""
    pos = {s: i for i, s in enumerate(sub)}
    n = len(sub)
    indeg = [0] * n
    for s in sub:
        for t in succ[s]:
            indeg[pos[t]] += 1
    if all(d == sigma for d in indeg):
        # Every state also has out-degree sigma, so the chain restricted
        # to this closed class is doubly stochastic and the uniform law
        # is stationary; the caller has already ensured uniqueness.
        unit = Fraction(1, n) if exact else 1.0 / n
        return {s: unit for s in sub}
    counts = [[0] * n for _ in range(n)]
    for s in sub:
        for t in succ[s]:
            counts[pos[s]][pos[t]] += 1
    if exact:
        m = [
            [(sigma if i == j else 0) - counts[j][i] for j in range(n)]
            for i in range(n)
        ]
        try:
            x = kernel_vector(m)
        except ArithmeticError as exc:
            raise ValueError("chain not uniquely ergodic") from exc
        total = sum(x)
        return {s: x[i] / total for i, s in enumerate(sub)}
    p = np.asarray(counts, dtype=np.float64) / sigma
    # Lazy power iteration: same stationary distribution, guaranteed
    # convergence even for periodic chains.
    v = np.full(n, 1.0 / n)
    for _ in range(1_000_000):
        nv = 0.5 * (v + v @ p)
        if np.max(np.abs(nv - v)) < 1e-14:
            v = nv
            break
        v = nv
    v = v / v.sum()
    return {s: float(v[i]) for i, s in enumerate(sub)}


def stationary(sol: ChainSolution):
    """Stationary distribution over sol.states (cached on the solution).

    Raises ValueError("chain not uniquely ergodic") when the transition
    structure has more than one recurrent class.
    """
    if sol.stationary is not None:
        return sol.stationary
    n = len(sol.states)
    succ = [[j for j, _ in row] for row in sol.transitions]
    bottoms = _bottom_sccs(n, succ)
    if len(bottoms) != 1:
        raise ValueError("chain not uniquely ergodic")
    dist = _stationary_on(bottoms[0], succ, sol.alphabet_size, sol.exact)
    zero = Fraction(0) if sol.exact else 0.0
    sol.stationary = [dist.get(i, zero) for i in range(n)]
    return sol.stationary


def speeds_exact(sol: ChainSolution):
    """Asymptotic speeds (s_1, ..., s_k): stationary expectation of each
    frog's displacement per poke.  Exact rationals within the state cap."""
    if sol.speeds is not None:
        return sol.speeds
    pi_vec = stationary(sol)
    k = sol.k
    sigma = sol.alphabet_size
    sums = [Fraction(0)] * k if sol.exact else [0.0] * k
    for p, row in zip(pi_vec, sol.transitions):
        if not p:
            continue
        for _, disp in row:
            for m in range(k):
                if disp[m]:
                    sums[m] += p * disp[m]
    sol.speeds = [s / sigma for s in sums]
    return sol.speeds


def gamma(speeds, k: int, rho):
    """The rate curve gamma(rho) = rho - (1/k) sum_{s_m <= rho} (rho - s_m).

    Accepts exact or floating speeds; rho may be a Fraction, int, or float
    (negative rho is rejected).
    """
    if rho < 0:
        raise ValueError("rho must be non-negative")
    if len(speeds) != k:
        raise ValueError("expected k speeds")
    acc = rho - rho  # zero of the right type
    for s in speeds:
        if s <= rho:
            acc += rho - s
    return rho - acc / k


def sigma_sq(sol: ChainSolution, m: int):
    """Asymptotic variance sigma_m^2 of frog m's displacement per step.

    Solved on the auxiliary chain whose states are (arrangement, poked
    symbol) pairs: with P its kernel, pi-hat its stationary distribution,
    and f the centered displacement of frog m per auxiliary state,
    sigma^2 = 2 sum pi-hat f Zf - sum pi-hat f^2 + (sum pi-hat f)^2 where
    Zf solves (I - P + 1 pi-hat^T) y = f.
    """
    if not 1 <= m <= sol.k:
        raise ValueError("frog index out of range")
    if m in sol.sigma_sqs:
        return sol.sigma_sqs[m]
    pi_vec = stationary(sol)
    s_m = speeds_exact(sol)[m - 1]
    sigma = sol.alphabet_size
    n = len(sol.states)
    ne = n * sigma
    if ne > 20000:
        raise ValueError("state space too large for sigma")
    succ = [[j for j, _ in row] for row in sol.transitions]
    disp = [[d[m - 1] for _, d in row] for row in sol.transitions]
    if sol.exact:
        dens = lcm(*[f.denominator for f in pi_vec]) if n else 1
        scale = lcm(dens, Fraction(s_m).denominator) * sigma
        pihat_scaled = [0] * ne  # scale * pi-hat per auxiliary state
        f_scaled = [0] * ne  # scale * centered displacement
        for i in range(n):
            ps = pi_vec[i] * scale / sigma
            assert ps.denominator == 1
            for a in range(sigma):
                e = i * sigma + a
                pihat_scaled[e] = int(ps)
                fe = (disp[i][a] - s_m) * scale
                assert fe.denominator == 1
                f_scaled[e] = int(fe)
        step = scale // sigma
        rows = []
        for i in range(n):
            for a in range(sigma):
                row = list(pihat_scaled)
                e = i * sigma + a
                row[e] += scale
                base = succ[i][a] * sigma
                for b in range(sigma):
                    row[base + b] -= step
                rows.append(row)
        y = solve_linear(rows, f_scaled)
        sc = Fraction(scale)
        total = Fraction(0)
        lin = Fraction(0)
        quad = Fraction(0)
        for e in range(ne):
            ph = pihat_scaled[e] / sc
            fe = f_scaled[e] / sc
            lin += ph * fe * y[e]
            quad += ph * fe * fe
            total += ph * fe
        out = 2 * lin - quad + total * total
    else:
        pihat = np.empty(ne)
        fvec = np.empty(ne)
        for i in range(n):
            for a in range(sigma):
                e = i * sigma + a
                pihat[e] = float(pi_vec[i]) / sigma
                fvec[e] = float(disp[i][a]) - float(s_m)
        succ_state = np.empty(ne, dtype=np.int64)
        for i in range(n):
            for a in range(sigma):
                succ_state[i * sigma + a] = succ[i][a]
        # y <- (y + Py)/2 + f/2 keeps pi-hat y = 0 and converges to the
        # centered solution of (I - P) y = f.
        y = np.zeros(ne)
        for _ in range(2_000_000):
            block = y.reshape(n, sigma).mean(axis=1)
            py = block[succ_state]
            ny = 0.5 * (y + py) + 0.5 * fvec
            if np.max(np.abs(ny - y)) < 1e-13:
                y = ny
                break
            y = ny
        out = float(2 * np.dot(pihat * fvec, y) - np.dot(pihat, fvec * fvec)
                    + np.dot(pihat, fvec) ** 2)
    if out < 0:
        if sol.exact or out < -1e-9:
            raise ArithmeticError("negative variance")
        out = 0.0
    sol.sigma_sqs[m] = out
    return out


def sigma_m(sol: ChainSolution, m: int) -> float:
    """sigma_m, the square root of the asymptotic variance of frog m."""
    if m not in sol.sigmas:
        sol.sigmas[m] = sqrt(sigma_sq(sol, m))
    return sol.sigmas[m]


def tau(sol: ChainSolution, rho) -> float:
    """Fluctuation constant at rho: sigma_m/(k sqrt(2 pi)) when rho equals
    the speed s_m, zero elsewhere."""
    if rho < 0:
        raise ValueError("rho must be non-negative")
    speeds = speeds_exact(sol)
    for m, s in enumerate(speeds, start=1):
        hit = (s == rho) if sol.exact else abs(float(s) - float(rho)) <= FLOAT_TOL
        if hit:
            return sigma_m(sol, m) / (sol.k * sqrt(2 * _PI))
    return 0.0


@dataclass(frozen=True)
class GammaCurve:
    """Piecewise-linear rate curve: breakpoints (rho, gamma, tau) at the
    speeds and slope segments between them (hi None on the last, flat
    segment)."""

    breakpoints: tuple[tuple[Fraction, Fraction, float], ...]
    segments: tuple[tuple[Fraction, Fraction | None, Fraction], ...]

    def evaluate(self, rho):
        if rho < 0:
            raise ValueError("rho must be non-negative")
        acc = Fraction(0)
        for lo, hi, slope in self.segments:
            if hi is None or rho <= hi:
                return acc + slope * (rho - lo)
            acc += slope * (hi - lo)
        raise AssertionError("segments must end with an unbounded piece")

    def to_json(self) -> str:
        return json.dumps(
            {
                "breakpoints": [
                    {"rho": str(r), "gamma": str(g), "tau": t}
                    for r, g, t in self.breakpoints
                ],
                "segments": [
                    {
                        "lo": str(lo),
                        "hi": None if hi is None else str(hi),
                        "slope": str(s),
                    }
                    for lo, hi, s in self.segments
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "GammaCurve":
        data = json.loads(text)
        bps = tuple(
            (Fraction(b["rho"]), Fraction(b["gamma"]), float(b["tau"]))
            for b in data["breakpoints"]
        )
        segs = tuple(
            (
                Fraction(s["lo"]),
                None if s["hi"] is None else Fraction(s["hi"]),
                Fraction(s["slope"]),
            )
            for s in data["segments"]
        )
        return cls(bps, segs)


def gamma_curve(sol: ChainSolution, with_tau: bool = True) -> GammaCurve:
    """Breakpoints and slope segments of gamma for an exactly solved chain."""
    if not sol.exact:
        raise ValueError("gamma_curve requires the exact backend")
    speeds = speeds_exact(sol)
    k = sol.k
    bps = []
    for m, s in enumerate(speeds, start=1):
        g = gamma(speeds, k, s)
        t = tau(sol, s) if with_tau else 0.0
        bps.append((Fraction(s), Fraction(g), t))
    segs = []
    prev = Fraction(0)
    for m, s in enumerate(speeds):
        segs.append((prev, Fraction(s), Fraction(k - m, k)))
        prev = Fraction(s)
    segs.append((prev, None, Fraction(0)))
    return GammaCurve(tuple(bps), tuple(segs))


def speeds_closed_form(k: int, alphabet_size: int) -> list[Fraction]:
    """Speeds of the k distinct-symbol word: s_i = k(k+1)/(sigma (k+2-i)(k+1-i))."""
    if k < 1 or alphabet_size < k:
        raise ValueError("need alphabet size at least k")
    return [
        Fraction(k * (k + 1), alphabet_size * (k + 2 - i) * (k + 1 - i))
        for i in range(1, k + 1)
    ]


def gamma_min_form(k: int) -> tuple[Fraction, bool]:
    """gamma at rho = 1 for the k distinct-symbol word as a minimum over
    positive integers, min_t (k + t^2)/(k (t+1)), together with a flag that
    is True when the minimum is achieved twice (which happens exactly when
    k = r^2 + r - 1 for some integer r, the k with nonzero tau at rho=1)."""
    if k < 1:
        raise ValueError("k must be positive")
    vals = [(Fraction(k + t * t, k * (t + 1)), t) for t in range(k + 2)]
    best = min(v for v, _ in vals)
    winners = [t for v, t in vals if v == best]
    return best, len(winners) > 1


@dataclass(frozen=True)
class MArrangement:
    """An unranked arrangement: which pads the top m frogs occupy."""

    k: int
    occupied: frozenset

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        occ = frozenset(self.occupied)
        object.__setattr__(self, "occupied", occ)
        if not all(0 <= p < self.k for p in occ):
            raise ValueError("pads out of range")


def marrangement_step(s: MArrangement, a: int, w) -> tuple[MArrangement, int]:
    """Poke symbol a in the unranked dynamics; returns the new occupied set
    and the number of single-pad hop events H (which equals the sum of the
    top-m frog displacements in the full dynamics)."""
    labels = tuple(w)
    k = len(labels)
    if k != s.k:
        raise ValueError("arrangement size does not match word length")
    occupied = set(s.occupied)
    queue = deque(p for p in occupied if labels[p] == a)
    for p in queue:
        occupied.discard(p)
    hops = 0
    limit = k * (len(s.occupied) + 1)
    while queue:
        x = queue.popleft()
        y = x + 1
        if y == k:
            y = 0
        hops += 1
        if hops > limit:
            raise RuntimeError("cascade failed to settle")
        if y in occupied:
            queue.append(y)
        else:
            occupied.add(y)
    return MArrangement(k, frozenset(occupied)), hops


def reduced_chain(w, m: int, alphabet_size: int | None = None,
                  state_limit: int = DEFAULT_STATE_LIMIT):
    """Closure of the resting m-arrangement under pokes: returns
    (states, transitions) with transitions[i][a] = (j, hops)."""
    w = _as_word(w, alphabet_size)
    if not is_irreducible(w):
        raise ValueError("reducible word")
    k = len(w)
    if not 1 <= m <= k:
        raise ValueError("m out of range")
    sigma = w.alphabet.size
    init = MArrangement(k, frozenset(range(m)))
    states = [init]
    index = {init.occupied: 0}
    transitions: list[list[tuple[int, int]]] = []
    frontier = deque([init])
    while frontier:
        s = frontier.popleft()
        row = []
        for a in range(sigma):
            t, hops = marrangement_step(s, a, w)
            j = index.get(t.occupied)
            if j is None:
                j = len(states)
                if j >= state_limit:
                    raise ValueError("state space too large")
                index[t.occupied] = j
                states.append(t)
                frontier.append(t)
            row.append((j, hops))
        transitions.append(row)
    return states, transitions


def speeds_reduced(w, alphabet_size: int | None = None,
                   state_limit: int = DEFAULT_STATE_LIMIT):
    """Speeds recovered from the unranked m-arrangement chains: the
    stationary expectation of H in the m-chain is s_1 + ... + s_m, so
    differencing consecutive chains recovers every speed without ranking
    the k! full arrangements."""
    w = _as_word(w, alphabet_size)
    k = len(w)
    prev = Fraction(0)
    speeds = []
    for m in range(1, k + 1):
        states, transitions = reduced_chain(w, m, state_limit=state_limit)
        n = len(states)
        sigma = w.alphabet.size
        succ = [[j for j, _ in row] for row in transitions]
        bottoms = _bottom_sccs(n, succ)
        if len(bottoms) != 1:
            raise ValueError("chain not uniquely ergodic")
        use_exact = n <= RATIONAL_STATE_CAP
        dist = _stationary_on(bottoms[0], succ, sigma, use_exact)
        total = sum(
            (p * sum(h for _, h in transitions[i]) for i, p in dist.items()),
            Fraction(0) if use_exact else 0.0,
        )
        mean_h = total / sigma
        speeds.append(mean_h - prev)
        prev = mean_h
    return speeds
