"""Signed frogs on a ring: the two-species chain behind the marginal law.

A state places ``a`` positive and ``b`` negative frogs on k pads, at most
one of each sign per pad.  Poking a frog sets off a short cascade of
forward hops; the cascade is asymmetric (negative frogs wake positive
frogs but not the other way around), which is what makes the chain
doubly stochastic and its uniform measure stationary.

The module keeps two views of the cascade.  `poke_signed` works on bare
states.  `t_step`/`r_map` work on configurations whose frogs carry
labels, which is the level at which time reversal is an exact involution
and at which the reversal argument is machine-checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

import numpy as np

from .frogs import FrogArrangement, poke
from .lcs import _codes

BEGIN = "begin"
TRANS = "trans"
END = "end"

POSITIVE = "+"
NEGATIVE = "-"


@dataclass(frozen=True)
class SignedState:
    """Pad sets of the positive and the negative frogs."""

    k: int
    positives: frozenset
    negatives: frozenset

    def __post_init__(self):
        object.__setattr__(self, "positives", frozenset(self.positives))
        object.__setattr__(self, "negatives", frozenset(self.negatives))
        if self.k < 1:
            raise ValueError("ring needs at least one pad")
        for pad in self.positives | self.negatives:
            if not 0 <= int(pad) < self.k:
                raise ValueError("pad index out of range")


def _all_distinct(pads) -> bool:
    return len(set(pads)) == len(pads)


@dataclass(frozen=True)
class LabeledConfig:
    """One intermediate moment of a cascade, with frogs told apart.

    pos[i] and neg[i] are the pads of positive frog i and negative frog
    i; focus names the distinguished frog as a (sign, index) pair and
    phase is begin, trans or end.  At begin and end the arrangement must
    be valid (no two frogs of one sign on a pad).  At trans either the
    only clash involves the focused frog, or the arrangement is valid,
    the focus is positive and a negative frog shares its pad.
    """

    k: int
    pos: tuple
    neg: tuple
    focus: tuple
    phase: str

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(self.pos))
        object.__setattr__(self, "neg", tuple(self.neg))
        object.__setattr__(self, "focus", tuple(self.focus))
        if self.phase not in (BEGIN, TRANS, END):
            raise ValueError("phase must be begin, trans or end")
        for pad in self.pos + self.neg:
            if not 0 <= pad < self.k:
                raise ValueError("pad index out of range")
        sign, idx = self.focus
        own = self.pos if sign == POSITIVE else self.neg if sign == NEGATIVE else None
        if own is None:
            raise ValueError("focus sign must be '+' or '-'")
        if not 0 <= idx < len(own):
            raise ValueError("focus index out of range")
        valid = _all_distinct(self.pos) and _all_distinct(self.neg)
        if self.phase in (BEGIN, END):
            if not valid:
                raise ValueError("arrangement must be valid outside trans")
        elif valid:
            if not (sign == POSITIVE and self.pos[idx] in self.neg):
                raise ValueError("valid trans needs a positive focus shadowed"
                                 " by a negative frog")
        else:
            rest = tuple(p for j, p in enumerate(own) if j != idx)
            others = self.neg if sign == POSITIVE else self.pos
            if not (_all_distinct(rest) and _all_distinct(others)):
                raise ValueError("trans clash must involve the focused frog")

    def pad(self) -> int:
        """Pad of the focused frog."""
        sign, idx = self.focus
        return (self.pos if sign == POSITIVE else self.neg)[idx]


def t_step(c: LabeledConfig) -> LabeledConfig:
    """Advance a cascade by one intermediate step.

    A freshly poked positive frog that shares its pad with a negative
    frog calms down on the spot and nothing moves.  Otherwise the
    focused frog hops one pad forward; a same-sign frog on the landing
    pad takes over the agitation, a positive frog takes over when a
    negative lands on it, and failing both the cascade ends.
    """
    if c.phase == END:
        raise ValueError("cannot step an ended configuration")
    sign, idx = c.focus
    if c.phase == BEGIN and sign == POSITIVE:
        here = c.pos[idx]
        if here in c.neg:
            quiet = (NEGATIVE, c.neg.index(here))
            return LabeledConfig(c.k, c.pos, c.neg, quiet, END)
    if sign == POSITIVE:
        land = (c.pos[idx] + 1) % c.k
        pos = c.pos[:idx] + (land,) + c.pos[idx + 1:]
        neg = c.neg
        own = pos
    else:
        land = (c.neg[idx] + 1) % c.k
        pos = c.pos
        neg = c.neg[:idx] + (land,) + c.neg[idx + 1:]
        own = neg
    for j, p in enumerate(own):
        if j != idx and p == land:
            return LabeledConfig(c.k, pos, neg, (sign, j), TRANS)
    if sign == NEGATIVE and land in pos:
        return LabeledConfig(c.k, pos, neg, (POSITIVE, pos.index(land)), TRANS)
    return LabeledConfig(c.k, pos, neg, (sign, idx), END)


def r_map(c: LabeledConfig) -> LabeledConfig:
    """Reverse time: swap signs, mirror the ring, swap begin with end.

    On trans configurations the focus moves to the partner sharing the
    focused frog's pad (the same-sign clash partner when there is one,
    the shadowing negative frog otherwise, kept positive).  r_map is an
    involution and conjugating t_step with it undoes a step.
    """
    k = c.k
    pos = tuple((k - p) % k for p in c.neg)
    neg = tuple((k - p) % k for p in c.pos)
    sign, idx = c.focus
    flip = NEGATIVE if sign == POSITIVE else POSITIVE
    if c.phase == BEGIN:
        return LabeledConfig(k, pos, neg, (flip, idx), END)
    if c.phase == END:
        return LabeledConfig(k, pos, neg, (flip, idx), BEGIN)
    own = c.pos if sign == POSITIVE else c.neg
    here = own[idx]
    for j, p in enumerate(own):
        if j != idx and p == here:
            return LabeledConfig(k, pos, neg, (flip, j), TRANS)
    return LabeledConfig(k, pos, neg, (POSITIVE, c.neg.index(here)), TRANS)


def lift_state(s: SignedState, frog, order=None) -> LabeledConfig:
    """Label the frogs of a state and focus the one about to be poked.

    frog is a (sign, pad) pair.  The canonical labelling numbers each
    sign by increasing pad; order may supply any other labelling as a
    (positive pads, negative pads) pair of sequences.
    """
    sign, pad = frog
    if sign not in (POSITIVE, NEGATIVE):
        raise ValueError("frog sign must be '+' or '-'")
    if order is None:
        pos = tuple(sorted(s.positives))
        neg = tuple(sorted(s.negatives))
    else:
        pos, neg = tuple(order[0]), tuple(order[1])
        if frozenset(pos) != s.positives or len(pos) != len(s.positives) \
                or frozenset(neg) != s.negatives or len(neg) != len(s.negatives):
            raise ValueError("labelling does not match the state")
    own = pos if sign == POSITIVE else neg
    if pad not in own:
        raise ValueError("no such frog in the state")
    return LabeledConfig(s.k, pos, neg, (sign, own.index(pad)), BEGIN)


def poke_signed(s: SignedState, frog, order=None) -> SignedState:
    """Poke one signed frog and run its cascade to completion.

    The result does not depend on the labelling chosen by `order`.

    >>> s = SignedState(3, frozenset({0}), frozenset({0}))
    >>> sorted(poke_signed(s, ('-', 0)).negatives)
    [1]
    >>> poke_signed(s, ('+', 0)) == s
    True
    """
    c = lift_state(s, frog, order)
    for _ in range(4 * s.k + 4):
        c = t_step(c)
        if c.phase == END:
            return SignedState(s.k, frozenset(c.pos), frozenset(c.neg))
    raise AssertionError("cascade failed to settle")


def optimistic_frog(s: SignedState) -> int:
    """Pad of the positive frog all of whose signed partial sums are positive.

    Needs exactly one more positive than negative frog; the cycle lemma
    then makes the pad unique.
    """
    k = s.k
    if len(s.positives) != len(s.negatives) + 1:
        raise ValueError("need exactly one more positive frog than negative")
    weight = [0] * k
    for p in s.positives:
        weight[p] += 1
    for p in s.negatives:
        weight[p] -= 1
    for x in sorted(s.positives - s.negatives):
        run = 0
        for j in range(k):
            run += weight[x + j - k if x + j >= k else x + j]
            if run <= 0:
                break
        else:
            return x
    raise AssertionError("cycle lemma failed to produce a pad")


def lazy_probability(k: int, m: int) -> Fraction:
    """Chance that one step of the lazy coupled chain pokes nobody."""
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    return Fraction(max(0, k - 2 * m - 1), k)


def _check_positions(k: int, m: int, positions) -> list:
    if k < 1 or not 0 <= m <= k - 1:
        raise ValueError("need k >= 1 and 0 <= m <= k - 1")
    pts = [int(p) for p in positions]
    if len(pts) != m + 1:
        raise ValueError("malformed positions: expected m + 1 of them")
    for i in range(m):
        if pts[i] <= pts[i + 1]:
            raise ValueError("malformed positions: must strictly decrease")
    if pts[0] >= pts[-1] + k:
        raise ValueError("malformed positions: must span less than the ring")
    return pts


def margins_formula(k: int, m: int, positions) -> Fraction:
    """Chance the next-ranked frog sits on the last listed pad.

    positions lists the pads of the m known frogs followed by the
    candidate pad, strictly decreasing and spanning less than one turn
    of the ring.  The answer is a sum of binomial products over vectors
    whose prefix sums never outrun their index, normalized by the number
    of candidate pad sets; it is exact.

    >>> margins_formula(4, 1, (2, 0))
    Fraction(1, 3)
    """
    pts = _check_positions(k, m, positions)
    deltas = [pts[i] - pts[i + 1] for i in range(m)]
    total = 0

    def descend(i, used, weight):
        nonlocal total
        if i == m:
            if used == m:
                total += weight
            return
        cap = min(deltas[i], i + 1 - used)
        for a in range(cap + 1):
            descend(i + 1, used + a, weight * math.comb(deltas[i], a))

    descend(0, 0, 1)
    return Fraction(total, math.comb(k, m + 1))


def margins_bruteforce(k: int, m: int, positions) -> Fraction:
    """Count positive pad sets whose optimistic frog is the candidate.

    Enumerates all (k choose m+1) pad sets against the cycle-lemma
    definition directly; an independent cross-check of margins_formula.
    """
    pts = _check_positions(k, m, positions)
    lower = frozenset(p % k for p in pts[:m])
    target = pts[-1] % k
    hits = 0
    for combo in combinations(range(k), m + 1):
        s = SignedState(k, frozenset(combo), lower)
        if optimistic_frog(s) == target:
            hits += 1
    return Fraction(hits, math.comb(k, m + 1))


def window_positions(k: int, candidate: int, lower) -> tuple:
    """Unroll ring pads into the decreasing window ending at the candidate.

    Produces the positions argument of the marginal evaluators from a
    candidate pad and the set of pads of the known frogs.
    """
    pads = [int(p) % k for p in lower]
    if int(candidate) % k in pads:
        raise ValueError("candidate pad is already occupied")
    top = int(candidate) % k
    reps = sorted((top + ((p - top) % k) for p in pads), reverse=True)
    return tuple(reps) + (top,)


@dataclass(frozen=True)
class CoupledRunResult:
    """Joint occupancy tallies from a coupled chain-and-dynamics run."""

    k: int
    m: int
    steps: int
    burn_in: int
    counts: Mapping

    def marginal_sets(self) -> dict:
        """Counts of the pad set of the m nastiest frogs."""
        out = {}
        for (_, pads), c in self.counts.items():
            out[pads] = out.get(pads, 0) + c
        return out

    def marginal_top(self) -> dict:
        """Counts of the pad of the next-ranked frog."""
        out = {}
        for (pad, _), c in self.counts.items():
            out[pad] = out.get(pad, 0) + c
        return out

    def total_variation_from_margins(self) -> float:
        """Total-variation gap between the tallies and the marginal law.

        The reference joint law puts equal mass on every pad set and
        spreads it over candidate pads by margins_formula.
        """
        total = sum(self.counts.values())
        sets = math.comb(self.k, self.m)
        gap = Fraction(0)
        for pads in combinations(range(self.k), self.m):
            for top in range(self.k):
                if top in pads:
                    continue
                want = margins_formula(
                    self.k, self.m, window_positions(self.k, top, pads),
                ) / sets
                got = Fraction(self.counts.get((top, pads), 0), total)
                gap += abs(want - got)
        return float(gap / 2)


def coupled_run(w, m: int, steps: int, seed: int = 0,
                burn_in: int = 0) -> CoupledRunResult:
    """Drive the signed chain and the frog dynamics with shared pokes.

    w must use each of its symbols exactly once, so pads and letters
    correspond.  Each step pokes one of the 2m+1 signed frogs with
    probability 1/max(k, 2m+1) apiece; poking a negative frog or the
    optimistic frog pokes the matching pad, and otherwise a uniformly
    random letter away from the m+1 nastiest frogs is poked.  The run
    checks at each step that the two sides stay compatible and tallies
    the (next-ranked pad, nastiest pad set) pairs after burn_in steps.
    """
    raw = tuple(_codes(w))
    k = len(raw)
    if len(set(raw)) != k:
        raise ValueError("symbols must be distinct")
    if not 1 <= m <= k - 2:
        raise ValueError("need 1 <= m <= k - 2")
    if steps < 0 or burn_in < 0:
        raise ValueError("step counts must be non-negative")
    # relabel densely so letters 0..k-1 name pads and the rest name nothing
    order = {a: i for i, a in enumerate(sorted(raw))}
    labels = tuple(order[a] for a in raw)
    sigma = max(k, 2 * m + 1)

    s = SignedState(k, frozenset(range(m + 1)), frozenset(range(m)))
    f = FrogArrangement.initial(k)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    opt = optimistic_frog(s)
    counts: dict = {}
    for step in range(burn_in + steps):
        draw = int(rng.integers(sigma))
        letter = None
        if draw <= 2 * m:
            if draw <= m:
                sign, pad = POSITIVE, sorted(s.positives)[draw]
            else:
                sign, pad = NEGATIVE, sorted(s.negatives)[draw - m - 1]
            s = poke_signed(s, (sign, pad))
            if sign == NEGATIVE or pad == opt:
                letter = labels[pad]
        if letter is None:
            shaded = {labels[p] for p in f.pad_of[:m + 1]}
            avail = [a for a in range(sigma) if a not in shaded]
            letter = avail[int(rng.integers(len(avail)))]
        if letter < k:
            f = poke(f, letter, labels).arrangement
        opt = optimistic_frog(s)
        low = f.pad_of[:m]
        if set(low) != s.negatives or f.pad_of[m] != opt:
            raise AssertionError("coupling lost compatibility")
        if step >= burn_in:
            key = (f.pad_of[m], tuple(sorted(low)))
            counts[key] = counts.get(key, 0) + 1
    return CoupledRunResult(k, m, steps, burn_in, counts)


def counts_to_csv(counts: Mapping) -> str:
    """Render an empirical distribution in position(s),count,frequency form.

    Keys may be pads, pad tuples, or nested pairs of those; pads of one
    key are flattened and space-joined.
    """

    def flat(key):
        if isinstance(key, (int, np.integer)):
            return (int(key),)
        out = []
        for part in key:
            out.extend(flat(part))
        return tuple(out)

    total = sum(counts.values())
    lines = ["position(s),count,frequency"]
    for key in sorted(counts, key=flat):
        c = counts[key]
        label = " ".join(str(p) for p in flat(key))
        freq = c / total if total else 0.0
        lines.append(f"{label},{c},{freq:.10g}")
    return "\n".join(lines) + "\n"
