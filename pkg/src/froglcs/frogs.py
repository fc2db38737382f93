"""Frog dynamics on a circle of labeled lily pads.

k frogs sit on k pads arranged in a circle and labeled by the symbols of a
word W (pad i carries label W[i]).  Frogs are ranked by nastiness: frog 1 is
the nastiest.  Poking a symbol `a` agitates every frog sitting on an
a-labeled pad.  Repeatedly, the nastiest agitated frog leaps forward
(increasing pad index, wrapping) to the first pad that is empty or holds a
strictly less nasty settled frog; landing on an occupied pad displaces the
occupant, which becomes agitated in place.  Agitated frogs do not block
anyone.  The poke ends when no frog is agitated.

The displacement D_m of frog m during a poke is the number of pads it
traversed in total (a full loop counts k).  The jump count J_m is how many
times frog m passed strictly over frog m-1 (for m = 1, how many times it
crossed the boundary between pads k-1 and 0).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from heapq import heapify, heappop, heappush

from .heights import KHeight
from .words import Word


@dataclass(frozen=True)
class FrogArrangement:
    """pad_of[m] is the pad of frog m+1 (index 0 is the nastiest frog)."""

    pad_of: tuple[int, ...]

    def __post_init__(self):
        k = len(self.pad_of)
        if k < 1:
            raise ValueError("need at least one frog")
        if sorted(self.pad_of) != list(range(k)):
            raise ValueError("pad_of must be a permutation of 0..k-1")

    @classmethod
    def initial(cls, k: int) -> "FrogArrangement":
        """The resting arrangement: frog m on pad m-1."""
        return cls(tuple(range(k)))

    @property
    def k(self) -> int:
        return len(self.pad_of)


@dataclass(frozen=True)
class TransitionRecord:
    """Result of poking: the new arrangement, per-frog displacements and
    jump counts, and (optionally) one trace line per individual hop in the
    format ``frog=<m> from=<i> to=<j>``."""

    arrangement: FrogArrangement
    displacement: tuple[int, ...]
    jumps_over_pred: tuple[int, ...]
    trace: tuple[str, ...] | None = None


def _pads_by_symbol(labels: Sequence[int]) -> dict[int, tuple[int, ...]]:
    by: dict[int, list[int]] = {}
    for pad, s in enumerate(labels):
        by.setdefault(s, []).append(pad)
    return {s: tuple(p) for s, p in by.items()}


def _poke_engine(k, by_symbol, occ, pos, a, disp, jumps, trace):
    """Run one poke in place.  occ maps pad -> settled rank (-1 empty);
    pos maps rank -> current pad.  disp and jumps accumulate."""
    pads = by_symbol.get(a)
    if not pads:
        return
    heap = [occ[p] for p in pads]
    for p in pads:
        occ[p] = -1
    heapify(heap)
    while heap:
        r = heappop(heap)
        p = pos[r]
        pred_pad = pos[r - 1] if r else -1
        q = p
        d = 0
        j = 0
        while True:
            q += 1
            if q == k:
                q = 0
            d += 1
            if r:
                if q == pred_pad:
                    j += 1
            elif q == 0:
                j += 1
            o = occ[q]
            if o < 0:
                break
            if o > r:
                heappush(heap, o)
                break
            # o < r: a settled nastier frog; pass over it.
        occ[q] = r
        pos[r] = q
        disp[r] += d
        if jumps is not None:
            jumps[r] += j
        if trace is not None:
            trace.append(f"frog={r + 1} from={p} to={q}")


def poke(
    f: FrogArrangement,
    a: int,
    w: Word | Sequence[int],
    collect_trace: bool = False,
) -> TransitionRecord:
    """Poke symbol a once.  A symbol labeling no pad leaves f unchanged."""
    labels = tuple(w)
    k = len(labels)
    if k != f.k:
        raise ValueError("arrangement size does not match word length")
    occ = [-1] * k
    for r, p in enumerate(f.pad_of):
        occ[p] = r
    pos = list(f.pad_of)
    disp = [0] * k
    jumps = [0] * k
    trace: list[str] | None = [] if collect_trace else None
    _poke_engine(k, _pads_by_symbol(labels), occ, pos, a, disp, jumps, trace)
    return TransitionRecord(
        FrogArrangement(tuple(pos)),
        tuple(disp),
        tuple(jumps),
        tuple(trace) if trace is not None else None,
    )


def apply_word(
    f: FrogArrangement,
    r: Word | Sequence[int],
    w: Word | Sequence[int],
    collect_trace: bool = False,
) -> TransitionRecord:
    """Poke the symbols of r in order; displacements and jumps accumulate.

    >>> rec = apply_word(FrogArrangement.initial(2), (1, 0), (0, 1))
    >>> rec.displacement, rec.arrangement.pad_of
    ((1, 3), (1, 0))
    """
    labels = tuple(w)
    k = len(labels)
    if k != f.k:
        raise ValueError("arrangement size does not match word length")
    by_symbol = _pads_by_symbol(labels)
    occ = [-1] * k
    for rank, p in enumerate(f.pad_of):
        occ[p] = rank
    pos = list(f.pad_of)
    disp = [0] * k
    jumps = [0] * k
    trace: list[str] | None = [] if collect_trace else None
    for a in r:
        _poke_engine(k, by_symbol, occ, pos, a, disp, jumps, trace)
    return TransitionRecord(
        FrogArrangement(tuple(pos)),
        tuple(disp),
        tuple(jumps),
        tuple(trace) if trace is not None else None,
    )


def run_displacements(w: Word | Sequence[int], codes: Sequence[int]) -> list[int]:
    """Total displacements after poking the symbols of `codes` from rest.

    Equivalent to apply_word(FrogArrangement.initial(k), codes, w).displacement
    but skips all record keeping; this is the bulk path for long runs.
    """
    labels = tuple(w)
    k = len(labels)
    by_symbol = _pads_by_symbol(labels)
    occ = list(range(k))
    pos = list(range(k))
    disp = [0] * k
    heappush_ = heappush
    heappop_ = heappop
    for a in codes:
        pads = by_symbol.get(a)
        if not pads:
            continue
        heap = [occ[p] for p in pads]
        for p in pads:
            occ[p] = -1
        heapify(heap)
        while heap:
            r = heappop_(heap)
            q = pos[r]
            d = 0
            while True:
                q += 1
                if q == k:
                    q = 0
                d += 1
                o = occ[q]
                if o < 0:
                    break
                if o > r:
                    heappush_(heap, o)
                    break
            occ[q] = r
            pos[r] = q
            disp[r] += d
    return disp


def ledges_after(r: Word | Sequence[int], w: Word | Sequence[int]) -> KHeight:
    """Ledges of the height of r against the periodic extension of w.

    Frog m's total displacement D_m after poking r from rest locates ledge m
    at D_m + m - 1.  With r empty this gives the empty-word height (0..k-1).
    """
    labels = tuple(w)
    if not labels:
        raise ValueError("empty period")
    k = len(labels)
    rec = apply_word(FrogArrangement.initial(k), r, labels)
    return KHeight(k, tuple(rec.displacement[m] + m for m in range(k)))
