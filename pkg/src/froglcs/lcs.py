"""Longest common subsequence lengths: exact, banded, heuristic, periodic.

All functions accept Words or plain sequences of hashable symbols.

The exact computation keeps one bit per column of the shorter word and
updates a whole row with a few big-integer operations (the classic
bit-parallel row recurrence), so a 10^4 x 10^4 instance takes milliseconds
instead of the seconds a cell-by-cell dynamic program would need.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .frogs import ledges_after
from .words import Word


def _codes(v) -> list:
    if isinstance(v, Word):
        return list(v.symbols)
    return list(v)


def _match_masks(b: Sequence) -> dict:
    """Bit mask per symbol: bit j set when b[j] equals the symbol."""
    masks: dict = {}
    for c in set(b):
        masks[c] = int("".join("1" if x == c else "0" for x in reversed(b)), 2)
    return masks


def lcs_dp(v, w) -> int:
    """Exact LCS length of v and w.

    >>> lcs_dp("ab", "ba")
    1
    """
    a = _codes(v)
    b = _codes(w)
    if len(a) < len(b):
        a, b = b, a
    m = len(b)
    if m == 0:
        return 0
    masks = _match_masks(b)
    full = (1 << m) - 1
    row = 0
    get = masks.get
    for c in a:
        x = row | get(c, 0)
        row = x & ~((x - ((row << 1) | 1)) & full)
    return row.bit_count()


def lcs_banded(v, w, t: int) -> int:
    """LCS of v and w restricted to matches (i, j) with |i - j| <= t.

    Runs in O(len(v) * t) time with a sliding window per row.

    >>> lcs_banded("ba", "abab", 0), lcs_banded("ab", "ab", 0)
    (0, 2)
    """
    if t < 0:
        raise ValueError("band width must be non-negative")
    a = _codes(v)
    b = _codes(w)
    nv, nw = len(a), len(b)
    if nv == 0 or nw == 0:
        return 0
    # Symbols become dense integer codes so rows compare with numpy.
    coding: dict = {}
    for c in a + b:
        if c not in coding:
            coding[c] = len(coding)
    av = [coding[c] for c in a]
    bw = np.asarray([coding[c] for c in b], dtype=np.int64)
    # row holds dp(i, j) for j in [lo, hi]; dp(i, j) for j > hi equals
    # row[-1] (columns beyond i+t cannot match any earlier row) and rows
    # beyond nw+t cannot change dp(., nw).
    lo, hi = 0, min(nw, t)
    row = np.zeros(hi - lo + 1, dtype=np.int32)
    last_i = min(nv, nw + t)
    for i in range(last_i):
        nlo = max(0, i + 1 - t)
        nhi = min(nw, i + 1 + t)
        length = nhi - nlo + 1
        # up[j] = dp(i, j) for j in [nlo, nhi], right-clamped past hi.
        if nhi > hi:
            up = np.empty(length, dtype=np.int32)
            up[: length - 1] = row[nlo - lo :]
            up[length - 1] = row[-1]
        else:
            up = row[nlo - lo : nhi - lo + 1]
        cand = np.empty(length, dtype=np.int32)
        if nlo > 0:
            # diag[j] = dp(i, j-1) + match(i, j-1); the whole stripe is in band.
            match = bw[nlo - 1 : nhi] == av[i]
            cand[:] = row[nlo - 1 - lo : nhi - lo] + match
        else:
            cand[0] = -1
            match = bw[0 : nhi] == av[i]
            cand[1:] = row[0 : nhi - lo] + match
        np.maximum(cand, up, out=cand)
        row = np.maximum.accumulate(cand)
        lo, hi = nlo, nhi
    return int(row[-1])


@dataclass(frozen=True)
class BandSchedule:
    """Band widths tried by lcs_heuristic: t0, then growth by ratio_num/ratio_den.

    The default start is floor(sqrt(2n)) for n the longer length.
    """

    t0: int | None = None
    ratio_num: int = 5
    ratio_den: int = 2

    def __post_init__(self):
        if self.t0 is not None and self.t0 < 0:
            raise ValueError("t0 must be non-negative")
        if self.ratio_num <= self.ratio_den or self.ratio_den < 1:
            raise ValueError("growth ratio must exceed 1")

    def first(self, n: int) -> int:
        return self.t0 if self.t0 is not None else isqrt(2 * n)

    def next(self, t: int) -> int:
        return max(t + 1, t * self.ratio_num // self.ratio_den)


def lcs_heuristic(
    v,
    w,
    schedule: BandSchedule | None = None,
    max_rounds: int | None = None,
) -> tuple[int, int, bool]:
    """Banded LCS with growing bands: (length, band_used, confirmed).

    Bands grow until two consecutive bands agree (confirmed) or a band
    covers everything, in which case the exact value is computed
    (confirmed).  With max_rounds set, the search may stop early and
    return its last value unconfirmed.  Band agreement is a stopping
    rule, not a certificate: an optimal alignment can stray outside both
    agreeing bands, so a confirmed value may still fall short of the
    true length (observed on about 0.1% of random binary pairs at
    n = 2500).

    >>> lcs_heuristic("abab", "baba")
    (3, 5, True)
    """
    a = _codes(v)
    b = _codes(w)
    n = max(len(a), len(b))
    if schedule is None:
        schedule = BandSchedule()
    t = schedule.first(n)
    if t >= n:
        return lcs_dp(a, b), t, True
    val = lcs_banded(a, b, t)
    rounds = 1
    while max_rounds is None or rounds < max_rounds:
        nt = schedule.next(t)
        if nt >= n:
            return lcs_dp(a, b), nt, True
        nval = lcs_banded(a, b, nt)
        rounds += 1
        if nval == val:
            return nval, nt, True
        val, t = nval, nt
    return val, t, False


def lcs_periodic(r, w, x: int) -> int:
    """LCS of r with the first x letters of the periodic extension of w.

    Computed through the frog dynamics in O(|r| k + k) time, independent
    of x.

    >>> lcs_periodic("ba", "ab", 3)
    2
    """
    if x < 0:
        raise ValueError("prefix length must be non-negative")
    return ledges_after(_codes(r), _codes(w)).eval(x)


def delta_statistic(v, w) -> int:
    """LCS(v, w) minus the sum of the LCS of the two half pairs.

    Both words must have the same even length; superadditivity of the LCS
    makes the value non-negative.

    >>> delta_statistic("aabb", "aabb")
    0
    """
    a = _codes(v)
    b = _codes(w)
    if len(a) != len(b):
        raise ValueError("words must have equal length")
    n = len(a)
    if n % 2:
        raise ValueError("length must be even")
    h = n // 2
    return lcs_dp(a, b) - lcs_dp(a[:h], b[:h]) - lcs_dp(a[h:], b[h:])
