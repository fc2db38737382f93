"""k-heights: the LCS profile of a word against a periodic word.

For a word R over the alphabet of a periodic word with period length k, the
height h_R(x) is the LCS of R with the first x letters of the periodic word
(and h_R(x) = x for x <= 0 by convention).  Such profiles are exactly the
k-heights: non-decreasing step functions with increments in {0,1} whose
k-step difference delta_k h(x) = h(x) - h(x-k) is non-increasing, steps down
one at a time, and reaches 0.  A k-height is determined by its k ledges
x_1 < ... < x_k, where x_m is the last x with delta_k h(x) = k - m + 1.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .words import Word


@dataclass(frozen=True)
class KHeight:
    """A k-height given by its k ledges (strictly increasing, non-negative,
    pairwise distinct modulo k)."""

    k: int
    ledges: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if len(self.ledges) != self.k:
            raise ValueError(f"expected {self.k} ledges, got {len(self.ledges)}")
        for x in self.ledges:
            if x < 0:
                raise ValueError("ledges must be non-negative")
        for a, b in zip(self.ledges, self.ledges[1:]):
            if not a < b:
                raise ValueError("ledges must be strictly increasing")
        if len({x % self.k for x in self.ledges}) != self.k:
            raise ValueError("ledges must be distinct modulo k")

    def eval(self, x: int) -> int:
        """Height at x: x minus one deficit ceil((x - x_i)/k) per passed ledge.

        >>> KHeight(2, (0, 1)).eval(3)
        0
        >>> KHeight(2, (1, 4)).eval(3)
        2
        """
        if x <= 0:
            return x
        total = x
        for xi in self.ledges:
            if xi <= x:
                total -= -((x - xi) // -self.k)
        return total

    def sample(self, upto: int) -> list[int]:
        """Values [h(0), h(1), ..., h(upto)]."""
        return [self.eval(x) for x in range(upto + 1)]


def empty_height(k: int) -> KHeight:
    """The height of the empty word: ledges (0, 1, ..., k-1)."""
    return KHeight(k, tuple(range(k)))


def ledges_of(values: Sequence[int], k: int) -> KHeight:
    """Recover a KHeight from sampled values [h(0), ..., h(L)].

    The array must realize a complete k-height: h(0) = 0, increments in
    {0, 1}, the k-step difference non-increasing (using h(x) = x for x < 0)
    and equal to 0 at the end of the window.  Raises ValueError("not a
    k-height") otherwise.
    """
    vals = list(values)
    if k < 1:
        raise ValueError("k must be at least 1")

    def h(x: int) -> int:
        # Window values, extended analytically by h(x) = x on x < 0.
        return vals[x] if x >= 0 else x

    ok = len(vals) >= 1 and vals[0] == 0
    if ok:
        for a, b in zip(vals, vals[1:]):
            if b - a not in (0, 1):
                ok = False
                break
    deltas: list[int] = []
    if ok:
        deltas = [h(x) - h(x - k) for x in range(len(vals))]
        prev = k
        for d in deltas:
            if d > prev:
                ok = False
                break
            prev = d
        if ok and deltas[-1] != 0:
            ok = False
    if not ok:
        raise ValueError("not a k-height")
    # delta starts at k (h(0) = 0 is forced), ends at 0, and the constraints
    # above only allow it to step down by one, so every value k..1 is hit.
    ledges = []
    for m in range(1, k + 1):
        target = k - m + 1
        last = None
        for x, d in enumerate(deltas):
            if d == target:
                last = x
        if last is None:
            raise ValueError("not a k-height")
        ledges.append(last)
    return KHeight(k, tuple(ledges))


def evolve(values: Sequence[int], a: int, w: Word | Sequence[int]) -> list[int]:
    """One step of the height recurrence: append symbol a to the word.

    `values` holds [h_R(0), ..., h_R(L)] against the periodic extension of w;
    the result holds [h_Ra(0), ..., h_Ra(L)].  A symbol absent from w leaves
    the height unchanged.

        h_Ra(x) = h_R(x-1) + 1           if the periodic word has a at x-1
                  max(h_R(x), h_Ra(x-1)) otherwise
    """
    period = tuple(w)
    if not period:
        raise ValueError("empty period")
    k = len(period)
    if a not in period:
        return list(values)
    vals = list(values)
    out = [0] * len(vals)
    for x in range(1, len(vals)):
        if period[(x - 1) % k] == a:
            out[x] = vals[x - 1] + 1
        else:
            out[x] = max(vals[x], out[x - 1])
    return out
