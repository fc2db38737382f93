"""Finite words over integer alphabets, periodic expansion, irreducibility.

Symbols are integer codes 0..size-1.  Text is parsed with first-appearance
coding: the first distinct character seen becomes 0, the next 1, and so on,
so "abbab" and its relabeling "baaba" map to the same code sequence.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass


@dataclass(frozen=True)
class Alphabet:
    """An alphabet of `size` symbols, coded 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet size must be at least 1")


@dataclass(frozen=True)
class Word(Sequence):
    """An immutable word: a tuple of symbol codes plus its alphabet.

    Word is a Sequence, so it can be indexed, sliced, iterated, and passed
    to any function that accepts a plain sequence of symbols.
    """

    symbols: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        for s in self.symbols:
            if not 0 <= s < self.alphabet.size:
                raise ValueError(
                    f"symbol {s} out of range for alphabet of size {self.alphabet.size}"
                )

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.symbols[i], self.alphabet)
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)


def parse_word(text: str, alphabet_size: int | None = None) -> Word:
    """Parse text into a Word, one symbol per character.

    Characters are coded by first appearance.  An explicit alphabet_size may
    declare more symbols than appear in the text (it must not declare fewer).

    >>> parse_word("abbab").symbols
    (0, 1, 1, 0, 1)
    """
    codes: dict[str, int] = {}
    out = []
    for ch in text:
        if ch not in codes:
            codes[ch] = len(codes)
        out.append(codes[ch])
    distinct = max(len(codes), 1)
    if alphabet_size is None:
        alphabet_size = distinct
    elif alphabet_size < distinct:
        raise ValueError(
            f"alphabet size {alphabet_size} is smaller than the {distinct} distinct symbols"
        )
    return Word(tuple(out), Alphabet(alphabet_size))


def word_from_codes(codes: Sequence[int], alphabet_size: int | None = None) -> Word:
    """Build a Word from integer codes, inferring the alphabet if not given."""
    codes = tuple(int(c) for c in codes)
    if alphabet_size is None:
        alphabet_size = max(codes, default=0) + 1
    return Word(codes, Alphabet(alphabet_size))


def periodic_expand(w: Word | Sequence[int], n: int) -> Word:
    """First n symbols of the infinite periodic extension of w.

    >>> ''.join('ab'[s] for s in periodic_expand(parse_word("aba"), 8))
    'abaabaab'
    """
    if len(w) == 0:
        raise ValueError("empty period")
    if n < 0:
        raise ValueError("length must be non-negative")
    alphabet = w.alphabet if isinstance(w, Word) else Alphabet(max(w, default=0) + 1)
    period = tuple(w)
    k = len(period)
    reps = n // k + 1
    return Word((period * reps)[:n], alphabet)


def is_irreducible(w: Word | Sequence[int]) -> bool:
    """True when w is not a whole number (>1) of repeats of a shorter word.

    >>> is_irreducible(parse_word("abba")), is_irreducible(parse_word("abab"))
    (True, False)
    """
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    seq = tuple(w)
    for p in range(1, n):
        if n % p == 0 and seq == seq[:p] * (n // p):
            return False
    return True


def shortest_period(w: Word | Sequence[int]) -> Word:
    """The shortest prefix whose repetition gives w (w itself if irreducible)."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    seq = tuple(w)
    alphabet = w.alphabet if isinstance(w, Word) else Alphabet(max(seq) + 1)
    for p in range(1, n + 1):
        if n % p == 0 and seq == seq[:p] * (n // p):
            return Word(seq[:p], alphabet)
    raise AssertionError("unreachable")
