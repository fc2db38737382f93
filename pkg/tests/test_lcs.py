"""LCS algorithms: exact, banded, heuristic, periodic, delta statistic."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from froglcs import (
    BandSchedule,
    delta_statistic,
    lcs_banded,
    lcs_dp,
    lcs_heuristic,
    lcs_periodic,
    parse_word,
    periodic_expand,
    word_from_codes,
)
from oracles import lcs_banded_ref, lcs_brute, lcs_ref

word_st = st.lists(st.integers(0, 2), max_size=14)


def test_lcs_dp_examples():
    assert lcs_dp("", "x") == 0
    assert lcs_dp("abc", "abc") == 3
    assert lcs_dp("ba", "abab") == 2  # frozen from subsequence enumeration
    assert lcs_dp(parse_word("abba"), parse_word("abab")) == 3


@settings(max_examples=300)
@given(word_st, word_st)
def test_lcs_dp_matches_reference(a, b):
    assert lcs_dp(a, b) == lcs_ref(a, b)


def test_lcs_dp_matches_brute_force_tiny():
    rnd = random.Random(1)
    for _ in range(200):
        a = [rnd.randrange(3) for _ in range(rnd.randint(0, 7))]
        b = [rnd.randrange(3) for _ in range(rnd.randint(0, 7))]
        assert lcs_dp(a, b) == lcs_brute(a, b)


def test_lcs_banded_examples():
    assert lcs_banded("ba", "abab", 0) == 0
    assert lcs_banded("ab", "ab", 0) == 2
    assert lcs_banded("ba", "abab", 4) == lcs_dp("ba", "abab")
    with pytest.raises(ValueError):
        lcs_banded("a", "a", -1)


@settings(max_examples=300)
@given(word_st, word_st, st.integers(0, 15))
def test_lcs_banded_matches_reference(a, b, t):
    assert lcs_banded(a, b, t) == lcs_banded_ref(a, b, t)


@settings(max_examples=200)
@given(word_st, word_st, st.integers(0, 12))
def test_lcs_banded_monotone_in_band(a, b, t):
    assert lcs_banded(a, b, t) <= lcs_banded(a, b, t + 1) <= lcs_dp(a, b)


def test_band_schedule():
    sched = BandSchedule()
    assert sched.first(100) == 14  # floor(sqrt(200))
    assert sched.next(14) == 35
    assert BandSchedule(t0=3).first(10 ** 6) == 3
    assert BandSchedule(t0=1).next(1) == 2  # growth never stalls
    with pytest.raises(ValueError):
        BandSchedule(ratio_num=1, ratio_den=1)
    with pytest.raises(ValueError):
        BandSchedule(t0=-1)


def test_lcs_heuristic_identical_words():
    word = [i % 2 for i in range(100)]
    assert lcs_heuristic(word, word) == (100, 35, True)


def test_lcs_heuristic_small_words_fall_back_to_exact():
    assert lcs_heuristic("abab", "baba") == (3, 5, True)
    assert lcs_heuristic("", "") == (0, 0, True)


def test_lcs_heuristic_matches_exact_on_random_pairs():
    rnd = random.Random(9)
    for _ in range(60):
        n = rnd.randint(1, 300)
        a = [rnd.randrange(2) for _ in range(n)]
        b = [rnd.randrange(2) for _ in range(n)]
        length, band, confirmed = lcs_heuristic(a, b)
        assert confirmed
        assert length == lcs_dp(a, b)


def test_lcs_heuristic_unconfirmed_when_rounds_capped():
    rnd = random.Random(2)
    a = [rnd.randrange(2) for _ in range(400)]
    b = [rnd.randrange(2) for _ in range(400)]
    length, band, confirmed = lcs_heuristic(
        a, b, BandSchedule(t0=1), max_rounds=1
    )
    assert not confirmed
    assert length == lcs_banded(a, b, 1)


def test_lcs_periodic_examples():
    assert lcs_periodic((1, 0), (0, 1), 3) == 2
    assert lcs_periodic("abc", "ab", 0) == 0
    w = parse_word("abcb")
    assert lcs_periodic(w, w, len(w)) == len(w)
    with pytest.raises(ValueError):
        lcs_periodic("a", "ab", -1)


def test_lcs_periodic_matches_dp_sampled():
    rnd = random.Random(17)
    for _ in range(300):
        k = rnd.randint(1, 6)
        w = word_from_codes([rnd.randrange(3) for _ in range(k)], 3)
        r = [rnd.randrange(3) for _ in range(rnd.randint(0, 30))]
        x = rnd.randint(0, 50)
        assert lcs_periodic(r, w, x) == lcs_dp(r, periodic_expand(w, x))


def test_delta_statistic_examples():
    assert delta_statistic("abab", "abab") == 0
    assert delta_statistic("ab", "ab") == 0
    # Frozen from the oracle: LCS("abba","baab") = 2, halves give 1 + 1.
    assert delta_statistic("abba", "baab") == 0
    # LCS(0011, 1100) = 2 while both half pairs share nothing.
    assert delta_statistic((0, 0, 1, 1), (1, 1, 0, 0)) == 2


def test_delta_statistic_errors():
    with pytest.raises(ValueError):
        delta_statistic("ab", "abcd")
    with pytest.raises(ValueError):
        delta_statistic("abc", "abc")


@settings(max_examples=200)
@given(st.integers(1, 7), st.data())
def test_delta_statistic_superadditive(half, data):
    n = 2 * half
    a = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    b = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    assert delta_statistic(a, b) >= 0
