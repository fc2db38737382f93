"""Seeded random-word experiments.

Every experiment derives one independent random stream per trial by
splitting a counter-based generator on the trial index, so results are
bit-identical no matter how trials are scheduled; running with a worker
pool and running serially agree exactly.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .chain import _as_word
from .frogs import run_displacements
from .lcs import delta_statistic, lcs_heuristic
from .words import Alphabet, Word, is_irreducible

HEURISTIC_CUTOFF = 20_000


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs that pin down a whole experiment."""

    seed: int
    trials: int
    n: int
    alphabet_size: int

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.n < 2:
            raise ValueError("need word length at least 2")
        if self.alphabet_size < 1:
            raise ValueError("alphabet must have at least one symbol")


@dataclass(frozen=True)
class SummaryStats:
    """Count, mean, Bessel-corrected standard deviation, and range."""

    count: int
    mean: float
    stddev: float
    min: float
    max: float

    @classmethod
    def from_samples(cls, samples) -> "SummaryStats":
        xs = np.asarray(list(samples), dtype=float)
        if xs.size == 0:
            raise ValueError("no samples to summarize")
        sd = float(xs.std(ddof=1)) if xs.size > 1 else 0.0
        return cls(int(xs.size), float(xs.mean()), sd,
                   float(xs.min()), float(xs.max()))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """The independent stream of one trial, split from the experiment seed."""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    return np.random.Generator(np.random.Philox(seq))


def sample_word(n: int, alphabet_size: int, rng: np.random.Generator) -> Word:
    """A uniformly random word of length n.

    >>> len(sample_word(0, 2, trial_rng(0, 0)))
    0
    """
    if n < 0:
        raise ValueError("length must be non-negative")
    if alphabet_size < 1:
        raise ValueError("alphabet must have at least one symbol")
    codes = rng.integers(0, alphabet_size, size=n) if n else []
    return Word(tuple(int(c) for c in codes), Alphabet(alphabet_size))


def _map_trials(fn, args, threads):
    if threads <= 1:
        return [fn(a) for a in args]
    chunk = max(1, len(args) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, args, chunksize=chunk))


def _speeds_trial(args):
    labels, sigma, n, seed, trial = args
    rng = trial_rng(seed, trial)
    codes = rng.integers(0, sigma, size=n).tolist()
    disp = run_displacements(labels, codes)
    if n == 0:
        return [0.0] * len(labels)
    return [d / n for d in disp]


def estimate_speeds(w, n: int, trials: int, seed: int = 0,
                    alphabet_size: int | None = None,
                    threads: int = 1) -> list[SummaryStats]:
    """Per-frog summary of D_m / n over independent random words.

    The fallback when a word's chain is too large to solve exactly; the
    per-trial means concentrate around the speeds.
    """
    word = _as_word(w, alphabet_size)
    if not is_irreducible(word):
        raise ValueError("reducible word")
    if n < 0:
        raise ValueError("length must be non-negative")
    if trials < 1:
        raise ValueError("need at least one trial")
    sigma = word.alphabet.size
    labels = tuple(word.symbols)
    rows = _map_trials(
        _speeds_trial,
        [(labels, sigma, n, seed, t) for t in range(trials)],
        threads,
    )
    return [SummaryStats.from_samples(col) for col in zip(*rows)]


def _delta_trial(args):
    n, sigma, seed, trial, use_heuristic = args
    rng = trial_rng(seed, trial)
    v = rng.integers(0, sigma, size=n).tolist()
    w = rng.integers(0, sigma, size=n).tolist()
    if not use_heuristic:
        return delta_statistic(v, w)
    h = n // 2
    full = lcs_heuristic(v, w)[0]
    left = lcs_heuristic(v[:h], w[:h])[0]
    right = lcs_heuristic(v[h:], w[h:])[0]
    return full - left - right


def delta_experiment(n: int, trials: int, alphabet_size: int = 2,
                     seed: int = 0, use_heuristic: bool | None = None,
                     threads: int = 1, return_samples: bool = False):
    """Sampled splitting defect of the LCS of two length-n random words.

    Each trial draws an independent pair and scores the LCS of the whole
    words minus the LCS of the front halves and of the back halves.  For
    n beyond HEURISTIC_CUTOFF the banded heuristic stands in for the
    exact dynamic program unless use_heuristic says otherwise.
    """
    if n < 2 or n % 2:
        raise ValueError("length must be even and at least 2")
    if trials < 1:
        raise ValueError("need at least one trial")
    if use_heuristic is None:
        use_heuristic = n > HEURISTIC_CUTOFF
    samples = _map_trials(
        _delta_trial,
        [(n, alphabet_size, seed, t, use_heuristic) for t in range(trials)],
        threads,
    )
    stats = SummaryStats.from_samples(samples)
    if return_samples:
        return stats, samples
    return stats


def _lambda_trial(args):
    labels, sigma, rho, n, seed, trial = args
    rng = trial_rng(seed, trial)
    codes = rng.integers(0, sigma, size=n).tolist()
    disp = run_displacements(labels, codes)
    return float(sum(max(0.0, float(rho) - d / n) for d in disp))


def lambda_samples(w, rho, n: int, trials: int, seed: int = 0,
                   alphabet_size: int | None = None,
                   threads: int = 1) -> list[float]:
    """Raw samples of sum_m max(0, rho - D_m / n) for histogram export.

    The sample mean approaches sum over slow frogs of (rho - s_m), and
    rho = gamma-curve corners are where the limit law stops being
    normal; no distributional claim is asserted here.
    """
    word = _as_word(w, alphabet_size)
    if not is_irreducible(word):
        raise ValueError("reducible word")
    if n < 1:
        raise ValueError("need a positive length")
    if trials < 1:
        raise ValueError("need at least one trial")
    if rho < 0:
        raise ValueError("rho must be non-negative")
    return _map_trials(
        _lambda_trial,
        [(tuple(word.symbols), word.alphabet.size, rho, n, seed, t)
         for t in range(trials)],
        threads,
    )


def _cs_trial(args):
    n, sigma, seed, trial = args
    rng = trial_rng(seed, trial)
    v = rng.integers(0, sigma, size=n).tolist()
    w = rng.integers(0, sigma, size=n).tolist()
    return lcs_heuristic(v, w)[0] / n


def estimate_gamma_cs(n: int, trials: int, alphabet_size: int = 2,
                      seed: int = 0, threads: int = 1) -> SummaryStats:
    """LCS/n summary for pairs of independent random words.

    The mean estimates the common-subsequence constant of the alphabet;
    no finite-size extrapolation is applied.
    """
    if n < 1:
        raise ValueError("need a positive length")
    if trials < 1:
        raise ValueError("need at least one trial")
    if alphabet_size < 1:
        raise ValueError("alphabet must have at least one symbol")
    samples = _map_trials(
        _cs_trial,
        [(n, alphabet_size, seed, t) for t in range(trials)],
        threads,
    )
    return SummaryStats.from_samples(samples)


def json_record(config: ExperimentConfig, stats) -> str:
    """One JSON line holding the experiment inputs and its summaries."""
    if isinstance(stats, SummaryStats):
        body = asdict(stats)
    else:
        body = [asdict(s) for s in stats]
    return json.dumps({"config": asdict(config), "stats": body})


def samples_csv(samples) -> str:
    """Per-sample CSV with a trial index column."""
    lines = ["trial,value"]
    for i, x in enumerate(samples):
        lines.append(f"{i},{x:.10g}" if isinstance(x, float) else f"{i},{x}")
    return "\n".join(lines) + "\n"
