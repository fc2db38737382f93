"""Longest common subsequences against periodic words, computed exactly.

The length of the LCS between any word and a periodic word is carried by
a small interacting-particle system (the frog dynamics) on the period.
This package exposes the dynamics, the exact rate and fluctuation
coefficients of E LCS(R, W^(rho n)) derived from its stationary chain,
the signed two-species chain behind the conditional marginal law, and
seeded Monte Carlo harnesses for the regimes beyond exact computation.
"""

from .chain import (
    ChainSolution,
    GammaCurve,
    MArrangement,
    enumerate_recurrent,
    gamma,
    gamma_curve,
    gamma_min_form,
    marrangement_step,
    reduced_chain,
    sigma_m,
    sigma_sq,
    speeds_closed_form,
    speeds_exact,
    speeds_reduced,
    stationary,
    tau,
)
from .frogs import (
    FrogArrangement,
    TransitionRecord,
    apply_word,
    ledges_after,
    poke,
    run_displacements,
)
from .heights import KHeight, empty_height, evolve, ledges_of
from .lcs import (
    BandSchedule,
    delta_statistic,
    lcs_banded,
    lcs_dp,
    lcs_heuristic,
    lcs_periodic,
)
from .montecarlo import (
    ExperimentConfig,
    SummaryStats,
    delta_experiment,
    estimate_gamma_cs,
    estimate_speeds,
    json_record,
    lambda_samples,
    sample_word,
    samples_csv,
    trial_rng,
)
from .signed import (
    CoupledRunResult,
    LabeledConfig,
    SignedState,
    coupled_run,
    counts_to_csv,
    lazy_probability,
    lift_state,
    margins_bruteforce,
    margins_formula,
    optimistic_frog,
    poke_signed,
    r_map,
    t_step,
    window_positions,
)
from .words import (
    Alphabet,
    Word,
    is_irreducible,
    parse_word,
    periodic_expand,
    shortest_period,
    word_from_codes,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BandSchedule",
    "ChainSolution",
    "CoupledRunResult",
    "ExperimentConfig",
    "FrogArrangement",
    "GammaCurve",
    "KHeight",
    "LabeledConfig",
    "MArrangement",
    "SignedState",
    "SummaryStats",
    "TransitionRecord",
    "Word",
    "apply_word",
    "coupled_run",
    "counts_to_csv",
    "delta_experiment",
    "delta_statistic",
    "empty_height",
    "enumerate_recurrent",
    "estimate_gamma_cs",
    "estimate_speeds",
    "evolve",
    "gamma",
    "gamma_curve",
    "gamma_min_form",
    "is_irreducible",
    "json_record",
    "lambda_samples",
    "lazy_probability",
    "lcs_banded",
    "lcs_dp",
    "lcs_heuristic",
    "lcs_periodic",
    "ledges_after",
    "ledges_of",
    "lift_state",
    "margins_bruteforce",
    "margins_formula",
    "marrangement_step",
    "optimistic_frog",
    "parse_word",
    "periodic_expand",
    "poke",
    "poke_signed",
    "r_map",
    "reduced_chain",
    "run_displacements",
    "sample_word",
    "samples_csv",
    "shortest_period",
    "sigma_m",
    "sigma_sq",
    "speeds_closed_form",
    "speeds_exact",
    "speeds_reduced",
    "stationary",
    "t_step",
    "tau",
    "trial_rng",
    "window_positions",
    "word_from_codes",
]
