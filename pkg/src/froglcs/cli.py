"""Command-line front end.

Prints JSON by default or CSV with --format csv; exits 0 on success,
2 on a usage error, and 1 when a computation rejects its input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .chain import (
    _as_word,
    enumerate_recurrent,
    gamma,
    speeds_exact,
    speeds_reduced,
    tau,
)
from .lcs import BandSchedule, lcs_banded, lcs_dp, lcs_heuristic, lcs_periodic
from .montecarlo import (
    ExperimentConfig,
    delta_experiment,
    estimate_gamma_cs,
    estimate_speeds,
    json_record,
)
from .signed import (
    coupled_run,
    lazy_probability,
    margins_bruteforce,
    margins_formula,
)
from .words import Alphabet, Word


def _rho(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _band(text: str):
    if text in ("auto", "exact"):
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("band must be auto, exact, or a width")


def _positions(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"positions must be integers: {text!r}")


def _emit(args, payload: dict, csv_rows=None) -> str:
    if args.format == "csv":
        header, row = csv_rows
        return f"{header}\n{row}"
    return json.dumps(payload)


def cmd_lcs(args) -> str:
    if args.band == "exact":
        out = {"length": lcs_dp(args.v, args.w), "band": None, "confirmed": True}
    elif args.band == "auto":
        length, band, confirmed = lcs_heuristic(args.v, args.w)
        out = {"length": length, "band": band, "confirmed": confirmed}
    else:
        out = {"length": lcs_banded(args.v, args.w, args.band),
               "band": args.band, "confirmed": False}
    band = "" if out["band"] is None else out["band"]
    return _emit(args, out, ("length,band,confirmed",
                             f"{out['length']},{band},{out['confirmed']}"))


def cmd_periodic_lcs(args) -> str:
    length = lcs_periodic(args.r, args.word, args.n)
    return _emit(args, {"length": length}, ("length", str(length)))


def cmd_speeds(args) -> str:
    if args.method == "montecarlo":
        word = _as_word(args.word, args.alphabet)
        stats = estimate_speeds(word, args.n, args.trials, seed=args.seed,
                                threads=args.threads)
        means = [s.mean for s in stats]
        cfg = ExperimentConfig(args.seed, args.trials, args.n,
                               word.alphabet.size)
        payload = json.loads(json_record(cfg, stats))
        payload["speeds"] = means
        return _emit(args, payload,
                     ("speeds", ",".join(f"{m:.10g}" for m in means)))
    if args.method == "reduced":
        speeds = speeds_reduced(args.word, alphabet_size=args.alphabet)
    else:
        speeds = speeds_exact(enumerate_recurrent(args.word, args.alphabet))
    text = [str(s) for s in speeds]
    return _emit(args, {"speeds": text}, ("speeds", ",".join(text)))


def cmd_gamma(args) -> str:
    if args.method == "montecarlo":
        stats = estimate_speeds(args.word, args.n, args.trials, seed=args.seed,
                                alphabet_size=args.alphabet, threads=args.threads)
        means = [s.mean for s in stats]
        value = gamma(means, len(means), float(args.rho))
        out = {"rho": str(args.rho), "gamma": value, "speeds": means}
        return _emit(args, out, ("rho,gamma", f"{args.rho},{value:.10g}"))
    if args.method == "reduced":
        speeds = speeds_reduced(args.word, alphabet_size=args.alphabet)
        value = gamma(speeds, len(speeds), args.rho)
        out = {"rho": str(args.rho), "gamma": str(value),
               "gamma_float": float(value), "tau": None}
        return _emit(args, out, ("rho,gamma", f"{args.rho},{value}"))
    sol = enumerate_recurrent(args.word, args.alphabet)
    value = gamma(speeds_exact(sol), sol.k, args.rho)
    t = tau(sol, args.rho)
    out = {"rho": str(args.rho), "gamma": str(value),
           "gamma_float": float(value), "tau": t}
    return _emit(args, out, ("rho,gamma,tau", f"{args.rho},{value},{t:.10g}"))


def cmd_tau(args) -> str:
    sol = enumerate_recurrent(args.word, args.alphabet)
    t = tau(sol, args.rho)
    return _emit(args, {"rho": str(args.rho), "tau": t},
                 ("rho,tau", f"{args.rho},{t:.10g}"))


def cmd_margins(args) -> str:
    value = margins_formula(args.k, args.m, args.positions)
    out = {"k": args.k, "m": args.m, "positions": list(args.positions),
           "probability": str(value), "probability_float": float(value)}
    if args.bruteforce:
        brute = margins_bruteforce(args.k, args.m, args.positions)
        out["bruteforce"] = str(brute)
        out["agree"] = brute == value
    return _emit(args, out, ("probability", str(value)))


def cmd_delta(args) -> str:
    use = {"auto": None, "on": True, "off": False}[args.heuristic]
    stats = delta_experiment(args.n, args.trials, alphabet_size=args.alphabet,
                             seed=args.seed, use_heuristic=use,
                             threads=args.threads)
    cfg = ExperimentConfig(args.seed, args.trials, args.n, args.alphabet)
    return _emit(args, json.loads(json_record(cfg, stats)),
                 ("count,mean,stddev,min,max",
                  f"{stats.count},{stats.mean:.10g},{stats.stddev:.10g},"
                  f"{stats.min:.10g},{stats.max:.10g}"))


def cmd_cs_estimate(args) -> str:
    stats = estimate_gamma_cs(args.n, args.trials, alphabet_size=args.alphabet,
                              seed=args.seed, threads=args.threads)
    cfg = ExperimentConfig(args.seed, args.trials, args.n, args.alphabet)
    return _emit(args, json.loads(json_record(cfg, stats)),
                 ("count,mean,stddev,min,max",
                  f"{stats.count},{stats.mean:.10g},{stats.stddev:.10g},"
                  f"{stats.min:.10g},{stats.max:.10g}"))


def cmd_signed_check(args) -> str:
    word = Word(tuple(range(args.k)), Alphabet(args.k))
    res = coupled_run(word, args.m, args.steps, seed=args.seed,
                      burn_in=args.burn_in)
    tv = res.total_variation_from_margins()
    lazy = lazy_probability(args.k, args.m)
    out = {"k": args.k, "m": args.m, "steps": args.steps,
           "burn_in": args.burn_in, "tv": tv, "tol": args.tol,
           "within_tol": tv <= args.tol, "lazy_probability": str(lazy)}
    return _emit(args, out, ("k,m,steps,tv,within_tol",
                             f"{args.k},{args.m},{args.steps},{tv:.10g},"
                             f"{tv <= args.tol}"))


def _add_common(sub, *, word=True, rho=None, method=False, mc=False):
    if word:
        sub.add_argument("--word", required=True, help="word, e.g. 1234 or ab")
        sub.add_argument("--alphabet", type=int, default=None,
                         help="alphabet size (default: symbols of the word)")
    if rho is not None:
        sub.add_argument("--rho", type=_rho, default=Fraction(rho),
                         help="length ratio as a rational p/q")
    if method:
        sub.add_argument("--method", choices=("exact", "reduced", "montecarlo"),
                         default="exact")
    if mc:
        sub.add_argument("--n", type=int, default=100_000,
                         help="random word length for montecarlo runs")
        sub.add_argument("--trials", type=int, default=100)
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="froglcs",
        description="longest common subsequences against periodic words,"
                    " exactly via frog dynamics or by simulation",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("lcs", help="LCS of two explicit words")
    p.add_argument("v")
    p.add_argument("w")
    p.add_argument("--band", type=_band, default="auto",
                   help="auto, exact, or a fixed band width")
    _add_common(p, word=False)
    p.set_defaults(fn=cmd_lcs)

    p = subs.add_parser("periodic-lcs",
                        help="LCS of a word with a periodic word prefix")
    p.add_argument("r", help="the explicit word")
    p.add_argument("--n", type=int, required=True,
                   help="length of the periodic word")
    _add_common(p)
    p.set_defaults(fn=cmd_periodic_lcs)

    p = subs.add_parser("speeds", help="per-frog speeds of a word")
    _add_common(p, method=True, mc=True)
    p.set_defaults(fn=cmd_speeds)

    p = subs.add_parser("gamma", help="linear LCS coefficient gamma(rho)")
    _add_common(p, rho="1", method=True, mc=True)
    p.set_defaults(fn=cmd_gamma)

    p = subs.add_parser("tau", help="sqrt-n LCS coefficient tau(rho)")
    _add_common(p, rho="1")
    p.set_defaults(fn=cmd_tau)

    p = subs.add_parser("margins", help="conditional law of the next frog")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--positions", type=_positions, required=True,
                   help="m+1 strictly decreasing pads, comma separated")
    p.add_argument("--bruteforce", action="store_true",
                   help="cross-check against direct enumeration")
    _add_common(p, word=False)
    p.set_defaults(fn=cmd_margins)

    p = subs.add_parser("delta", help="LCS splitting-defect statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--heuristic", choices=("auto", "on", "off"), default="auto")
    _add_common(p, word=False)
    p.set_defaults(fn=cmd_delta)

    p = subs.add_parser("cs-estimate",
                        help="LCS/n of two random words (common-subsequence"
                             " constant)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    _add_common(p, word=False)
    p.set_defaults(fn=cmd_cs_estimate)

    p = subs.add_parser("signed-check",
                        help="coupled signed-chain run against the marginal"
                             " formula")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--burn-in", dest="burn_in", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=0.01)
    _add_common(p, word=False)
    p.set_defaults(fn=cmd_signed_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.fn(args)
    except (ValueError, ArithmeticError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
