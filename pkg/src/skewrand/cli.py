"""``skewrand`` command-line interface.

Exit status: 0 on success, 2 on bad parameters or usage, 3 when a sampler or
numerical routine fails. All randomness flows from ``--seed`` (default taken
from ``SKEWRAND_SEED``, else 0).
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import lsd, moments
from .errors import EdgeListError, NumericError, ParameterError, SamplingError
from .experiments import (
    LAWS,
    GnpModel,
    RegularModel,
    esd_experiment,
    run_concentration_experiment,
    run_energy_experiment,
)
from .graphgen import (
    REGULAR_SAMPLERS,
    GnpParams,
    RegularParams,
    format_edge_list,
    read_edge_list,
    sample_gnp_oriented,
    sample_regular_oriented,
)
from .reports import dumps_csv, dumps_json, esd_svg, report_table
from .spectra import normalized_spectrum, skew_adjacency, skew_energy, skew_spectrum

EXIT_OK, EXIT_PARAM, EXIT_FAILURE = 0, 2, 3


def _default_seed() -> int:
    raw = os.environ.get("SKEWRAND_SEED")
    return int(raw) if raw else 0


def _common(p: argparse.ArgumentParser, formats=True) -> None:
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("-o", "--output", help="write here instead of stdout")
    if formats:
        p.add_argument("--format", choices=("json", "csv"), default="json")


def _model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=("gnp", "regular"), required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=float, help="edge probability (gnp)")
    p.add_argument("-d", type=int, help="degree (regular)")
    p.add_argument("--sampler", choices=REGULAR_SAMPLERS, default="pairing")
    p.add_argument("--max-attempts", type=int, default=1000)


def _experiment_args(p: argparse.ArgumentParser, trials: int) -> None:
    _model_args(p)
    p.add_argument("--law", choices=LAWS, default="auto")
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--threads", type=int, default=None, help="cap on parallel trials")
    p.add_argument("--validate", action="store_true", help="check spectral invariants per trial")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewrand", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a random oriented graph as an edge list")
    _model_args(p)
    _common(p, formats=False)

    p = sub.add_parser("spectrum", help="eigenvalues of -iS for an edge-list file")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--scale", type=float, default=1.0)
    _common(p)

    p = sub.add_parser("energy", help="Monte-Carlo skew-energy constant")
    _experiment_args(p, trials=5)
    _common(p)

    p = sub.add_parser("esd", help="pooled spectral histogram and KS distance")
    _experiment_args(p, trials=3)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--svg", help="also write a histogram SVG here")
    p.add_argument("--dump-spectra", action="store_true")
    _common(p)

    p = sub.add_parser("moments", help="exact walk-sum trace moments vs Monte Carlo")
    p.add_argument("-n", type=int, nargs="+", required=True)
    p.add_argument("-k", type=int, nargs="+", required=True)
    p.add_argument("-p", nargs="+", required=True, help="probabilities, e.g. 1/4 0.5 1")
    p.add_argument("--trials", type=int, default=10000, help="Monte-Carlo trials (0 skips)")
    _common(p)

    p = sub.add_parser("concentration", help="eigenvalue counts in an interval, growing d")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--interval", type=float, nargs=2, default=(-1.0, 1.0), metavar=("A", "B"))
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--sampler", choices=REGULAR_SAMPLERS, default="steger-wormald")
    p.add_argument("--max-attempts", type=int, default=1000)
    p.add_argument("--threads", type=int, default=None)
    _common(p)

    p = sub.add_parser("density", help="tabulate pdf and cdf of a limiting law")
    p.add_argument("--law", choices=("semicircle", "mckay"), required=True)
    p.add_argument("-d", type=int)
    p.add_argument("--points", type=int, default=201)
    _common(p)
    return parser


def _model(args):
    if args.model == "gnp":
        if args.p is None:
            raise ParameterError("gnp model needs -p")
        return GnpModel(args.n, args.p)
    if args.d is None:
        raise ParameterError("regular model needs -d")
    return RegularModel(
        args.n, args.d, law=getattr(args, "law", "auto"), sampler=args.sampler, max_attempts=args.max_attempts
    )


def _params(args) -> dict:
    skip = {"output", "svg", "command", "threads"}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(args).items() if k not in skip}


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(report, args) -> None:
    if args.format == "csv":
        text = dumps_csv(*report_table(report))
    else:
        text = dumps_json({"command": args.command, "params": _params(args), **report.to_dict()})
    _emit(text, args.output)


def cmd_gen(args) -> None:
    if args.model == "gnp":
        if args.p is None:
            raise ParameterError("gnp model needs -p")
        g = sample_gnp_oriented(GnpParams(args.n, args.p, args.seed))
    else:
        if args.d is None:
            raise ParameterError("regular model needs -d")
        g = sample_regular_oriented(
            RegularParams(args.n, args.d, args.seed, max_attempts=args.max_attempts, sampler=args.sampler)
        )
    _emit(format_edge_list(g), args.output)


def cmd_spectrum(args) -> None:
    g = read_edge_list(sys.stdin if args.graph == "-" else args.graph)
    spec = normalized_spectrum(skew_spectrum(skew_adjacency(g)), args.scale)
    if args.format == "csv":
        _emit(dumps_csv(["index", "eigenvalue"], enumerate(spec.values)), args.output)
        return
    out = {
        "command": "spectrum",
        "params": _params(args),
        "n": g.n,
        "arcs": g.num_arcs,
        "energy": skew_energy(spec),
        "eigenvalues": spec.values.tolist(),
    }
    _emit(dumps_json(out), args.output)


def cmd_energy(args) -> None:
    report = run_energy_experiment(_model(args), args.trials, args.seed, args.threads, args.validate)
    _emit_report(report, args)


def cmd_esd(args) -> None:
    report = esd_experiment(
        _model(args), args.trials, args.bins, args.seed, args.threads, args.dump_spectra, args.validate
    )
    _emit_report(report, args)
    if args.svg:
        _emit(esd_svg(report), args.svg)


def cmd_moments(args) -> None:
    header = ["n", "k", "p", "exact_value", "exact_float", "mc_mean", "mc_stderr"]
    rows = []
    for n in args.n:
        for p_text in args.p:
            p = moments.as_fraction(p_text)
            mc = {}
            if args.trials:
                mc = moments.empirical_trace_moments(GnpParams(n, float(p), args.seed), args.k, args.trials)
            for k in args.k:
                exact = moments.expected_trace_moment_exact(n, k, p).value
                mean, err = mc.get(k, (None, None))
                rows.append([n, k, str(p), str(exact), float(exact), mean, err])
    if args.format == "csv":
        _emit(dumps_csv(header, [["" if v is None else v for v in r] for r in rows]), args.output)
        return
    out = {"command": "moments", "params": _params(args), "rows": [dict(zip(header, r)) for r in rows]}
    _emit(dumps_json(out), args.output)


def cmd_concentration(args) -> None:
    report = run_concentration_experiment(
        args.n,
        args.d,
        tuple(args.interval),
        args.delta,
        args.trials,
        args.seed,
        sampler=args.sampler,
        max_attempts=args.max_attempts,
        threads=args.threads,
    )
    _emit_report(report, args)


def cmd_density(args) -> None:
    law = lsd.SEMICIRCLE if args.law == "semicircle" else lsd.mckay(args.d)
    if args.points < 2:
        raise ParameterError("need at least 2 points")
    lo, hi = lsd.support(law)
    xs = np.linspace(lo, hi, args.points)
    pdf, cdf = np.asarray(lsd.pdf(law, xs)), np.asarray(lsd.cdf(law, xs))
    if args.format == "csv":
        _emit(dumps_csv(["x", "pdf", "cdf"], zip(xs, pdf, cdf)), args.output)
        return
    out = {
        "command": "density",
        "params": _params(args),
        "law": str(law),
        "support": [lo, hi],
        "energy_constant": lsd.energy_constant(law),
        "x": xs.tolist(),
        "pdf": pdf.tolist(),
        "cdf": cdf.tolist(),
    }
    _emit(dumps_json(out), args.output)


COMMANDS = {
    "gen": cmd_gen,
    "spectrum": cmd_spectrum,
    "energy": cmd_energy,
    "esd": cmd_esd,
    "moments": cmd_moments,
    "concentration": cmd_concentration,
    "density": cmd_density,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_PARAM
    try:
        COMMANDS[args.command](args)
    except (ParameterError, EdgeListError, ZeroDivisionError, ValueError) as exc:
        print(f"skewrand {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (SamplingError, NumericError) as exc:
        print(f"skewrand {args.command}: failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"skewrand {args.command}: {exc}", file=sys.stderr)
        return EXIT_PARAM
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
