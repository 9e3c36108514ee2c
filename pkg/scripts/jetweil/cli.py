#!/usr/bin/env python3
"""
weil-verify command line

    weil-verify.py [--config FILE] [--summary FILE] [--quiet] verify SUITE [flags]
    weil-verify.py emit matrix --op {S|rho-central|sigmaJ} --jet-order K --s0 P/Q --format {json|csv}

The JSON report goes to stdout, status lines to stderr.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import suites
from .config import DEFAULT_TEMPLATE, ConfigError, as_list, load_suite_config
from .errors import WeilError
from .reports import Report
from .scalars import parse_rational

EXIT_USAGE = 2


class UsageError(Exception):
    """Bad input that the parser could not catch"""


def rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weil-verify.py",
        description="Exact checks for the jet-valued oscillator representation and the Kashiwara equivalence",
    )
    parser.add_argument("--config", type=Path, help="Suite overrides merged over resources/suites.yaml")
    parser.add_argument("--summary", type=Path, help="Also write a Markdown summary of the report")
    parser.add_argument("--quiet", action="store_true", help="No status lines on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a verification suite").add_subparsers(dest="suite", required=True)

    sl2 = verify.add_parser("sl2", help="dsigma is a Lie homomorphism and commutes with specialization")
    sl2.add_argument("--vars", type=positive_int, help="Number of variables n")
    sl2.add_argument("--jet-order", type=positive_int, help="Jet order k")
    sl2.add_argument("--s0", type=rational_arg, help="Base point, e.g. 1 or 1/2")

    fourier = verify.add_parser("fourier", help="Fourier inversion and sigma(J) on Hermite probes")
    fourier.add_argument("--jet-order", type=positive_int, help="Jet order k")
    fourier.add_argument("--s0", type=rational_arg, help="Base point")
    fourier.add_argument("--probes", type=Path, help="JSON probe file {name: {poly, phase, scaled}}")

    cocycle = verify.add_parser("cocycle", help="sigma(w1) sigma(w2) = +-sigma(w1 w2)")
    cocycle.add_argument("--n", type=int, choices=[1, 2], help="Number of variables")
    cocycle.add_argument("--samples", type=positive_int, help="Random word pairs per n")
    cocycle.add_argument("--seed", type=int, help="Random seed")
    cocycle.add_argument("--words", type=Path, help="JSON list of {w1, w2[, w12]} word pairs")

    heisenberg = verify.add_parser("heisenberg", help="Group law, central character, covariance and pairing")
    heisenberg.add_argument("--n", type=int, choices=[1, 2], help="Number of variables")
    heisenberg.add_argument("--samples", type=positive_int, help="Random triples for the group law")
    heisenberg.add_argument("--seed", type=int, help="Random seed")

    intertwiners = verify.add_parser("intertwiners", help="Lagrangian and square-class intertwiners")
    intertwiners.add_argument("--s0", type=rational_arg, help="Base point, a rational square")
    intertwiners.add_argument("--jet-order", type=positive_int, help="Jet order k")

    kashiwara = verify.add_parser("kashiwara", help="F and G are inverse equivalences on truncated modules")
    source = kashiwara.add_mutually_exclusive_group()
    source.add_argument("--spec", type=Path, help="JSON module spec {n, dim, z_matrix, degree_bound}")
    source.add_argument("--random", action="store_true", help="Random modules (the default)")
    kashiwara.add_argument("--dim", type=positive_int, help="Dimension of N")
    kashiwara.add_argument("--pairs", type=positive_int, help="Number of (x, y) pairs")
    kashiwara.add_argument("--degree-bound", type=positive_int, help="Truncation degree D")
    kashiwara.add_argument("--samples", type=positive_int, help="Random modules per number of pairs")
    kashiwara.add_argument("--seed", type=int, help="Random seed")

    emit = commands.add_parser("emit", help="Print an operator matrix").add_subparsers(dest="what", required=True)
    matrix = emit.add_parser("matrix", help="Matrix of an operator on jet coefficients")
    matrix.add_argument("--op", required=True, choices=["S", "rho-central", "sigmaJ"])
    matrix.add_argument("--jet-order", type=positive_int, help="Jet order k")
    matrix.add_argument("--s0", type=rational_arg, help="Base point")
    matrix.add_argument("--format", choices=["json", "csv"], help="Output format")
    return parser


def pick(flag: Any, default: Any) -> Any:
    return default if flag is None else flag


def narrow(flag: Any, default: Any) -> List[Any]:
    """An explicit flag narrows a sweep to that single value"""
    return as_list(default) if flag is None else [flag]


def suite_kwargs(args: argparse.Namespace, config: Dict[str, Dict[str, Any]]) -> Dict[str, Any]:
    cfg = config[args.suite]
    if args.suite == "sl2":
        return {"vars": narrow(args.vars, cfg["vars"]), "s0s": narrow(args.s0, cfg["s0"]),
                "jet_orders": narrow(args.jet_order, cfg["jet_order"])}
    if args.suite == "fourier":
        return {"jet_orders": narrow(args.jet_order, cfg["jet_order"]), "s0s": narrow(args.s0, cfg["s0"]),
                "max_power": cfg["max_power"], "probe_file": args.probes}
    if args.suite == "cocycle":
        return {"ns": narrow(args.n, cfg["n"]), "samples": pick(args.samples, cfg["samples"]),
                "seed": pick(args.seed, cfg["seed"]), "jet_order": cfg["jet_order"], "s0": cfg["s0"],
                "max_power": cfg["max_power"], "max_length": cfg["max_length"], "word_file": args.words}
    if args.suite == "heisenberg":
        return {"ns": narrow(args.n, cfg["n"]), "samples": pick(args.samples, cfg["samples"]),
                "seed": pick(args.seed, cfg["seed"]), "jet_order": cfg["jet_order"], "s0": cfg["s0"],
                "covariance_elements": cfg["covariance_elements"]}
    if args.suite == "intertwiners":
        return {"s0": pick(args.s0, cfg["s0"]), "jet_order": pick(args.jet_order, cfg["jet_order"]),
                "samples": cfg["samples"], "seed": cfg["seed"], "jets": cfg["jets"]}
    if args.suite == "kashiwara":
        return {"dims": narrow(args.dim, cfg["dim"]), "pairs": narrow(args.pairs, cfg["pairs"]),
                "degree_bound": pick(args.degree_bound, cfg["degree_bound"]),
                "samples": pick(args.samples, cfg["samples"]), "seed": pick(args.seed, cfg["seed"]),
                "i_max": cfg["i_max"], "detailed": cfg["detailed"], "spec_file": args.spec}
    raise UsageError(f"unknown suite '{args.suite}'")


class Console:
    """Emoji status lines on stderr"""

    def __init__(self, quiet: bool):
        self.quiet = quiet

    def __call__(self, message: str):
        if not self.quiet:
            print(message, file=sys.stderr)


def check_inputs(paths: List[Optional[Path]]):
    for path in paths:
        if path is not None and not path.exists():
            raise UsageError(f"input file not found: {path}")


def run_verify(args: argparse.Namespace, config: Dict[str, Dict[str, Any]], say: Console) -> int:
    check_inputs([getattr(args, name, None) for name in ("probes", "words", "spec")])
    kwargs = suite_kwargs(args, config)
    say(f"🔬 Running suite: {args.suite}")
    try:
        report: Report = suites.SUITES[args.suite](**kwargs)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    except WeilError as exc:
        say(f"❌ {args.suite} aborted: {type(exc).__name__}: {exc}")
        return 1

    sys.stdout.write(report.to_json())
    counts = report.summary()
    if report.passed:
        say(f"✅ {counts['passed']}/{counts['total']} cases pass")
    else:
        say(f"❌ {counts['failed']} failed, {counts['errors']} errors of {counts['total']} cases")
        for case in report.cases:
            if not case.passed:
                say(f"   • {case.name}")
                break

    for case in report.cases:
        if case.note == suites.SQRT_NOTE:
            say(f"⚠️  {case.name}: {case.note}")

    if args.summary:
        try:
            args.summary.write_text(report.render_markdown(DEFAULT_TEMPLATE), encoding="utf-8")
            say(f"📄 Summary written: {args.summary}")
        except RuntimeError as exc:
            say(f"⚠️  {exc}")
    return report.exit_code


def run_emit(args: argparse.Namespace, config: Dict[str, Dict[str, Any]], say: Console) -> int:
    cfg = config["emit"]
    try:
        text = suites.emit_matrix(args.op, pick(args.jet_order, cfg["jet_order"]),
                                  pick(args.s0, cfg["s0"]), pick(args.format, cfg["format"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except WeilError as exc:
        say(f"❌ {args.op}: {type(exc).__name__}: {exc}")
        return 1
    sys.stdout.write(text)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    say = Console(args.quiet)
    try:
        config = load_suite_config(args.config)
        if args.command == "verify":
            return run_verify(args, config, say)
        return run_emit(args, config, say)
    except (ConfigError, UsageError) as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_USAGE
