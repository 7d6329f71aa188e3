"""Command-line interface: one subcommand per operation, JSON in and out.

Exit codes: 0 success or YES, 1 definite NO, 2 input or resource error,
3 budget exhausted without a witness.
"""

from __future__ import annotations

import argparse
import datetime
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .aperiodicity import digraph_structure_aperiodicity, is_aperiodic
from .consistency import DEFAULT_WORK_BUDGET, LCResourceError, check_consistency_gap, lc
from .exact import as_fraction, fraction_str
from .generator import GeneratorError, generate_verified, formula_params, sparsity_failure_bound
from .hypergraph import HypergraphError, HypergraphTooLarge, fibrosity_report, girth
from .jsonio import InputError, dumps, hypergraph_to_obj, load_hypergraph, load_structure
from .pipeline import PipelineError, PreconditionError, fooling_pipeline
from .structures import SearchBudgetExceeded, StructureError, find_homomorphism

log = logging.getLogger("pcsp_width")

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


def rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def kappa_list(text: str) -> list[int]:
    """``"0..3"`` or ``"0,1,3"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad kappa list {text!r}") from exc


def _config(args: argparse.Namespace) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "out", "report", "no_timestamp", "verbose"):
            continue
        if isinstance(v, Fraction):
            v = fraction_str(v)
        out[k] = v
    return out


def _emit(args: argparse.Namespace, body: dict, path: str | None = None) -> None:
    doc = {"version": __version__, "command": args.command, "config": _config(args), **body}
    if not args.no_timestamp:
        doc["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    text = dumps(doc)
    target = path if path is not None else args.out
    if target:
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- subcommands


def cmd_aperiodicity(args) -> int:
    A = load_structure(args.input)
    rep = is_aperiodic(A, cap=args.cap)
    body = rep.to_dict()
    if A.is_monic and A.arity == 2:
        body["digraph_criterion"] = digraph_structure_aperiodicity(A).to_dict()
    _emit(args, body)
    return {True: EXIT_OK, False: EXIT_NO, None: EXIT_BUDGET}[rep.aperiodic]


def cmd_mixing_time(args) -> int:
    A = load_structure(args.input)
    rep = is_aperiodic(A, cap=args.cap)
    _emit(args, rep.to_dict())
    return {True: EXIT_OK, False: EXIT_NO, None: EXIT_BUDGET}[rep.aperiodic]


def cmd_hg_stats(args) -> int:
    H = load_hypergraph(args.input)
    rep = fibrosity_report(H, args.tau, beta=args.beta, gamma=args.gamma)
    _emit(args, rep.to_dict())
    return EXIT_OK


def cmd_girth(args) -> int:
    H = load_hypergraph(args.input)
    g = girth(H)
    _emit(args, {"girth": None if g == math.inf else g, "acyclic": g == math.inf})
    return EXIT_OK


def cmd_generate(args) -> int:
    H, rep = generate_verified(
        args.n, args.p, args.g, args.h, args.beta, args.delta,
        max_attempts=args.max_attempts, seed=args.seed, r=args.r, budget=args.budget,
        proof_faithful=args.proof_faithful, allow_unknown=args.allow_unknown,
        require_sparsity=not args.skip_sparsity,
    )
    if H is not None and args.out:
        Path(args.out).write_text(dumps(hypergraph_to_obj(H)))
    body = rep.to_dict()
    if H is not None and not args.out:
        body["hypergraph"] = hypergraph_to_obj(H)
    if args.proof_faithful:
        body["formula_params"] = formula_params(args.g, args.h, args.beta, args.r).to_dict()
    # --out holds the hypergraph, so the report goes to --report or stdout
    _emit(args, body, args.report or "")
    return EXIT_OK if rep.success else EXIT_BUDGET


def cmd_lc(args) -> int:
    X = load_structure(args.instance)
    A = load_structure(args.template)
    res = lc(X, A, args.kappa, work_budget=args.budget)
    _emit(args, res.to_dict())
    return EXIT_OK if res.answer else EXIT_NO


def cmd_hom(args) -> int:
    X = load_structure(args.instance)
    A = load_structure(args.template)
    h = find_homomorphism(X, A, node_budget=args.budget)
    _emit(args, {"found": h is not None, "map": None if h is None else list(h)})
    return EXIT_OK if h is not None else EXIT_NO


def cmd_gap(args) -> int:
    X = load_structure(args.instance)
    A = load_structure(args.template)
    v = check_consistency_gap(X, A, args.kappa, args.gamma)
    _emit(args, v.to_dict())
    return EXIT_OK if v.holds else EXIT_NO


def cmd_fool(args) -> int:
    A = load_structure(args.template)
    B = load_structure(args.weak)
    gen = {"p": args.p, "max_attempts": args.max_attempts, "delta": fraction_str(args.delta)}
    if args.girth is not None:
        gen["girth"] = args.girth
    if args.beta is not None:
        gen["beta"] = fraction_str(args.beta)
    rep = fooling_pipeline(
        A, B, args.n, gen, kappas=args.kappa, seed=args.seed, work_budget=args.budget,
        timings=not args.no_timestamp,
    )
    _emit(args, rep.to_dict())
    return EXIT_OK if rep.fooled else EXIT_BUDGET


def cmd_params(args) -> int:
    P = formula_params(args.g, args.h, args.beta, args.r)
    body = P.to_dict()
    if args.n is not None:
        body["n"] = args.n
        body["edge_probability"] = mpmath.nstr(P.edge_probability(args.n), 17)
        try:
            body["failure_bound"] = mpmath.nstr(sparsity_failure_bound(args.r, P.ell, args.n, P.mu, P.nu), 17)
        except GeneratorError as exc:
            body["failure_bound"] = None
            body["failure_bound_reason"] = str(exc)
    _emit(args, body)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pcsp-width", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--no-timestamp", action="store_true", help="omit timestamps and timings (byte-stable output)")
    common.add_argument("--threads", type=int, default=1, help="parallelism hint (currently sequential)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("aperiodicity", parents=[common], help="decide aperiodicity of a structure")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--cap", type=int, default=None, help="level-set iteration cap")
    p.set_defaults(func=cmd_aperiodicity)

    p = sub.add_parser("mixing-time", parents=[common], help="exact mixing time of a structure")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_mixing_time)

    p = sub.add_parser("hg-stats", parents=[common], help="fibrosity, pendency, girth and sparsity of a hypergraph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tau", type=int, default=1)
    p.add_argument("--beta", type=rational, default=None, help="rational p/q")
    p.add_argument("--gamma", type=rational, default=None, help="rational p/q")
    p.set_defaults(func=cmd_hg_stats)

    p = sub.add_parser("girth", parents=[common], help="Berge girth of a hypergraph")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("generate", parents=[common], help="sample a verified sparse high-girth hypergraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--g", type=int, default=3)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--beta", type=rational, default=Fraction(3, 2))
    p.add_argument("--delta", type=rational, default=Fraction(1, 20))
    p.add_argument("--budget", type=int, default=None, help="max vertices deleted to break short cycles")
    p.add_argument("--max-attempts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--proof-faithful", action="store_true", help="delete exactly n/2 vertices and echo the formula constants")
    p.add_argument("--allow-unknown", action="store_true", help="accept undecided sparsity or chromatic verdicts")
    p.add_argument("--skip-sparsity", action="store_true", help="report but do not require threshold sparsity")
    p.add_argument("--report", help="write the generation report here (the hypergraph goes to --out)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("lc", parents=[common], help="run the local-consistency algorithm")
    p.add_argument("--instance", required=True)
    p.add_argument("--template", required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET)
    p.set_defaults(func=cmd_lc)

    p = sub.add_parser("hom", parents=[common], help="search for a homomorphism")
    p.add_argument("--instance", required=True)
    p.add_argument("--template", required=True)
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("gap", parents=[common], help="check a consistency gap exhaustively (tiny instances)")
    p.add_argument("--instance", required=True)
    p.add_argument("--template", required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--gamma", type=rational, required=True)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("fool", parents=[common], help="build a fooling instance end to end")
    p.add_argument("--template", required=True)
    p.add_argument("--weak", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", type=kappa_list, default=[0, 1, 2, 3], help="e.g. 0..3 or 0,2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.08)
    p.add_argument("--girth", type=int, default=None)
    p.add_argument("--beta", type=rational, default=None)
    p.add_argument("--delta", type=rational, default=Fraction(1, 20))
    p.add_argument("--max-attempts", type=int, default=10)
    p.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET)
    p.set_defaults(func=cmd_fool)

    p = sub.add_parser("params", parents=[common], help="evaluate the construction's explicit constants")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--beta", type=rational, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="also report p = ell n^(1-r) and the failure bound")
    p.set_defaults(func=cmd_params)
    return ap


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (SearchBudgetExceeded, HypergraphTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, StructureError, HypergraphError, GeneratorError, PreconditionError,
            PipelineError, LCResourceError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
