"""Command-line interface.

Exit codes: 0 success, 1 candidate is not a solution (verify), 2 input
could not be parsed or written, 3 the method does not apply to the input,
4 a solution was produced but its est_rel exceeds the tolerance.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import MatrixParseError, YBError
from .experiment import read_csv, run_experiment, write_csv
from .fixtures import standard_corpus
from .linalg import DEFAULT_TOLERANCES, ToleranceConfig
from .matio import load_matrix, save_matrix
from .methods import METHODS, solve
from .verification import est_rel

EXIT_OK, EXIT_NOT_SOLUTION, EXIT_PARSE, EXIT_PRECONDITION, EXIT_DEGRADED = range(5)


def _config(args) -> ToleranceConfig:
    return ToleranceConfig(
        rank_tol_factor=args.tol_rank_factor,
        eig_cluster_tol=args.tol_cluster,
        imag_axis_tol=DEFAULT_TOLERANCES.imag_axis_tol,
        residual_tol=args.tol_residual,
        projector_tol=DEFAULT_TOLERANCES.projector_tol,
    )


def _err(msg: str) -> None:
    print(f"ybsolve: {msg}", file=sys.stderr)


def cmd_solve(args) -> int:
    try:
        A = load_matrix(args.input)
    except MatrixParseError as exc:
        _err(str(exc))
        return EXIT_PARSE
    if A.shape[0] != A.shape[1]:
        _err(f"matrix must be square, got {A.shape[0]}x{A.shape[1]}")
        return EXIT_PARSE
    cfg = _config(args)
    try:
        result = solve(A, args.method, seed=args.seed, cfg=cfg)
    except YBError as exc:
        _err(f"{args.method}: {type(exc).__name__}: {exc}")
        return EXIT_PRECONDITION
    report = est_rel(A, result.X, cfg)
    try:
        if args.out:
            save_matrix(args.out, result.X)
        if args.report:
            Path(args.report).write_text(report.to_json() + "\n")
    except OSError as exc:
        _err(str(exc))
        return EXIT_PARSE
    print(report.to_json())
    if result.note:
        _err(result.note)
    return EXIT_OK if report.is_solution else EXIT_DEGRADED


def cmd_verify(args) -> int:
    try:
        A = load_matrix(args.matrix)
        X = load_matrix(args.candidate)
    except MatrixParseError as exc:
        _err(str(exc))
        return EXIT_PARSE
    if A.shape != X.shape or A.shape[0] != A.shape[1]:
        _err(f"shapes {A.shape} and {X.shape} must be square and equal")
        return EXIT_PARSE
    report = est_rel(A, X, _config(args))
    print(report.to_json())
    return EXIT_OK if report.is_solution else EXIT_NOT_SOLUTION


def cmd_experiment(args) -> int:
    cfg = _config(args)
    records = run_experiment(args.seed, cfg)
    try:
        write_csv(records, args.out)
        if args.figure:
            from .report import save_experiment_figure

            save_experiment_figure(records, args.figure, tol=cfg.residual_tol)
    except OSError as exc:
        _err(str(exc))
        return EXIT_PARSE
    return EXIT_OK


def cmd_plot(args) -> int:
    from .report import save_experiment_figure

    try:
        records = read_csv(args.csv)
        save_experiment_figure(records, args.figure, tol=args.tol_residual)
    except (OSError, KeyError, ValueError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    return EXIT_OK


def cmd_corpus(args) -> int:
    out = Path(args.outdir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        index = []
        for tm in standard_corpus(args.seed):
            save_matrix(out / f"{tm.id}.json", tm.A)
            index.append({"id": tm.id, "n": tm.n, "rank": tm.known_rank, "index": tm.known_index, "notes": tm.notes})
        (out / "index.json").write_text(json.dumps(index, indent=1) + "\n")
    except OSError as exc:
        _err(str(exc))
        return EXIT_PARSE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    tol = argparse.ArgumentParser(add_help=False)
    d = DEFAULT_TOLERANCES
    tol.add_argument("--tol-residual", type=float, default=d.residual_tol, help="acceptance tolerance on est_rel")
    tol.add_argument("--tol-rank-factor", type=float, default=d.rank_tol_factor, help="multiplier on the SVD rank threshold")
    tol.add_argument("--tol-cluster", type=float, default=d.eig_cluster_tol, help="relative eigenvalue clustering threshold")

    p = argparse.ArgumentParser(prog="ybsolve", description="Solutions of the matrix equation AXA = XAX for singular A.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[tol], help="compute one solution by a chosen method")
    s.add_argument("input", help="matrix file (JSON or text)")
    s.add_argument("--method", choices=METHODS, default="case1")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="write X here as JSON")
    s.add_argument("--report", help="also write the verification report JSON here")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[tol], help="check a candidate solution")
    v.add_argument("matrix")
    v.add_argument("candidate")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", parents=[tol], help="run all methods over the test corpus")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True, help="CSV report path")
    e.add_argument("--figure", help="also render the report as an image (png, pdf, svg)")
    e.set_defaults(func=cmd_experiment)

    pl = sub.add_parser("plot", parents=[tol], help="render a figure from an experiment CSV")
    pl.add_argument("csv")
    pl.add_argument("figure")
    pl.set_defaults(func=cmd_plot)

    c = sub.add_parser("corpus", help="export the test corpus as JSON matrix files")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--outdir", required=True)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # bad tolerance values and similar argument problems
        _err(str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
