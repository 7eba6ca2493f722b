"""Run every method over the standard corpus and tabulate est_rel."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import YBError
from .fixtures import TestMatrix, standard_corpus
from .linalg import DEFAULT_TOLERANCES, ToleranceConfig, rank
from .methods import METHODS, solve
from .verification import est_rel

__all__ = ["CSV_COLUMNS", "ExperimentRecord", "run_cell", "run_experiment", "write_csv", "read_csv"]

CSV_COLUMNS = ("matrix_id", "n", "rank", "method", "est_rel", "epsilon", "wall_time_ms", "status")


@dataclass(frozen=True)
class ExperimentRecord:
    matrix_id: str
    n: int
    rank: int
    method: str
    est_rel: float | None
    epsilon: float | None
    wall_time_ms: float
    status: str

    @property
    def failed(self) -> bool:
        return self.status.startswith("failed")


def run_cell(tm: TestMatrix, method: str, seed, cfg: ToleranceConfig = DEFAULT_TOLERANCES, r: int | None = None) -> ExperimentRecord:
    """Solve and verify one (matrix, method) pair; errors become a failed status."""
    r = rank(tm.A, cfg) if r is None else r
    start = time.perf_counter()
    value = epsilon = None
    try:
        result = solve(tm.A, method, seed=seed, cfg=cfg)
        report = est_rel(tm.A, result.X, cfg)
        value, epsilon = report.est_rel, result.epsilon
        status = "ok" if report.is_solution else "degraded"
    except (YBError, np.linalg.LinAlgError) as exc:
        status = f"failed({type(exc).__name__})"
    elapsed = (time.perf_counter() - start) * 1e3
    return ExperimentRecord(tm.id, tm.n, r, method, value, epsilon, elapsed, status)


def run_experiment(seed: int = 0, cfg: ToleranceConfig = DEFAULT_TOLERANCES, corpus=None) -> list[ExperimentRecord]:
    """One record per (matrix, method), matrices in corpus order.

    The random free parameter of each cell is seeded from `seed` and the
    cell position, so any single cell can be reproduced in isolation.
    """
    corpus = standard_corpus(seed) if corpus is None else corpus
    cell_seeds = np.random.SeedSequence(seed).spawn(len(corpus) * len(METHODS))
    records = []
    for i, tm in enumerate(corpus):
        r = rank(tm.A, cfg)
        for j, method in enumerate(METHODS):
            cell_seed = np.random.default_rng(cell_seeds[i * len(METHODS) + j])
            records.append(run_cell(tm, method, cell_seed, cfg, r=r))
    return records


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    if math.isinf(x):
        return "inf"
    return format(x, ".17g")


def write_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for rec in records:
            w.writerow([
                rec.matrix_id,
                rec.n,
                rec.rank,
                rec.method,
                _fmt(rec.est_rel),
                _fmt(rec.epsilon),
                _fmt(rec.wall_time_ms),
                rec.status,
            ])


def read_csv(path) -> list[ExperimentRecord]:
    def num(s):
        return float(s) if s else None

    with open(Path(path), newline="") as fh:
        return [
            ExperimentRecord(
                matrix_id=row["matrix_id"],
                n=int(row["n"]),
                rank=int(row["rank"]),
                method=row["method"],
                est_rel=num(row["est_rel"]),
                epsilon=num(row["epsilon"]),
                wall_time_ms=float(row["wall_time_ms"]),
                status=row["status"],
            )
            for row in csv.DictReader(fh)
        ]
