"""Render experiment records as a two-panel figure.

Top panel: est_rel per matrix for each method (log scale). Bottom panel:
the epsilon chosen by the Schur method per matrix. Failed cells are drawn
as open markers on the top edge of the plot.
"""

from __future__ import annotations

import numpy as np
from matplotlib.figure import Figure

from .methods import METHODS

__all__ = ["experiment_figure", "save_experiment_figure"]

_STYLE = {
    "case1": dict(marker="o", color="tab:blue"),
    "sign": dict(marker="s", color="tab:orange"),
    "spectral": dict(marker="^", color="tab:green"),
    "schur": dict(marker="D", color="tab:red"),
}

_FLOOR = 1e-18


def experiment_figure(records, tol: float | None = None) -> Figure:
    ids = list(dict.fromkeys(rec.matrix_id for rec in records))
    pos = {mid: k + 1 for k, mid in enumerate(ids)}
    fig = Figure(figsize=(9, 6.5), layout="constrained")
    top, bottom = fig.subplots(2, 1, sharex=True, height_ratios=[2, 1])

    finite = [rec.est_rel for rec in records if rec.est_rel is not None and np.isfinite(rec.est_rel)]
    ceiling = max([1.0] + finite) * 10
    for method in METHODS:
        rows = [rec for rec in records if rec.method == method]
        ok = [r for r in rows if r.est_rel is not None and np.isfinite(r.est_rel)]
        bad = [r for r in rows if r not in ok]
        style = _STYLE.get(method, {})
        top.semilogy(
            [pos[r.matrix_id] for r in ok],
            [max(r.est_rel, _FLOOR) for r in ok],
            linestyle="none",
            label=method,
            **style,
        )
        if bad:
            top.semilogy(
                [pos[r.matrix_id] for r in bad],
                [ceiling] * len(bad),
                linestyle="none",
                markerfacecolor="none",
                **style,
            )
    if tol is not None:
        top.axhline(tol, color="0.5", linewidth=0.8, linestyle="--")
    top.set_ylabel("est_rel")
    top.legend(loc="upper left", ncols=4, fontsize="small")
    top.grid(True, which="major", alpha=0.3)

    eps = [(pos[r.matrix_id], r.epsilon) for r in records if r.method == "schur" and r.epsilon]
    if eps:
        x, y = zip(*eps)
        bottom.semilogy(x, y, linestyle="none", **_STYLE["schur"])
    bottom.set_ylabel("epsilon (schur)")
    bottom.set_xlabel("matrix")
    bottom.set_xticks(range(1, len(ids) + 1))
    bottom.grid(True, which="major", alpha=0.3)
    return fig


def save_experiment_figure(records, path, tol: float | None = None) -> None:
    experiment_figure(records, tol=tol).savefig(path, dpi=150)
