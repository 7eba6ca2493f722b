"""Residual and relative-error estimate for candidate solutions of AXA = XAX.

The error estimate is ``||R(X)|| / (||M(X)|| ||X||)`` with Frobenius norms,
where ``R(X) = AXA - XAX`` and

    M(X) = A^T (x) A - I (x) (XA) - (AX)^T (x) I

is the Kronecker form of the Frechet derivative of ``R`` at ``X``. Note that
``^T`` is the plain transpose, also for complex matrices.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from itertools import combinations

import numpy as np

from .linalg import DEFAULT_TOLERANCES, ToleranceConfig, as_matrix, fro

__all__ = [
    "VerificationReport",
    "residual",
    "frechet_operator",
    "frechet_norm",
    "est_rel",
    "pairwise_distinct",
    "solution_scale",
    "is_small_residual",
]


@dataclass(frozen=True)
class VerificationReport:
    residual_norm: float
    frechet_norm: float
    est_rel: float
    is_solution: bool

    def to_json(self) -> str:
        d = asdict(self)
        # JSON has no infinity literal
        if math.isinf(d["est_rel"]):
            d["est_rel"] = "inf"
        return json.dumps(d)


def _pair(A, X):
    A = as_matrix(A)
    X = as_matrix(X)
    if A.shape != X.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"A {A.shape} and X {X.shape} must be square of the same order")
    return A, X


def residual(A, X) -> np.ndarray:
    """``AXA - XAX``."""
    A, X = _pair(A, X)
    return A @ X @ A - X @ A @ X


def frechet_operator(A, X) -> np.ndarray:
    """The ``n^2 x n^2`` matrix ``A^T (x) A - I (x) XA - (AX)^T (x) I``."""
    A, X = _pair(A, X)
    n = A.shape[0]
    I = np.eye(n)
    return np.kron(A.T, A) - np.kron(I, X @ A) - np.kron((A @ X).T, I)


def _inner(P, Q) -> complex:
    return complex(np.vdot(P, Q))


def frechet_norm(A, X) -> float:
    """``||M(X)||_F`` without forming the ``n^2 x n^2`` matrix.

    Uses ``<P (x) Q, R (x) S> = <P, R> <Q, S>`` on the three Kronecker terms.
    """
    A, X = _pair(A, X)
    n = A.shape[0]
    I = np.eye(n)
    terms = [(A.T, A), (I, X @ A), ((A @ X).T, I)]
    signs = [1.0, -1.0, -1.0]
    total = 0.0
    for i in range(3):
        for j in range(3):
            P, Q = terms[i]
            R, S = terms[j]
            total += signs[i] * signs[j] * (_inner(P, R) * _inner(Q, S)).real
    return math.sqrt(max(total, 0.0))


def est_rel(A, X, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> VerificationReport:
    """Relative error estimate of `X` as a solution of ``AXA = XAX``.

    `est_rel` is ``inf`` when ``X = 0`` or ``M(X) = 0``. `is_solution` means
    ``||R(X)|| <= residual_tol ||M(X)|| ||X||``, which reduces to an exactly
    zero residual in the degenerate cases.
    """
    A, X = _pair(A, X)
    res = fro(residual(A, X))
    mnorm = frechet_norm(A, X)
    denom = mnorm * fro(X)
    value = res / denom if denom > 0 else math.inf
    return VerificationReport(
        residual_norm=res,
        frechet_norm=mnorm,
        est_rel=value,
        is_solution=bool(res <= cfg.residual_tol * denom),
    )


def solution_scale(A, X) -> float:
    """``max(1, ||A||)^2 max(1, ||X||)``, the reference size of a residual."""
    return max(1.0, fro(A)) ** 2 * max(1.0, fro(X))


def is_small_residual(A, X, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    return fro(residual(A, X)) <= cfg.residual_tol * solution_scale(A, X)


def pairwise_distinct(mats, threshold: float) -> bool:
    """True iff every pair of matrices is more than `threshold` apart in Frobenius norm."""
    mats = [as_matrix(M) for M in mats]
    return all(fro(P - Q) > threshold for P, Q in combinations(mats, 2))
