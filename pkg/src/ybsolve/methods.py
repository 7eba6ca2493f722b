"""The four solution algorithms compared in the experiment harness.

case1
    B = A^2 in the general family, random Y.
sign
    B = A^2 (I + S)/2 with S = sign(A + alpha I) and alpha the midpoint
    shift between the two largest distinct real parts, random Y.
spectral
    B = A^2 P where P = I - G is the complementary spectral projector of
    the last distinct eigenvalue (ordered by magnitude, then phase).
schur
    The ordered-Schur algorithm with Z1 = B1 and a random diagonal in the
    null-space term.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NonsingularInput, NumericalWarning, YBError
from .linalg import DEFAULT_TOLERANCES, ToleranceConfig, as_matrix, distinct_eigenvalues, rank
from .projectors import complementary_projector, sign_shift_alphas, sign_shift_projectors
from .solvers import (
    check_B_consistency,
    family_from_B,
    random_parameter,
    schur_block_data,
    schur_family_solve,
)

__all__ = ["METHODS", "MethodResult", "MethodPrecondition", "solve"]

METHODS = ("case1", "sign", "spectral", "schur")


class MethodPrecondition(YBError, ValueError):
    """The chosen method does not apply to this matrix."""


@dataclass(frozen=True)
class MethodResult:
    X: np.ndarray
    method: str
    epsilon: float | None = None
    note: str = ""


def _require_singular(A: np.ndarray, cfg: ToleranceConfig) -> None:
    if rank(A, cfg) == A.shape[0]:
        raise NonsingularInput("input matrix is nonsingular")


def _solve_case1(A, seed, cfg):
    fam = family_from_B(A, check_B_consistency(A, A @ A, cfg, provenance="case1_sq"), cfg)
    return MethodResult(fam.sample(random_parameter(A.shape[0], seed)), "case1")


def _solve_sign(A, seed, cfg):
    shifts = sign_shift_alphas(A, cfg)
    if not shifts.alphas:
        raise MethodPrecondition("all eigenvalues share one real part; no nontrivial shift exists")
    alpha = shifts.alphas[-1]
    plus, _ = sign_shift_projectors(A, alpha, cfg, rotated=shifts.rotated)
    B = check_B_consistency(A, A @ A @ plus.P, cfg, provenance="case3")
    fam = family_from_B(A, B, cfg)
    note = "rotated -iA" if shifts.rotated else ""
    return MethodResult(fam.sample(random_parameter(A.shape[0], seed)), "sign", note=note)


def _solve_spectral(A, seed, cfg):
    lam, _ = distinct_eigenvalues(A, cfg)[-1]
    P = complementary_projector(A, lam, cfg)
    B = check_B_consistency(A, A @ A @ P.P, cfg, provenance="case4")
    fam = family_from_B(A, B, cfg)
    return MethodResult(fam.sample(random_parameter(A.shape[0], seed)), "spectral")


def _solve_schur(A, seed, cfg):
    # numerical warnings are reported through MethodResult.note instead
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NumericalWarning)
        data = schur_block_data(A, cfg)
        X = schur_family_solve(A, seed, cfg, data=data)
    for w in caught:
        if not issubclass(w.category, NumericalWarning):
            warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    notes = []
    if data.degenerate:
        notes.append(f"degenerate split (gap ratio {data.gap_ratio:.3g})")
    notes += [str(w.message) for w in caught if issubclass(w.category, NumericalWarning) and "degenerate" not in str(w.message)]
    return MethodResult(X, "schur", epsilon=data.epsilon, note="; ".join(notes))


_DISPATCH = {
    "case1": _solve_case1,
    "sign": _solve_sign,
    "spectral": _solve_spectral,
    "schur": _solve_schur,
}


def solve(A, method: str, seed=None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> MethodResult:
    """Produce one solution of ``AXA = XAX`` for singular `A` by `method`."""
    if method not in _DISPATCH:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    _require_singular(A, cfg)
    return _DISPATCH[method](A, seed, cfg)
