"""Idempotent matrices commuting with a given matrix.

Each construction returns a :class:`ProjectorCertificate`: the projector
together with its measured idempotency and commutation residuals, so that
downstream code can refuse a projector that came out of a badly conditioned
generalized inverse or sign function.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .errors import EmptyGamma, NonCommutingInput, NotAnEigenvalue
from .linalg import (
    DEFAULT_TOLERANCES,
    ToleranceConfig,
    as_matrix,
    cluster_points,
    distinct_eigenvalues,
    drazin,
    fro,
    matrix_index,
    matrix_sign,
)

__all__ = [
    "ProjectorCertificate",
    "certify",
    "drazin_projector",
    "commuting_poly_matrix",
    "spectral_projector",
    "complementary_projector",
    "sum_projector",
    "all_sum_projectors",
    "AlphaShifts",
    "sign_shift_alphas",
    "sign_shift_projectors",
    "eigen_replaced_sign_projectors",
]


@dataclass(frozen=True)
class ProjectorCertificate:
    """A projector `P` and how well it satisfies ``P^2 = P`` and ``AP = PA``."""

    P: np.ndarray
    idempotency_residual: float
    commutation_residual: float
    provenance: str
    scale: float
    tol: float

    @property
    def valid(self) -> bool:
        bound = self.tol * self.scale
        return self.idempotency_residual <= bound and self.commutation_residual <= bound

    @property
    def trivial(self) -> bool:
        """True when `P` is numerically 0 or I (these only give B in {0, A^2})."""
        n = self.P.shape[0]
        bound = self.tol * self.scale
        return fro(self.P) <= bound or fro(self.P - np.eye(n)) <= bound

    @property
    def rank(self) -> int:
        # the trace of an idempotent equals its rank
        return int(round(np.trace(self.P).real))

    def complement(self, A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> "ProjectorCertificate":
        n = self.P.shape[0]
        return certify(A, np.eye(n) - self.P, "complementary", cfg)


def certify(A, P, provenance: str = "user", cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ProjectorCertificate:
    """Measure the projector residuals of `P` against `A`."""
    A = as_matrix(A)
    P = as_matrix(P)
    return ProjectorCertificate(
        P=P,
        idempotency_residual=fro(P @ P - P),
        commutation_residual=fro(A @ P - P @ A),
        provenance=provenance,
        scale=max(1.0, fro(A)) * max(1.0, fro(P)),
        tol=cfg.projector_tol,
    )


def drazin_projector(A, M, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ProjectorCertificate:
    """``P = M M^D`` for a matrix `M` commuting with `A`."""
    A = as_matrix(A)
    M = as_matrix(M)
    if M.shape != A.shape:
        raise ValueError(f"M has shape {M.shape}, A has shape {A.shape}")
    gap = fro(A @ M - M @ A)
    if gap > cfg.projector_tol * max(1.0, fro(A)) * max(1.0, fro(M)):
        raise NonCommutingInput(f"||AM - MA||_F = {gap:.3g}")
    return certify(A, M @ drazin(M, cfg), "drazin", cfg)


def _check_eigenvalue(A: np.ndarray, lam: complex, cfg: ToleranceConfig) -> tuple[complex, int]:
    """Return the distinct eigenvalue cluster matching `lam` and its multiplicity."""
    threshold = cfg.eig_cluster_tol * max(1.0, fro(A))
    for value, mult in distinct_eigenvalues(A, cfg):
        if abs(value - lam) <= threshold:
            return value, mult
    raise NotAnEigenvalue(f"{lam!r} is not an eigenvalue (cluster tolerance {threshold:.3g})")


def commuting_poly_matrix(A, lambda_i: complex, coeffs, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """``f(A) - f(lambda_i) I`` for the polynomial with coefficients `coeffs`.

    Coefficients are given highest degree first, as for :func:`numpy.polyval`.
    """
    A = as_matrix(A)
    _check_eigenvalue(A, lambda_i, cfg)
    n = A.shape[0]
    F = np.zeros((n, n), dtype=np.complex128)
    for c in coeffs:
        F = F @ A + c * np.eye(n)
    return F - np.polyval(list(coeffs) or [0], lambda_i) * np.eye(n)


def _spectral_G(A: np.ndarray, lam: complex, mult: int, cfg: ToleranceConfig) -> np.ndarray:
    n = A.shape[0]
    M = A - lam * np.eye(n)
    # ind(M) <= mult, and rank(M^l) = n - mult for every l >= ind(M)
    ell = min(max(1, matrix_index(M, cfg)), mult)
    return np.eye(n) - M @ drazin(M, cfg, index=ell, rank=n - mult)


def spectral_projector(A, lambda_i: complex, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ProjectorCertificate:
    """Spectral projector ``G = I - (A - lambda I)(A - lambda I)^D``.

    `lambda_i` is matched to a distinct eigenvalue cluster first; its
    algebraic multiplicity fixes the rank used in the Drazin inverse.
    """
    A = as_matrix(A)
    lam, mult = _check_eigenvalue(A, lambda_i, cfg)
    return certify(A, _spectral_G(A, lam, mult, cfg), "spectral", cfg)


def complementary_projector(A, lambda_i: complex, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ProjectorCertificate:
    """``P = I - G`` for the spectral projector `G` of `lambda_i`."""
    A = as_matrix(A)
    G = spectral_projector(A, lambda_i, cfg).P
    return certify(A, np.eye(A.shape[0]) - G, "complementary", cfg)


def sum_projector(A, gamma, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ProjectorCertificate:
    """Sum of spectral projectors over the eigenvalue indices in `gamma`.

    Indices refer to the ordering returned by :func:`distinct_eigenvalues`.
    """
    A = as_matrix(A)
    gamma = sorted(set(int(i) for i in gamma))
    if not gamma:
        raise EmptyGamma("gamma must select at least one eigenvalue")
    eigs = distinct_eigenvalues(A, cfg)
    if gamma[0] < 0 or gamma[-1] >= len(eigs):
        raise IndexError(f"gamma {gamma} out of range for {len(eigs)} distinct eigenvalues")
    E = sum(_spectral_G(A, *eigs[i], cfg) for i in gamma)
    return certify(A, E, "sum", cfg)


def all_sum_projectors(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> dict[tuple[int, ...], ProjectorCertificate]:
    """Every ``E_Gamma`` over nonempty subsets Gamma (``2^s - 1`` of them)."""
    A = as_matrix(A)
    eigs = distinct_eigenvalues(A, cfg)
    G = [_spectral_G(A, lam, mult, cfg) for lam, mult in eigs]
    out = {}
    for size in range(1, len(G) + 1):
        for gamma in combinations(range(len(G)), size):
            out[gamma] = certify(A, sum(G[i] for i in gamma), "sum", cfg)
    return out


class AlphaShifts(NamedTuple):
    alphas: list[float]
    rotated: bool
    """True when the shifts refer to ``-iA`` because A's spectrum is purely imaginary."""


def sign_shift_alphas(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> AlphaShifts:
    """Shifts placing the imaginary axis between consecutive distinct real parts.

    For real parts ``r_1 < ... < r_s`` the shifts are ``-(r_k + r_{k+1}) / 2``.
    """
    A = as_matrix(A)
    scale = max(1.0, fro(A))
    lam = np.array([v for v, _ in distinct_eigenvalues(A, cfg)])
    rotated = bool(np.all(np.abs(lam.real) <= cfg.imag_axis_tol * scale))
    if rotated:
        lam = -1j * lam
    clusters = cluster_points(lam.real, cfg.eig_cluster_tol * scale)
    reals = sorted(float(lam.real[idx].mean()) for idx in clusters)
    alphas = [-(a + b) / 2 for a, b in zip(reals[:-1], reals[1:])]
    return AlphaShifts(alphas, rotated)


def sign_shift_projectors(
    A, alpha: complex, cfg: ToleranceConfig = DEFAULT_TOLERANCES, *, rotated: bool = False
) -> tuple[ProjectorCertificate, ProjectorCertificate]:
    """``(I + S)/2`` and ``(I - S)/2`` with ``S = sign(A + alpha I)``.

    With ``rotated=True`` the sign is taken of ``-iA + alpha I``. Both
    certificates are always measured against the original `A`.
    """
    A = as_matrix(A)
    n = A.shape[0]
    base = -1j * A if rotated else A
    S = matrix_sign(base + alpha * np.eye(n), cfg)
    I = np.eye(n)
    return certify(A, (I + S) / 2, "sign_shift", cfg), certify(A, (I - S) / 2, "sign_shift", cfg)


def eigen_replaced_sign_projectors(
    A, lambda_i: complex, alpha: complex, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> tuple[ProjectorCertificate, ProjectorCertificate]:
    """Projectors from ``sign(A + (alpha - lambda_i) G)``.

    The shifted matrix has the spectrum of `A` with `lambda_i` moved to
    `alpha`, and its sign function commutes with `A`.
    """
    A = as_matrix(A)
    n = A.shape[0]
    lam, mult = _check_eigenvalue(A, lambda_i, cfg)
    G = _spectral_G(A, lam, mult, cfg)
    S = matrix_sign(A + (alpha - lam) * G, cfg)
    I = np.eye(n)
    return (
        certify(A, (I + S) / 2, "eigen_replaced_sign", cfg),
        certify(A, (I - S) / 2, "eigen_replaced_sign", cfg),
    )
