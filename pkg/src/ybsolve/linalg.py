"""Dense complex linear-algebra primitives.

Everything here works on ``complex128`` numpy arrays. Numerical thresholds
are collected in :class:`ToleranceConfig` so that rank decisions, eigenvalue
clustering and the sign-function guard are made consistently across the
package.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np
import scipy.linalg as spla
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import pdist

from .errors import (
    ImaginaryAxisEigenvalue,
    NonFiniteMatrix,
    OrdSchurSwapError,
    SchurConvergenceError,
)

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "SchurForm",
    "as_matrix",
    "fro",
    "rank_tolerance",
    "rank",
    "pinv",
    "matrix_index",
    "drazin",
    "schur_complex",
    "ordschur_select",
    "matrix_sign",
    "nullspace_basis",
    "min_norm_solve",
    "kron",
    "cluster_points",
    "distinct_eigenvalues",
]

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds shared by every routine.

    rank_tol_factor
        Multiplier on the standard SVD rank threshold
        ``max(rows, cols) * eps * sigma_max``.
    eig_cluster_tol
        Eigenvalues closer than ``eig_cluster_tol * max(1, ||A||_F)`` are
        treated as one distinct eigenvalue (single linkage).
    imag_axis_tol
        Eigenvalues with ``|Re| <= imag_axis_tol * max(1, ||A||_F)`` make the
        matrix sign function undefined.
    residual_tol
        Relative tolerance used to accept solutions and consistent systems.
    projector_tol
        Relative tolerance for idempotency and commutation of projectors.
    """

    rank_tol_factor: float = 1.0
    eig_cluster_tol: float = 1e-8
    imag_axis_tol: float = 1e-10
    residual_tol: float = 1e-8
    projector_tol: float = 1e-8

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value >= 0:
                raise ValueError(f"{f.name} must be nonnegative, got {value!r}")


DEFAULT_TOLERANCES = ToleranceConfig()


def as_matrix(A) -> np.ndarray:
    """Return `A` as a 2-D ``complex128`` array, rejecting NaN/Inf entries."""
    M = np.array(A, dtype=np.complex128)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFiniteMatrix("matrix has NaN or Inf entries")
    return M


def _square(A) -> np.ndarray:
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def fro(A) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(A, "fro")) if np.size(A) else 0.0


@dataclass(frozen=True)
class SchurForm:
    """Complex Schur factorization ``A = U T U*`` with `T` upper triangular."""

    U: np.ndarray
    T: np.ndarray

    @property
    def n(self) -> int:
        return self.T.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.diag(self.T).copy()

    def reconstruct(self) -> np.ndarray:
        return self.U @ self.T @ self.U.conj().T


def rank_tolerance(s: np.ndarray, shape, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    smax = float(s[0]) if s.size else 0.0
    return cfg.rank_tol_factor * max(shape) * EPS * smax


def rank(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> int:
    """Numerical rank: number of singular values above the rank tolerance."""
    M = as_matrix(A)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rank_tolerance(s, M.shape, cfg)))


_numerical_rank = rank


def pinv(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES, rank: int | None = None) -> np.ndarray:
    """Moore-Penrose inverse by truncated SVD.

    If `rank` is given, exactly that many singular triplets are kept instead
    of thresholding at the rank tolerance.
    """
    M = as_matrix(A)
    m, n = M.shape
    if M.size == 0:
        return np.zeros((n, m), dtype=np.complex128)
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    if rank is None:
        k = 0 if s[0] == 0 else int(np.count_nonzero(s > rank_tolerance(s, M.shape, cfg)))
    else:
        k = max(0, min(int(rank), s.size))
    return (Vh[:k].conj().T / s[:k]) @ U[:, :k].conj().T


def _index_data(A: np.ndarray, cfg: ToleranceConfig):
    """Return ``(index, rank(A^index), A^index)``."""
    n = A.shape[0]
    power = np.eye(n, dtype=np.complex128)
    r_prev = n
    norm_a = float(np.linalg.norm(A, 2)) if A.size else 0.0
    for ell in range(n + 1):
        nxt = power @ A
        # forming A^k commits errors of order eps ||A||^k, so a power that
        # is pure rounding noise must not count as rank
        s = np.linalg.svd(nxt, compute_uv=False)
        floor = cfg.rank_tol_factor * n * EPS * norm_a ** (ell + 1)
        r_next = int(np.count_nonzero(s > max(rank_tolerance(s, nxt.shape, cfg), floor))) if s[0] > 0 else 0
        # ranks of powers never increase in exact arithmetic
        if r_next >= r_prev:
            return ell, r_prev, power
        power, r_prev = nxt, r_next
    return n, r_prev, power


def matrix_index(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> int:
    """Smallest ``l >= 0`` with ``rank(A^l) == rank(A^(l+1))``."""
    return _index_data(_square(A), cfg)[0]


def drazin(
    A,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    *,
    index: int | None = None,
    rank: int | None = None,
) -> np.ndarray:
    """Drazin inverse ``A^l (A^(2l+1))^+ A^l``.

    The pseudoinverse of ``A^(2l+1)`` is truncated at ``rank(A^l)``, which is
    its exact rank for any ``l >= ind(A)``. Callers that know the index or
    that rank (e.g. from an eigenvalue multiplicity) may pass them in.
    """
    M = _square(A)
    if index is None:
        ell, r_ell, power = _index_data(M, cfg)
    else:
        ell = int(index)
        power = np.linalg.matrix_power(M, ell)
        r_ell = None
    if rank is not None:
        r_ell = int(rank)
    elif r_ell is None:
        r_ell = _numerical_rank(power, cfg)
    big = power @ power @ M
    return power @ pinv(big, cfg, rank=r_ell) @ power


def schur_complex(A) -> SchurForm:
    """Complex Schur form, also for real input."""
    M = _square(A)
    try:
        T, U = spla.schur(M, output="complex")
    except np.linalg.LinAlgError as exc:
        raise SchurConvergenceError(str(exc)) from exc
    return SchurForm(U=U, T=np.triu(T))


def _swap_adjacent(T: np.ndarray, U: np.ndarray, k: int) -> None:
    """Swap diagonal entries k and k+1 of triangular T in place by a rotation."""
    t11, t22, t12 = T[k, k], T[k + 1, k + 1], T[k, k + 1]
    x0, x1 = t12, t22 - t11
    nrm = np.hypot(abs(x0), abs(x1))
    if nrm == 0.0:
        # equal eigenvalues and a zero coupling: the block is already swapped
        return
    c, s = x0 / nrm, x1 / nrm
    # first column is the eigenvector of t22
    Q = np.array([[c, -np.conj(s)], [s, np.conj(c)]])
    T[k : k + 2, :] = Q.conj().T @ T[k : k + 2, :]
    T[:, k : k + 2] = T[:, k : k + 2] @ Q
    U[:, k : k + 2] = U[:, k : k + 2] @ Q
    scale = max(abs(t11), abs(t22), abs(t12), np.finfo(float).tiny)
    if abs(T[k + 1, k]) > 100 * EPS * scale:
        raise OrdSchurSwapError(
            f"swap of diagonal entries {k} and {k + 1} failed "
            f"(eigenvalues {t11!r}, {t22!r})",
            pair=(t11, t22),
        )
    T[k + 1, k] = 0.0
    T[k, k], T[k + 1, k + 1] = t22, t11


def ordschur_select(F: SchurForm, keep) -> SchurForm:
    """Reorder a Schur form so the selected eigenvalues lead the diagonal.

    Selected entries keep their relative order, as do the unselected ones.
    """
    mask = [bool(v) for v in np.asarray(keep).ravel()]
    if len(mask) != F.n:
        raise ValueError(f"mask has length {len(mask)}, expected {F.n}")
    T = F.T.copy()
    U = F.U.copy()
    target = 0
    for j in range(F.n):
        if not mask[j]:
            continue
        for k in range(j - 1, target - 1, -1):
            _swap_adjacent(T, U, k)
            mask[k], mask[k + 1] = mask[k + 1], mask[k]
        target += 1
    return SchurForm(U=U, T=np.triu(T))


def matrix_sign(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Matrix sign function via an ordered Schur form.

    With the left half-plane eigenvalues moved to the leading block,
    ``sign(T) = [[-I, Y], [0, I]]`` where ``T11 Y - Y T22 = -2 T12``.
    """
    M = _square(A)
    n = M.shape[0]
    F = schur_complex(M)
    lam = F.eigenvalues
    guard = cfg.imag_axis_tol * max(1.0, fro(M))
    if np.any(np.abs(lam.real) <= guard):
        bad = lam[np.argmin(np.abs(lam.real))]
        raise ImaginaryAxisEigenvalue(
            f"sign(A) is undefined: eigenvalue {bad!r} is within {guard:.3g} of the imaginary axis"
        )
    F = ordschur_select(F, lam.real < 0)
    p = int(np.count_nonzero(lam.real < 0))
    T = F.T
    S = np.zeros((n, n), dtype=np.complex128)
    S[:p, :p] = -np.eye(p)
    S[p:, p:] = np.eye(n - p)
    if 0 < p < n:
        S[:p, p:] = spla.solve_sylvester(T[:p, :p], -T[p:, p:], -2.0 * T[:p, p:])
    return F.U @ S @ F.U.conj().T


def nullspace_basis(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical null space of `A`."""
    M = as_matrix(A)
    m, n = M.shape
    if M.size == 0:
        return np.eye(n, dtype=np.complex128)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    r = 0 if s[0] == 0 else int(np.count_nonzero(s > rank_tolerance(s, M.shape, cfg)))
    return Vh[r:].conj().T


def min_norm_solve(C, D, cfg: ToleranceConfig = DEFAULT_TOLERANCES):
    """Minimum-norm least-squares solution of ``C X = D``.

    Returns ``(X, consistent)`` where `consistent` tells whether the residual
    is within ``residual_tol * (||C|| ||X|| + ||D||)``.
    """
    C = as_matrix(C)
    D = as_matrix(D)
    if C.shape[0] != D.shape[0]:
        raise ValueError(f"row mismatch: C is {C.shape}, D is {D.shape}")
    X = pinv(C, cfg) @ D
    res = fro(C @ X - D)
    consistent = res <= cfg.residual_tol * (fro(C) * fro(X) + fro(D))
    return X, bool(consistent)


def kron(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def cluster_points(values, threshold: float) -> list[np.ndarray]:
    """Single-linkage clusters of complex points; returns index arrays.

    Two points end up in the same cluster when they are connected by a
    chain of points with consecutive distances ``<= threshold``.
    """
    z = np.asarray(values, dtype=np.complex128).ravel()
    if z.size == 0:
        return []
    if z.size == 1:
        return [np.array([0])]
    pts = np.column_stack([z.real, z.imag])
    labels = fcluster(linkage(pdist(pts), method="single"), t=threshold, criterion="distance")
    return [np.flatnonzero(labels == lab) for lab in np.unique(labels)]


def distinct_eigenvalues(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> list[tuple[complex, int]]:
    """Distinct eigenvalues with algebraic multiplicities.

    Eigenvalues are read off the Schur diagonal and clustered; each cluster
    is represented by its mean. The list is ordered by magnitude, then by
    phase.
    """
    M = _square(A)
    lam = schur_complex(M).eigenvalues
    threshold = cfg.eig_cluster_tol * max(1.0, fro(M))
    out = [(complex(lam[idx].mean()), int(idx.size)) for idx in cluster_points(lam, threshold)]
    out.sort(key=lambda item: (abs(item[0]), np.angle(item[0])))
    return out
