"""Explicit solution formulas for the Yang-Baxter-like equation AXA = XAX.

The central object is :class:`SolutionFamily`, an affine map
``Y -> base + L Y R`` whose every image solves the equation. Families come
from a matrix ``B`` making the pair ``AX = B, XB = BA`` consistent, which in
turn comes from a projector commuting with ``A``. The remaining routines
cover the index-based formulas, similarity transport, and the algorithm
built on an ordered complex Schur form.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    BlockEquationViolated,
    InconsistentB,
    InvalidProjector,
    NonsingularInput,
    NullspaceTooSmall,
    NumericalWarning,
    SingularS,
    SplitMismatch,
)
from .linalg import (
    DEFAULT_TOLERANCES,
    SchurForm,
    ToleranceConfig,
    as_matrix,
    drazin,
    fro,
    matrix_index,
    min_norm_solve,
    nullspace_basis,
    ordschur_select,
    pinv,
    rank,
    rank_tolerance,
    schur_complex,
)
from .projectors import ProjectorCertificate
from .verification import is_small_residual, solution_scale

__all__ = [
    "BCandidate",
    "SolutionFamily",
    "SchurBlockData",
    "random_parameter",
    "check_B_consistency",
    "family_from_B",
    "b_from_projector",
    "commuting_family_zero",
    "commuting_family_sq",
    "index_solution_left",
    "index_solution_right",
    "similarity_transport",
    "block_diag_compose",
    "schur_block_data",
    "schur_special_solutions",
    "schur_family_solve",
    "splitting_roundtrip_check",
]


def random_parameter(n: int, seed=None, m: int | None = None) -> np.ndarray:
    """Seeded standard-normal complex ``n x m`` matrix with unit Frobenius norm."""
    rng = np.random.default_rng(seed)
    m = n if m is None else m
    Y = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    return Y / np.linalg.norm(Y)


@dataclass(frozen=True)
class BCandidate:
    """A matrix B with its residuals in the three consistency conditions.

    r1 = ||ABA - B^2||, r2 = ||A A^+ B - B||, r3 = ||B A B^+ B - BA||.
    """

    B: np.ndarray
    r1: float
    r2: float
    r3: float
    provenance: str
    scale: float
    tol: float

    @property
    def consistent(self) -> bool:
        return max(self.r1, self.r2, self.r3) <= self.tol * self.scale


def _pinv_B(A: np.ndarray, B: np.ndarray, cfg: ToleranceConfig) -> np.ndarray:
    """Pseudoinverse of a candidate ``B ~ A^2 P``.

    B inherits the error of the projector it was built from, which is far
    above the SVD default threshold. Singular values below
    ``residual_tol * ||A||_2^2`` cannot be told apart from zero at the
    consistency tolerance, so they are truncated.
    """
    if B.size == 0:
        return pinv(B, cfg)
    s = np.linalg.svd(B, compute_uv=False)
    floor = cfg.residual_tol * float(np.linalg.norm(A, 2)) ** 2
    k = int(np.count_nonzero(s > max(rank_tolerance(s, B.shape, cfg), floor))) if s[0] > 0 else 0
    return pinv(B, cfg, rank=k)


def check_B_consistency(A, B, cfg: ToleranceConfig = DEFAULT_TOLERANCES, provenance: str = "user") -> BCandidate:
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"A {A.shape} and B {B.shape} must be square of the same order")
    Ap = pinv(A, cfg)
    Bp = _pinv_B(A, B, cfg)
    return BCandidate(
        B=B,
        r1=fro(A @ B @ A - B @ B),
        r2=fro(A @ Ap @ B - B),
        r3=fro(B @ A @ Bp @ B - B @ A),
        provenance=provenance,
        scale=max(1.0, fro(A)) ** 3,
        tol=cfg.residual_tol,
    )


@dataclass(frozen=True)
class SolutionFamily:
    """Affine family ``X = base + left @ Y @ right`` of solutions."""

    base: np.ndarray
    left: np.ndarray
    right: np.ndarray
    provenance: str

    @property
    def n(self) -> int:
        return self.base.shape[0]

    def sample(self, Y=None, seed=None) -> np.ndarray:
        """Evaluate the family at `Y` (default: a seeded unit-norm random matrix)."""
        if Y is None:
            Y = random_parameter(self.n, seed)
        return self.base + self.left @ as_matrix(Y) @ self.right


def family_from_B(A, B, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SolutionFamily:
    """``X = A^+ B + (I - A^+ A) A B B^+ + (I - A^+ A) Y (I - B B^+)``.

    `B` may be a matrix or a :class:`BCandidate`; it must be consistent.
    """
    A = as_matrix(A)
    cand = B if isinstance(B, BCandidate) else check_B_consistency(A, B, cfg)
    if not cand.consistent:
        raise InconsistentB(
            f"B ({cand.provenance}) violates the consistency conditions: "
            f"residuals {cand.r1:.3g}, {cand.r2:.3g}, {cand.r3:.3g}"
        )
    B = cand.B
    n = A.shape[0]
    I = np.eye(n)
    Ap = pinv(A, cfg)
    BBp = B @ _pinv_B(A, B, cfg)
    L = I - Ap @ A
    return SolutionFamily(
        base=Ap @ B + L @ A @ BBp,
        left=L,
        right=I - BBp,
        provenance=cand.provenance,
    )


def b_from_projector(
    A, P: ProjectorCertificate, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> tuple[BCandidate, BCandidate]:
    """The pair ``(A^2 P, A^2 (I - P))`` for a projector commuting with `A`."""
    A = as_matrix(A)
    if not P.valid:
        raise InvalidProjector(
            f"projector ({P.provenance}) residuals {P.idempotency_residual:.3g}, "
            f"{P.commutation_residual:.3g} exceed tolerance"
        )
    A2 = A @ A
    n = A.shape[0]
    label = P.provenance
    return (
        check_B_consistency(A, A2 @ P.P, cfg, provenance=label),
        check_B_consistency(A, A2 @ (np.eye(n) - P.P), cfg, provenance=label),
    )


def commuting_family_zero(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SolutionFamily:
    """Solutions ``(I - A^+ A) Y (I - A A^+)``, all commuting with A (AX = XA = 0)."""
    A = as_matrix(A)
    n = A.shape[0]
    I = np.eye(n)
    Ap = pinv(A, cfg)
    return SolutionFamily(
        base=np.zeros((n, n), dtype=np.complex128),
        left=I - Ap @ A,
        right=I - A @ Ap,
        provenance="commuting_zero",
    )


def commuting_family_sq(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SolutionFamily:
    """Solutions ``A^+ A^2 + (I - A^+ A) A^2 A^+ + (I - A^+ A) Y (I - A A^+)``.

    Every member satisfies ``AX = XA = A^2``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    I = np.eye(n)
    Ap = pinv(A, cfg)
    L = I - Ap @ A
    A2 = A @ A
    return SolutionFamily(
        base=Ap @ A2 + L @ A2 @ Ap,
        left=L,
        right=I - A @ Ap,
        provenance="commuting_sq",
    )


def _singular_index(A: np.ndarray, cfg: ToleranceConfig) -> int:
    ell = matrix_index(A, cfg)
    if ell == 0:
        raise NonsingularInput("the index-based formulas need a singular matrix")
    return ell


def index_solution_left(A, Z=None, V=None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """``X = A^(l-1) (AY - I) V`` with ``Y = (A^(l+1))^+ A^l (I - AZ) + Z``.

    ``l = ind(A)``. `Y` solves ``A^(l+1) Y = A^l``, which makes ``AX = 0``.
    `Z` and `V` default to the identity.
    """
    A = as_matrix(A)
    n = A.shape[0]
    I = np.eye(n)
    Z = I if Z is None else as_matrix(Z)
    V = I if V is None else as_matrix(V)
    ell = _singular_index(A, cfg)
    Al = np.linalg.matrix_power(A, ell)
    Al1 = Al @ A
    Y = pinv(Al1, cfg) @ Al @ (I - A @ Z) + Z
    gap = fro(Al1 @ Y - Al)
    if gap > cfg.residual_tol * (fro(Al1) * fro(Y) + fro(Al)):
        warnings.warn(f"A^(l+1) Y = A^l holds only to {gap:.3g}", NumericalWarning, stacklevel=2)
    return np.linalg.matrix_power(A, ell - 1) @ (A @ Y - I) @ V


def index_solution_right(A, Z=None, V=None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """``X = V (YA - I) A^(l-1)`` with ``Y = (I - ZA) A^l (A^(l+1))^+ + Z``.

    Mirror image of :func:`index_solution_left`; here ``XA = 0``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    I = np.eye(n)
    Z = I if Z is None else as_matrix(Z)
    V = I if V is None else as_matrix(V)
    ell = _singular_index(A, cfg)
    Al = np.linalg.matrix_power(A, ell)
    Al1 = Al @ A
    Y = (I - Z @ A) @ Al @ pinv(Al1, cfg) + Z
    gap = fro(Y @ Al1 - Al)
    if gap > cfg.residual_tol * (fro(Al1) * fro(Y) + fro(Al)):
        warnings.warn(f"Y A^(l+1) = A^l holds only to {gap:.3g}", NumericalWarning, stacklevel=2)
    return V @ (Y @ A - I) @ np.linalg.matrix_power(A, ell - 1)


def similarity_transport(S, Y, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """``X = S Y S^-1``: maps a solution for ``S^-1 A S`` to one for `A`."""
    S = as_matrix(S)
    Y = as_matrix(Y)
    n = S.shape[0]
    if S.shape != (n, n) or Y.shape != (n, n):
        raise ValueError(f"S {S.shape} and Y {Y.shape} must be square of the same order")
    if rank(S, cfg) < n:
        raise SingularS("the similarity matrix is singular")
    # X S = S Y  <=>  S^T X^T = (S Y)^T
    return np.linalg.solve(S.T, (S @ Y).T).T


def block_diag_compose(S, J1, J0, Y1, Y4, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """``X = S diag(Y1, Y4) S^-1`` for ``A = S diag(J1, J0) S^-1``.

    `J1` is the nonsingular part and `J0` the nilpotent part of a
    similarity decomposition supplied by the caller. `Y1` and `Y4` must
    solve the equation for `J1` and `J0` respectively; this is checked,
    not solved for.
    """
    J1, J0, Y1, Y4 = (as_matrix(M) for M in (J1, J0, Y1, Y4))
    for name, J, Y in (("Y1", J1, Y1), ("Y4", J0, Y4)):
        if J.shape != Y.shape:
            raise ValueError(f"{name} has shape {Y.shape}, expected {J.shape}")
        if J.size and not is_small_residual(J, Y, cfg):
            raise BlockEquationViolated(f"{name} does not solve its block equation")
    p, q = J1.shape[0], J0.shape[0]
    Y = np.zeros((p + q, p + q), dtype=np.complex128)
    Y[:p, :p] = Y1
    Y[p:, p:] = Y4
    return similarity_transport(S, Y, cfg)


@dataclass(frozen=True)
class SchurBlockData:
    """Reordered Schur form ``A = U [[B1, B2], [O1, T22]] U*`` with the
    (numerically) zero eigenvalues in the trailing block.

    `degenerate` is set when the magnitudes kept in `B1` are not clearly
    separated from the discarded ones, so that the split into "zero" and
    "nonzero" eigenvalues is not trustworthy.
    """

    form: SchurForm
    s: int
    epsilon: float
    degenerate: bool
    gap_ratio: float

    @property
    def B1(self) -> np.ndarray:
        return self.form.T[: self.s, : self.s]

    @property
    def B2(self) -> np.ndarray:
        return self.form.T[: self.s, self.s :]

    @property
    def O1(self) -> np.ndarray:
        return self.form.T[self.s :, : self.s]

    @property
    def tail(self) -> np.ndarray:
        return self.form.T[self.s :, self.s :]


def schur_block_data(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES, *, min_gap: float = 10.0) -> SchurBlockData:
    """Split the complex Schur form of a singular `A` at its rank.

    With ``r = rank(A)``, ``epsilon`` is the ``(n - r)``-th smallest diagonal
    magnitude of ``T`` and the eigenvalues larger than ``epsilon`` are moved
    to the leading block. When ties leave a block of the wrong size, epsilon
    is retried once as the midpoint to the next magnitude; a second failure
    raises :class:`SplitMismatch`. The split is flagged `degenerate` (with a
    warning) when the smallest kept magnitude is within a factor `min_gap`
    of the largest discarded one.
    """
    A = as_matrix(A)
    n = A.shape[0]
    r = rank(A, cfg)
    if r == n:
        raise NonsingularInput("the Schur-block split needs a singular matrix")
    F = schur_complex(A)
    mags = np.abs(F.eigenvalues)
    ordered = np.sort(mags)
    epsilon = float(ordered[n - r - 1])
    keep = mags > epsilon
    if np.count_nonzero(keep) != r:
        epsilon = float((ordered[n - r - 1] + ordered[n - r]) / 2) if r > 0 else epsilon
        keep = mags > epsilon
        if np.count_nonzero(keep) != r:
            raise SplitMismatch(
                f"cannot separate {n - r} zero eigenvalues from {r} nonzero ones: "
                f"magnitudes {ordered[n - r - 1]:.3g} and {ordered[n - r]:.3g} tie"
            )
    if r > 0 and n - r > 0:
        largest_dropped = float(mags[~keep].max())
        smallest_kept = float(mags[keep].min())
        gap_ratio = smallest_kept / largest_dropped if largest_dropped > 0 else np.inf
    else:
        gap_ratio = np.inf
    degenerate = bool(gap_ratio <= min_gap)
    if degenerate:
        warnings.warn(
            f"degenerate zero/nonzero split: kept and discarded eigenvalue magnitudes "
            f"differ by a factor {gap_ratio:.3g} (epsilon = {epsilon:.3g})",
            NumericalWarning,
            stacklevel=2,
        )
    return SchurBlockData(
        form=ordschur_select(F, keep),
        s=r,
        epsilon=epsilon,
        degenerate=degenerate,
        gap_ratio=float(gap_ratio),
    )


def _recompose(data: SchurBlockData, Z1, Z2, Z4, O1=None) -> np.ndarray:
    s = data.s
    n = data.form.n
    Z = np.zeros((n, n), dtype=np.complex128)
    Z[:s, :s] = Z1
    Z[:s, s:] = Z2
    Z[s:, s:] = Z4
    if O1 is not None:
        Z[s:, :s] = O1
    U = data.form.U
    return U @ Z @ U.conj().T


def schur_special_solutions(
    A,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    seed=None,
    data: SchurBlockData | None = None,
    *,
    Z2=None,
    Z4=None,
) -> dict[str, np.ndarray]:
    """Closed-form solutions built on the Schur split, keyed "i" to "iv".

    (i)   Z1 = 0, Z2 and Z4 arbitrary (seeded random unless given);
    (ii)  Z1 = B1, Z2 = B2, Z4 = 0;
    (iii) Z1 = B1^2 B1^D (commutes with B1), Z2 = B2, Z4 = 0;
    (iv)  Z1 = B1^2 B1^D, Z2 = B1 B1^D B2, Z4 = 0, only when B1 is singular.
    """
    data = schur_block_data(A, cfg) if data is None else data
    A = as_matrix(A)
    s, n = data.s, data.form.n
    B1, B2 = data.B1, data.B2
    rng = np.random.default_rng(seed)
    if Z2 is None:
        Z2 = rng.standard_normal((s, n - s)) + 1j * rng.standard_normal((s, n - s))
        Z2 = Z2 / max(1.0, fro(Z2))
    if Z4 is None:
        Z4 = rng.standard_normal((n - s, n - s)) + 1j * rng.standard_normal((n - s, n - s))
        Z4 = Z4 / max(1.0, fro(Z4))
    zero22 = np.zeros((n - s, n - s))
    B1D = drazin(B1, cfg) if s else B1
    Z1c = B1 @ B1 @ B1D
    out = {
        "i": _recompose(data, np.zeros((s, s)), as_matrix(Z2), as_matrix(Z4)),
        "ii": _recompose(data, B1, B2, zero22),
        "iii": _recompose(data, Z1c, B2, zero22),
    }
    if s and rank(B1, cfg) < s:
        out["iv"] = _recompose(data, Z1c, B1 @ B1D @ B2, zero22)
    for key, X in out.items():
        if not is_small_residual(A, X, cfg):
            warnings.warn(f"Schur solution ({key}) has a large residual", NumericalWarning, stacklevel=2)
    return out


def schur_family_solve(
    A,
    seed=None,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    *,
    delta=None,
    data: SchurBlockData | None = None,
) -> np.ndarray:
    """One member of the Schur-based family with ``Z1 = B1``.

    Solves ``[B1^2  B1 B2] [Z2; Z4] = B1^2 B2`` by its minimum-norm solution
    plus ``N[:, :n-r] diag(delta)`` where `N` spans the null space of the
    coefficient matrix; `delta` defaults to seeded standard normals.
    """
    data = schur_block_data(A, cfg) if data is None else data
    r, n = data.s, data.form.n
    B1, B2 = data.B1, data.B2
    C = np.hstack([B1 @ B1, B1 @ B2])
    D = B1 @ B1 @ B2
    Xp, consistent = min_norm_solve(C, D, cfg)
    if not consistent:
        warnings.warn("the block system is inconsistent to working precision", NumericalWarning, stacklevel=2)
    N = nullspace_basis(C, cfg)
    if N.shape[1] < n - r:
        raise NullspaceTooSmall(f"null space has {N.shape[1]} columns, need {n - r}")
    if delta is None:
        delta = np.random.default_rng(seed).standard_normal(n - r)
    delta = np.asarray(delta).ravel()
    Z = Xp + N[:, : n - r] @ np.diag(delta)
    return _recompose(data, B1, Z[:r], Z[r:], O1=data.O1)


def splitting_roundtrip_check(A, X, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """True iff `X` solves the equation and ``B = AX`` satisfies ``XB = BA``."""
    A = as_matrix(A)
    X = as_matrix(X)
    B = A @ X
    bound = cfg.residual_tol * solution_scale(A, X)
    return is_small_residual(A, X, cfg) and fro(X @ B - B @ A) <= bound
