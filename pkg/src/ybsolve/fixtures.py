"""Test matrices: exact small examples plus seeded generators."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
import scipy.linalg as spla

from .errors import BadRank, BadStructure, UnknownFixture

__all__ = [
    "TestMatrix",
    "FIXTURE_IDS",
    "fixture",
    "example1_projectors",
    "example2_similarity",
    "random_singular",
    "random_nondiagonalizable",
    "standard_corpus",
]


@dataclass(frozen=True)
class TestMatrix:
    __test__ = False  # keep pytest from collecting this class

    id: str
    A: np.ndarray
    known_rank: int | None = None
    known_index: int | None = None
    known_spectrum: list[complex] | None = None
    notes: str = ""
    diagonalizable: bool | None = None
    # eigenvalues that cannot be computed accurately (large Jordan blocks)
    ill_conditioned: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def well_conditioned_diagonalizable(self) -> bool:
        return bool(self.diagonalizable) and not self.ill_conditioned


def _q(rows) -> np.ndarray:
    return np.array([[float(Fraction(v)) for v in row] for row in rows], dtype=np.complex128)


# The eight listed projectors, the B identities and the sign-function
# results of this example all hold for this matrix. The printed source
# matrix has a 1 in position (3, 2), with which none of the nontrivial
# listed projectors commute; it is kept as ``example1_printed``.
_EXAMPLE1 = [[1, 1, 1], [0, 1, 0], [1, 0, 1]]
_EXAMPLE1_PRINTED = [[1, 1, 1], [0, 1, 0], [1, 1, 1]]
_EXAMPLE2 = [[1, 1, 1], [1, 1, 1], [1, 1, 1]]
_EXAMPLE2_S = [[1, 1, 1], [1, -1, 1], [1, 0, -2]]
_NILPOTENT4 = [[-2, -7, -8, -19], [0, -6, -6, -12], [0, 3, 2, 7], [1, 2, 3, 6]]


def example1_projectors() -> list[np.ndarray]:
    """The eight projectors commuting with ``example1``, P1 ... P8 in order."""
    I = np.eye(3, dtype=np.complex128)
    P1 = np.zeros((3, 3), dtype=np.complex128)
    P2 = _q([["1/2", "1/2", "1/2"], [0, 1, 0], ["1/2", "-1/2", "1/2"]])
    P3 = _q([["1/2", "1/2", "1/2"], [0, 0, 0], ["1/2", "1/2", "1/2"]])
    P4 = _q([[0, 0, 0], [0, 1, 0], [0, -1, 0]])
    return [P1, P2, P3, P4, I, I - P2, I - P3, I - P4]


def example2_similarity() -> tuple[np.ndarray, np.ndarray]:
    """``(S, D)`` with ``example2 = S D S^-1``, ``D = diag(3, 0, 0)``."""
    return _q(_EXAMPLE2_S), np.diag([3.0, 0.0, 0.0]).astype(np.complex128)


FIXTURE_IDS = ("example1", "example1_printed", "example2", "nilpotent4", "example1_projectors")


def fixture(id: str):
    """Exact fixture matrices by id.

    ``example1_projectors`` returns the list of eight projectors instead of
    a :class:`TestMatrix`.
    """
    if id == "example1":
        return TestMatrix(
            id="example1",
            A=_q(_EXAMPLE1),
            known_rank=2,
            known_index=1,
            known_spectrum=[0, 1, 2],
            notes="diagonalizable singular 3x3 with spectrum {0, 1, 2}",
            diagonalizable=True,
        )
    if id == "example1_printed":
        return TestMatrix(
            id="example1_printed",
            A=_q(_EXAMPLE1_PRINTED),
            known_rank=2,
            known_index=1,
            known_spectrum=[0, 1, 2],
            notes="example1 as printed; does not commute with the listed projectors",
            diagonalizable=True,
        )
    if id == "example2":
        return TestMatrix(
            id="example2",
            A=_q(_EXAMPLE2),
            known_rank=1,
            known_index=1,
            known_spectrum=[3, 0, 0],
            notes="3x3 all-ones matrix, S diag(3,0,0) S^-1",
            diagonalizable=True,
        )
    if id == "nilpotent4":
        return TestMatrix(
            id="nilpotent4",
            A=_q(_NILPOTENT4),
            known_rank=3,
            known_index=4,
            known_spectrum=[0, 0, 0, 0],
            notes="nilpotent with Jordan form J4(0); computed eigenvalues are ~1e-4, not ~1e-16",
            diagonalizable=False,
            ill_conditioned=True,
        )
    if id == "example1_projectors":
        return example1_projectors()
    raise UnknownFixture(id)


def _complex_normal(rng, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_singular(n: int, r: int, seed) -> TestMatrix:
    """``A = F G`` with seeded complex Gaussian ``F`` (n x r) and ``G`` (r x n)."""
    if not 1 <= r < n:
        raise BadRank(f"need 1 <= r < n, got n={n}, r={r}")
    rng = np.random.default_rng(seed)
    F = _complex_normal(rng, (n, r))
    G = _complex_normal(rng, (r, n))
    return TestMatrix(
        id=f"rand_n{n}_r{r}_s{seed}",
        A=F @ G,
        known_rank=r,
        known_index=1,
        notes="random low-rank product",
        diagonalizable=True,
    )


def _well_conditioned(rng, n: int, max_cond: float = 100.0, tries: int = 1000) -> np.ndarray:
    for _ in range(tries):
        S = np.eye(n) + 0.5 * rng.standard_normal((n, n)) / np.sqrt(n)
        if np.linalg.cond(S) <= max_cond:
            return S
    raise RuntimeError("could not draw a well-conditioned similarity")


def random_nondiagonalizable(blocks, seed, *, id: str | None = None) -> TestMatrix:
    """``A = S J S^-1`` for a Jordan matrix `J` given as ``(size, eigenvalue)`` blocks.

    `S` is a seeded real matrix with condition number at most 100. At least
    one block must have size >= 2 and at least one block must belong to the
    eigenvalue 0, so that `A` is singular and not diagonalizable.
    """
    blocks = [(int(k), complex(lam)) for k, lam in blocks]
    if not blocks or any(k < 1 for k, _ in blocks):
        raise BadStructure(f"invalid blocks {blocks}")
    if not any(k >= 2 for k, _ in blocks):
        raise BadStructure("need a Jordan block of size >= 2")
    zero_blocks = [k for k, lam in blocks if lam == 0]
    if not zero_blocks:
        raise BadStructure("need a block for the eigenvalue 0")
    J = spla.block_diag(*[lam * np.eye(k) + np.eye(k, k=1) for k, lam in blocks]).astype(np.complex128)
    n = J.shape[0]
    rng = np.random.default_rng(seed)
    S = _well_conditioned(rng, n)
    A = np.linalg.solve(S.T, (S @ J).T).T
    if np.all(J.imag == 0):
        A = A.real.astype(np.complex128)
    spectrum = [lam for k, lam in blocks for _ in range(k)]
    largest = max(k for k, _ in blocks)
    return TestMatrix(
        id=id or "jordan_" + "_".join(f"{k}x{lam.real:g}" for k, lam in blocks) + f"_s{seed}",
        A=A,
        known_rank=n - len(zero_blocks),
        known_index=max(zero_blocks),
        known_spectrum=spectrum,
        notes=f"similar to Jordan matrix with blocks {[(k, lam.real) for k, lam in blocks]}",
        diagonalizable=False,
        ill_conditioned=largest >= 3,
        meta={"blocks": blocks, "S": S, "J": J},
    )


_RANDOM_SHAPES = [(6, 3), (10, 7), (14, 10), (19, 12), (20, 13)]

_JORDAN_SHAPES = [
    [(2, 0), (1, 1), (1, 2)],
    [(2, 1), (1, 0), (2, -2)],
    [(3, 0), (2, 1.5), (1, -1)],
    [(2, 0), (2, 0), (3, 2), (1, -1)],
    [(4, 0), (3, 1), (3, -0.5)],
    [(2, 0), (1, 0), (2, 3), (2, 1), (5, -2)],
    [(3, 0), (2, 0.5), (2, -1.5), (4, 2.5), (1, 0), (3, 1)],
]


def standard_corpus(seed: int = 0) -> list[TestMatrix]:
    """Fifteen singular test matrices of orders 3 to 20.

    Three exact fixtures, five random low-rank products (including 19x19 of
    rank 12 and 20x20 of rank 13) and seven non-diagonalizable matrices.
    """
    seeds = np.random.SeedSequence(seed).generate_state(len(_RANDOM_SHAPES) + len(_JORDAN_SHAPES))
    out = [fixture("example1"), fixture("example2"), fixture("nilpotent4")]
    for k, (n, r) in enumerate(_RANDOM_SHAPES):
        tm = random_singular(n, r, int(seeds[k]))
        out.append(_renamed(tm, f"M{len(out) + 1:02d}_rand{n}r{r}"))
    for k, blocks in enumerate(_JORDAN_SHAPES):
        tm = random_nondiagonalizable(blocks, int(seeds[len(_RANDOM_SHAPES) + k]))
        out.append(_renamed(tm, f"M{len(out) + 1:02d}_jordan{tm.n}"))
    out[0] = _renamed(out[0], "M01_example1")
    out[1] = _renamed(out[1], "M02_example2")
    out[2] = _renamed(out[2], "M03_nilpotent4")
    return out


def _renamed(tm: TestMatrix, new_id: str) -> TestMatrix:
    return replace(tm, id=new_id)
