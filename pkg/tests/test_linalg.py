import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import EXAMPLE1, EXAMPLE2, NILPOTENT4, fro, rand_complex
from ybsolve.errors import ImaginaryAxisEigenvalue, NonFiniteMatrix
from ybsolve.linalg import (
    SchurForm,
    ToleranceConfig,
    distinct_eigenvalues,
    drazin,
    kron,
    matrix_index,
    matrix_sign,
    min_norm_solve,
    nullspace_basis,
    ordschur_select,
    pinv,
    rank,
    schur_complex,
)

ONES3 = np.ones((3, 3))


def random_rank_deficient(seed, n, r):
    rng = np.random.default_rng(seed)
    return rand_complex(rng, (n, r)) @ rand_complex(rng, (r, n))


# ---------------------------------------------------------------- config

def test_tolerance_config_defaults_nonnegative():
    cfg = ToleranceConfig()
    assert min(cfg.rank_tol_factor, cfg.eig_cluster_tol, cfg.imag_axis_tol, cfg.residual_tol, cfg.projector_tol) >= 0


@pytest.mark.parametrize("field", ["rank_tol_factor", "eig_cluster_tol", "imag_axis_tol", "residual_tol", "projector_tol"])
def test_tolerance_config_rejects_negative(field):
    with pytest.raises(ValueError):
        ToleranceConfig(**{field: -1.0})


def test_non_finite_input_rejected():
    with pytest.raises(NonFiniteMatrix):
        rank(np.array([[1.0, np.nan], [0.0, 1.0]]))


# ---------------------------------------------------------------- rank

def test_rank_examples():
    assert rank(np.zeros((3, 3))) == 0
    assert rank(np.eye(4)) == 4
    assert rank(NILPOTENT4) == 3


@pytest.mark.parametrize("seed", range(5))
def test_rank_matches_construction(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 12))
    r = int(rng.integers(1, n))
    assert rank(random_rank_deficient(seed, n, r)) == r


# ---------------------------------------------------------------- pinv

def test_pinv_examples():
    assert np.array_equal(pinv(np.zeros((3, 3))), np.zeros((3, 3)))
    assert np.allclose(pinv(np.eye(5)), np.eye(5), atol=1e-15)


def test_pinv_all_ones_penrose_oracle():
    X = ONES3 / 9
    A = ONES3
    # the candidate satisfies the four conditions by direct multiplication
    assert np.allclose(A @ X @ A, A)
    assert np.allclose(X @ A @ X, X)
    assert np.allclose((A @ X).conj().T, A @ X)
    assert np.allclose((X @ A).conj().T, X @ A)
    assert fro(pinv(A) - X) <= 1e-14


def test_pinv_rectangular_matches_numpy():
    rng = np.random.default_rng(3)
    A = rand_complex(rng, (5, 3)) @ rand_complex(rng, (3, 7))
    assert fro(pinv(A) - np.linalg.pinv(A, rcond=1e-10)) <= 1e-10 * fro(np.linalg.pinv(A))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 20), data=st.data())
def test_penrose_suite(seed, n, data):
    r = data.draw(st.integers(1, n))
    A = random_rank_deficient(seed, n, r)
    X = pinv(A)
    nA, nX = fro(A), fro(X)
    assert fro(A @ X @ A - A) <= 1e-10 * nA
    assert fro(X @ A @ X - X) <= 1e-10 * nX
    assert fro((A @ X).conj().T - A @ X) <= 1e-10 * nA * nX
    assert fro((X @ A).conj().T - X @ A) <= 1e-10 * nA * nX


# ---------------------------------------------------------------- index

def test_matrix_index_examples():
    assert matrix_index(np.eye(3)) == 0
    assert matrix_index(np.diag([1.0, 0.0])) == 1
    assert matrix_index(NILPOTENT4) == 4


@pytest.mark.parametrize("k", range(1, 6))
def test_matrix_index_of_shift_matrix(k):
    J = np.diag(np.ones(k - 1), 1) if k > 1 else np.zeros((1, 1))
    A = np.block([[np.eye(2) * 3, np.zeros((2, k))], [np.zeros((k, 2)), J]])
    assert matrix_index(A) == k


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12), data=st.data())
def test_matrix_index_bounds(seed, n, data):
    r = data.draw(st.integers(0, n))
    rng = np.random.default_rng(seed)
    A = rand_complex(rng, (n, n)) if r == n else (random_rank_deficient(seed, n, r) if r else np.zeros((n, n)))
    ell = matrix_index(A)
    assert 0 <= ell <= n
    assert (ell == 0) == (rank(A) == n)


# ---------------------------------------------------------------- drazin

def test_drazin_identity_and_nilpotent():
    assert fro(drazin(np.eye(4)) - np.eye(4)) <= 1e-14
    assert fro(drazin(NILPOTENT4)) <= 1e-10


def test_drazin_all_ones_eigen_oracle():
    w, V = np.linalg.eig(ONES3)
    winv = np.array([1 / x if abs(x) > 1e-8 else 0.0 for x in w])
    oracle = V @ np.diag(winv) @ np.linalg.inv(V)
    assert np.allclose(oracle, ONES3 / 9, atol=1e-12)
    assert fro(drazin(ONES3) - oracle) <= 1e-12


def test_drazin_eigen_oracle_on_jordan_matrix():
    # S diag(J2(2), J2(0), 0) S^-1: the Drazin inverse inverts the J2(2) block
    rng = np.random.default_rng(8)
    J = np.zeros((5, 5), dtype=complex)
    J[0, 0] = J[1, 1] = 2
    J[0, 1] = 1
    J[2, 3] = 1
    S = np.eye(5) + 0.3 * rand_complex(rng, (5, 5)) / 5
    A = S @ J @ np.linalg.inv(S)
    JD = np.zeros_like(J)
    JD[:2, :2] = np.linalg.inv(J[:2, :2])
    oracle = S @ JD @ np.linalg.inv(S)
    assert fro(drazin(A) - oracle) <= 1e-10 * fro(oracle)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 20), data=st.data())
def test_drazin_suite(seed, n, data):
    r = data.draw(st.integers(1, n - 1))
    A = random_rank_deficient(seed, n, r)
    D = drazin(A)
    ell = matrix_index(A)
    Al = np.linalg.matrix_power(A, ell)
    scale = max(1.0, fro(D)) * max(1.0, fro(A)) ** (ell + 1)
    assert fro(D @ A @ D - D) <= 1e-8 * max(1.0, fro(D)) ** 2 * max(1.0, fro(A))
    assert fro(A @ D - D @ A) <= 1e-8 * fro(A) * max(1.0, fro(D))
    assert fro(Al @ A @ D - Al) <= 1e-8 * scale


# ---------------------------------------------------------------- schur

def test_schur_of_diagonal():
    F = schur_complex(np.diag([2.0, 1.0]))
    assert np.allclose(np.abs(F.U), np.eye(2))
    assert np.allclose(np.diag(F.T), [2, 1])


def test_schur_example1_spectrum():
    F = schur_complex(EXAMPLE1)
    assert np.allclose(np.sort(F.eigenvalues.real), [0, 1, 2], atol=1e-12)
    assert np.allclose(F.eigenvalues.imag, 0, atol=1e-12)


def test_schur_random_reconstruction():
    A = np.random.default_rng(42).standard_normal((8, 8))
    F = schur_complex(A)
    assert fro(F.reconstruct() - A) <= 1e-12 * fro(A)
    assert fro(F.U @ F.U.conj().T - np.eye(8)) <= 1e-12 * 8
    assert fro(np.tril(F.T, -1)) <= 1e-12 * fro(A)


def test_ordschur_noop():
    F = schur_complex(EXAMPLE1)
    G = ordschur_select(F, np.ones(3, dtype=bool))
    assert np.array_equal(G.T, F.T) and np.array_equal(G.U, F.U)


def test_ordschur_two_by_two_swap():
    F = SchurForm(U=np.eye(2, dtype=complex), T=np.diag([0.0, 5.0]).astype(complex))
    G = ordschur_select(F, [False, True])
    assert np.allclose(G.T, np.diag([5, 0]), atol=1e-14)


def test_ordschur_example1_keeps_nonzero_block():
    F = schur_complex(EXAMPLE1)
    G = ordschur_select(F, np.abs(F.eigenvalues) > 1e-8)
    top = np.sort(np.diag(G.T)[:2].real)
    assert np.allclose(top, [1, 2], atol=1e-12)
    assert abs(G.T[2, 2]) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 14), data=st.data())
def test_ordschur_invariants(seed, n, data):
    mask = np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)))
    A = rand_complex(np.random.default_rng(seed), (n, n))
    F = schur_complex(A)
    G = ordschur_select(F, mask)
    k = int(mask.sum())
    scale = fro(A)
    assert fro(G.U @ G.U.conj().T - np.eye(n)) <= 1e-12 * n
    assert fro(G.reconstruct() - A) <= 1e-12 * scale
    assert fro(np.tril(G.T, -1)) <= 1e-12 * scale
    # selected eigenvalues lead, multiset preserved
    before = F.eigenvalues
    after = G.eigenvalues

    def matched(x, y):
        y = list(y)
        for v in x:
            j = int(np.argmin(np.abs(np.array(y) - v)))
            if abs(y[j] - v) > 1e-10 * scale:
                return False
            y.pop(j)
        return True

    assert matched(before[mask], after[:k])
    assert matched(before[~mask], after[k:])


# ---------------------------------------------------------------- sign

def test_matrix_sign_examples():
    assert fro(matrix_sign(np.eye(3)) - np.eye(3)) <= 1e-14
    assert fro(matrix_sign(np.diag([-2.0, 3.0])) - np.diag([-1, 1])) <= 1e-14
    assert fro(matrix_sign(EXAMPLE1 + 0.5 * np.eye(3)) - np.eye(3)) <= 1e-10


def test_matrix_sign_rejects_imaginary_axis():
    with pytest.raises(ImaginaryAxisEigenvalue):
        matrix_sign(EXAMPLE1)
    with pytest.raises(ImaginaryAxisEigenvalue):
        matrix_sign(np.array([[0, 1], [-1, 0]], dtype=float))


def test_matrix_sign_eigen_oracle():
    rng = np.random.default_rng(5)
    S = np.eye(4) + 0.3 * rand_complex(rng, (4, 4))
    lam = np.array([-2.0, -0.5 + 1j, 1.0, 3.0 - 2j])
    A = S @ np.diag(lam) @ np.linalg.inv(S)
    oracle = S @ np.diag(np.sign(lam.real)) @ np.linalg.inv(S)
    assert fro(matrix_sign(A) - oracle) <= 1e-10 * fro(oracle)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 16))
def test_sign_suite(seed, n):
    rng = np.random.default_rng(seed)
    re = rng.uniform(0.1, 3.0, n) * rng.choice([-1, 1], n)
    lam = re + 1j * rng.uniform(-2, 2, n)
    Q, _ = np.linalg.qr(rand_complex(rng, (n, n)))
    T = np.diag(lam) + np.triu(0.3 * rand_complex(rng, (n, n)), 1)
    A = Q @ T @ Q.conj().T
    S = matrix_sign(A)
    assert fro(S @ S - np.eye(n)) <= 1e-9 * n
    assert fro(S @ A - A @ S) <= 1e-9 * fro(A)


# ---------------------------------------------------------------- null space, solves, kron

def test_nullspace_examples():
    assert nullspace_basis(np.eye(3)).shape == (3, 0)
    N = nullspace_basis(np.zeros((2, 2)))
    assert N.shape == (2, 2) and fro(N.conj().T @ N - np.eye(2)) <= 1e-14
    N = nullspace_basis(ONES3)
    assert N.shape == (3, 2)
    assert fro(ONES3 @ N) <= 1e-12
    assert fro(N.conj().T @ N - np.eye(2)) <= 1e-12


def test_nullspace_rectangular():
    rng = np.random.default_rng(2)
    C = rand_complex(rng, (3, 7))
    N = nullspace_basis(C)
    assert N.shape == (7, 4) and fro(C @ N) <= 1e-12 * fro(C)


def test_min_norm_solve_examples():
    D = np.array([[1.0, 2.0], [3.0, 4.0]])
    X, ok = min_norm_solve(np.eye(2), D)
    assert ok and np.allclose(X, D)
    X, ok = min_norm_solve(np.zeros((2, 3)), np.zeros((2, 1)))
    assert ok and np.array_equal(X, np.zeros((3, 1)))


def test_min_norm_solve_minimality():
    X, ok = min_norm_solve(np.array([[1.0, 1.0]]), np.array([[2.0]]))
    assert ok and np.allclose(X, [[1], [1]], atol=1e-14)
    # every solution is [1 + t, 1 - t]; its norm is smallest at t = 0
    ts = np.linspace(-1, 1, 201)
    norms = np.sqrt((1 + ts) ** 2 + (1 - ts) ** 2)
    assert fro(X) <= norms.min() + 1e-14


def test_min_norm_solve_flags_inconsistent():
    _, ok = min_norm_solve(np.array([[1.0, 0.0], [1.0, 0.0]]), np.array([[1.0], [2.0]]))
    assert not ok


def test_kron_examples():
    B = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(kron(np.eye(2), B), np.block([[B, np.zeros((2, 2))], [np.zeros((2, 2)), B]]))
    assert np.array_equal(kron(B, np.ones((1, 1))), B)
    K = kron(B, np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert K.shape == (4, 4)
    assert K[0, 1] == 1 and K[0, 0] == 0
    assert np.array_equal(K[0], [0, 1, 0, 2])


# ---------------------------------------------------------------- distinct eigenvalues

def test_distinct_eigenvalues_examples():
    assert [(complex(v), m) for v, m in distinct_eigenvalues(np.eye(3))] == [(1, 3)]
    got = distinct_eigenvalues(EXAMPLE1)
    assert [m for _, m in got] == [1, 1, 1]
    assert np.allclose([v for v, _ in got], [0, 1, 2], atol=1e-10)
    got = distinct_eigenvalues(EXAMPLE2)
    assert [m for _, m in got] == [2, 1]
    assert np.allclose([v for v, _ in got], [0, 3], atol=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_distinct_eigenvalues_multiplicities_sum_to_n(seed):
    A = rand_complex(np.random.default_rng(seed), (7, 7))
    assert sum(m for _, m in distinct_eigenvalues(A)) == 7
