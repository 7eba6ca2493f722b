"""Shared test helpers and independently transcribed matrices."""

import numpy as np

# Matrices transcribed from the source text, kept independent of the
# package fixtures so that fixture tests compare against a second copy.
# Example 1 as printed, and the matrix its listed projectors commute with
# (they differ in entry (3, 2) only).
EXAMPLE1_PRINTED = np.array([[1, 1, 1], [0, 1, 0], [1, 1, 1]], dtype=complex)
EXAMPLE1 = np.array([[1, 1, 1], [0, 1, 0], [1, 0, 1]], dtype=complex)
EXAMPLE2 = np.ones((3, 3), dtype=complex)
EXAMPLE2_S = np.array([[1, 1, 1], [1, -1, 1], [1, 0, -2]], dtype=complex)
NILPOTENT4 = np.array(
    [[-2, -7, -8, -19], [0, -6, -6, -12], [0, 3, 2, 7], [1, 2, 3, 6]], dtype=complex
)
_P2 = np.array([[1, 1, 1], [0, 2, 0], [1, -1, 1]]) / 2
_P3 = np.array([[1, 1, 1], [0, 0, 0], [1, 1, 1]]) / 2
_P4 = np.array([[0, 0, 0], [0, 1, 0], [0, -1, 0]])
_I3 = np.eye(3)
EXAMPLE1_PROJECTORS = [np.zeros((3, 3)), _P2, _P3, _P4, _I3, _I3 - _P2, _I3 - _P3, _I3 - _P4]


def fro(M):
    return float(np.linalg.norm(M))


def residual_norm(A, X):
    return fro(A @ X @ A - X @ A @ X)


def rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def diagonalizable(eigs, seed):
    """``S diag(eigs) S^-1`` with a seeded, well-conditioned complex S."""
    rng = np.random.default_rng(seed)
    n = len(eigs)
    S = np.eye(n) + 0.3 * rand_complex(rng, (n, n)) / np.sqrt(n)
    return S @ np.diag(np.asarray(eigs, dtype=complex)) @ np.linalg.inv(S)
