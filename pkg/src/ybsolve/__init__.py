"""Explicit solution families for the singular Yang-Baxter-like matrix equation AXA = XAX."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .linalg import (  # noqa: F401
    DEFAULT_TOLERANCES,
    SchurForm,
    ToleranceConfig,
    distinct_eigenvalues,
    drazin,
    matrix_index,
    matrix_sign,
    min_norm_solve,
    nullspace_basis,
    ordschur_select,
    pinv,
    rank,
    schur_complex,
)
from .methods import METHODS, solve  # noqa: F401
from .projectors import (  # noqa: F401
    ProjectorCertificate,
    complementary_projector,
    drazin_projector,
    eigen_replaced_sign_projectors,
    sign_shift_alphas,
    sign_shift_projectors,
    spectral_projector,
    sum_projector,
)
from .solvers import (  # noqa: F401
    BCandidate,
    SolutionFamily,
    b_from_projector,
    check_B_consistency,
    commuting_family_sq,
    commuting_family_zero,
    family_from_B,
    index_solution_left,
    index_solution_right,
    schur_block_data,
    schur_family_solve,
    schur_special_solutions,
    similarity_transport,
    splitting_roundtrip_check,
)
from .verification import VerificationReport, est_rel, residual  # noqa: F401
