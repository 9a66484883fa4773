"""Randomized low-rank LU decomposition toolkit.

Dense randomized LU with Gaussian or subsampled-Fourier sketches,
an orthogonal range finder and randomized SVD / row-ID baselines, a
rank-deficient least-squares solver, and evaluators for the associated
error bounds and success probabilities.
"""

from .bounds import (
    BoundReport,
    GaussianBoundParams,
    MU_DEFAULT,
    SubgaussianConstants,
    gaussian_lu_error_coefficient,
    gaussian_norm_bound,
    gaussian_sketch_failure_probability,
    gaussian_sketch_success_probability,
    halko_rangefinder_bound,
    rangefinder_error_bound,
    reference_case_bounds,
    rrlu_error_factor,
    srft_lu_error_bound,
    subgaussian_constants,
    subgaussian_lu_error_coefficient,
    table1_rows,
)
from .core import (
    Permutation,
    RandomStream,
    apply_col_perm,
    apply_row_perm,
    frobenius_norm,
    gaussian_matrix,
    matmul,
    orthonormal_columns,
    spectral_norm,
)
from .decomp import (
    LowRankLU,
    RangeBasis,
    approx_error,
    randomized_id_baseline,
    randomized_lu,
    randomized_svd_baseline,
    range_finder,
    reconstruct,
    reconstruct_real,
)
from .fastlu import fast_randomized_lu, srft_width_floor
from .kernels import (
    PivotedLU,
    SvdResult,
    least_squares_apply,
    lu_column_pivot,
    lu_complete_pivot,
    lu_partial_pivot,
    pinv_trapezoidal,
    svd_oracle,
    triangular_solve_lower,
    triangular_solve_upper,
    truncate_lu,
)
from .lstsq import RdlsSolution, solve_rdls
from .rowid import RowID, coefficient_magnitude, row_id_full, row_id_rank
from .sketch import (
    SketchOperator,
    apply_gaussian,
    apply_srft,
    gaussian_sketch_matrix,
    make_gaussian_sketch,
    make_srft_sketch,
    srft_column_orthonormality,
    srft_matrix,
)
from .synth import SpectrumSpec, singular_profile, synth_matrix

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "GaussianBoundParams",
    "LowRankLU",
    "MU_DEFAULT",
    "Permutation",
    "PivotedLU",
    "RandomStream",
    "RangeBasis",
    "RdlsSolution",
    "RowID",
    "SketchOperator",
    "SpectrumSpec",
    "SubgaussianConstants",
    "SvdResult",
    "apply_col_perm",
    "apply_gaussian",
    "apply_row_perm",
    "apply_srft",
    "approx_error",
    "coefficient_magnitude",
    "fast_randomized_lu",
    "frobenius_norm",
    "gaussian_lu_error_coefficient",
    "gaussian_matrix",
    "gaussian_norm_bound",
    "gaussian_sketch_failure_probability",
    "gaussian_sketch_matrix",
    "gaussian_sketch_success_probability",
    "halko_rangefinder_bound",
    "least_squares_apply",
    "lu_column_pivot",
    "lu_complete_pivot",
    "lu_partial_pivot",
    "make_gaussian_sketch",
    "make_srft_sketch",
    "matmul",
    "orthonormal_columns",
    "pinv_trapezoidal",
    "randomized_id_baseline",
    "randomized_lu",
    "randomized_svd_baseline",
    "range_finder",
    "rangefinder_error_bound",
    "reconstruct",
    "reconstruct_real",
    "reference_case_bounds",
    "row_id_full",
    "row_id_rank",
    "rrlu_error_factor",
    "singular_profile",
    "solve_rdls",
    "spectral_norm",
    "srft_column_orthonormality",
    "srft_lu_error_bound",
    "srft_matrix",
    "srft_width_floor",
    "subgaussian_constants",
    "subgaussian_lu_error_coefficient",
    "svd_oracle",
    "synth_matrix",
    "table1_rows",
    "triangular_solve_lower",
    "triangular_solve_upper",
    "truncate_lu",
]
