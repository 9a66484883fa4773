"""Fast randomized LU: the subsampled-Fourier sketch replaces the
Gaussian projection and a row interpolative decomposition of the sketch
replaces the dense projection of the input.

For an m x n real input the sketch Y = A R is complex, so the returned
factors are complex approximants of the real P A Q; reconstruct_real
recovers the real-part approximation.

The row ID is taken at the detected numerical rank of Y.  For a
numerically full-rank sketch that is the full-rank ID of Y; for inputs of
exact rank r < l the selection adapts to r, which keeps the interpolation
well posed (the identity X row block and exact reconstruction of Y are
preserved either way).
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .core import as_matrix, matmul
from .errors import ParameterError, RankCollapseError
from .decomp import LowRankLU, _check_rank_params
from .kernels import (
    lu_column_pivot,
    lu_partial_pivot,
    triangular_solve_upper,
    _gram_factor,
    _gram_solve,
)
from .sketch import apply_srft, make_srft_sketch


def srft_width_floor(k: int, n: int) -> float:
    """Sample-size floor 4 (sqrt(k) + sqrt(8 ln(k n)))^2 ln(k) under which
    the subsampled-Fourier range guarantee is not in force."""
    if k < 2:
        return 0.0
    return 4.0 * (math.sqrt(k) + math.sqrt(8.0 * math.log(k * n))) ** 2 * math.log(k)


def fast_randomized_lu(a, k: int, l: int, seed: int) -> LowRankLU:
    """Rank-k randomized LU through an SRFT sketch and row ID.

    Args:
        a: m x n real input.
        k: target rank.
        l: sketch width, k <= l <= min(m, n).  Widths below
            srft_width_floor(k, n) only trigger a warning.
        seed: fixes the phases and the column sample, hence the result.

    Raises:
        RankCollapseError: the sketch has numerical rank below k.
    """
    a = as_matrix(a)
    if np.iscomplexobj(a):
        raise ParameterError("fast_randomized_lu expects a real input matrix")
    k, l = int(k), int(l)
    _check_rank_params(a, k, l)
    floor = srft_width_floor(k, a.shape[1])
    if l < floor:
        warnings.warn(
            f"sketch width l={l} is below the guarantee floor "
            f"{floor:.0f} for k={k}; proceeding anyway",
            UserWarning,
            stacklevel=2,
        )

    op = make_srft_sketch(seed, a.shape[1], l)
    y = apply_srft(a, op)
    lu_y = lu_partial_pivot(y)
    r_id = lu_y.rank_detected
    if r_id < k:
        raise RankCollapseError(
            f"sketch matrix has detected rank {r_id} < k={k}; "
            f"reduce k or widen the sketch",
            achievable_rank=r_id,
        )

    l_y = lu_y.L[:, :k]
    l_full = lu_y.L[:, :r_id]
    l1 = l_full[:r_id, :]
    l2 = l_full[r_id:, :]
    rows = lu_y.row_perm.forward[:r_id]
    a_rows = a[rows, :]

    # B = pinv(L_y) P X A_(J,:) with P X = [I; L2 L1^{-1}] stacked, so
    # L_y^H (P X) = L_y^H[:, :r] + ((L_y^H[:, r:] L2) L1^{-1}).
    head = l_y[:r_id, :].conj().T
    if l2.size:
        tail = l_y[r_id:, :].conj().T @ l2
        tail = triangular_solve_upper(l1.T, tail.T, unit_diagonal=True).T
        w = head + tail
    else:
        w = head
    # w @ a_rows with the complex factor split over the real rows
    wa = w.real @ a_rows + 1j * (w.imag @ a_rows)
    b = _gram_solve(_gram_factor(l_y), wa)

    lu_b = lu_column_pivot(b)
    return LowRankLU(
        P=lu_y.row_perm,
        Q=lu_b.col_perm,
        L=matmul(l_y, lu_b.L),
        U=lu_b.U,
        k=k,
        l=l,
        sketch=op,
    )
