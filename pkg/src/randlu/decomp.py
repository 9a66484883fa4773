"""Randomized low-rank LU decomposition with a Gaussian sketch, plus the
orthogonal range finder and the randomized SVD / randomized ID baselines
used for benchmark comparisons.

Pipeline for rank k with sketch width l >= k:

1. draw a seeded n x l Gaussian test matrix G and form Y = A G;
2. row-pivoted LU of Y (complete pivoting optional), stopped after k
   pivots, which equals truncating the full factorization;
3. B = pinv(L_y) P A through the normal equations;
4. column-pivoted LU of B, then L = L_y L_b and U = U_b.

Identical inputs and seed reproduce the factorization bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Permutation,
    apply_col_perm,
    apply_row_perm,
    as_matrix,
    frobenius_norm,
    matmul,
    spectral_norm,
)
from .errors import DimensionError, ParameterError, RankCollapseError
from .kernels import (
    least_squares_apply,
    lu_column_pivot,
    lu_complete_pivot,
    lu_partial_pivot,
    svd_oracle,
    truncate_lu,
)
from .rowid import row_id_rank
from .sketch import SketchOperator, apply_gaussian, make_gaussian_sketch

PIVOT_MODES = ("partial", "complete")


@dataclass(frozen=True)
class LowRankLU:
    """Rank-k factorization P A Q ~= L U with trapezoidal factors."""

    P: Permutation
    Q: Permutation
    L: np.ndarray
    U: np.ndarray
    k: int
    l: int
    sketch: SketchOperator


@dataclass(frozen=True)
class RangeBasis:
    """Orthonormal basis for the dominant column space."""

    Q_basis: np.ndarray
    k: int
    l: int


def _check_rank_params(a: np.ndarray, k: int, l: int):
    m, n = a.shape
    if not (1 <= k <= l <= min(m, n)):
        raise ParameterError(
            f"rank parameters must satisfy 1 <= k <= l <= min(m, n); "
            f"got k={k}, l={l}, min(m, n)={min(m, n)}"
        )


def randomized_lu(a, k: int, l: int, seed: int, pivot_mode: str = "partial") -> LowRankLU:
    """Rank-k randomized LU of a real matrix.

    Args:
        a: m x n real input.
        k: target rank, 1 <= k <= l.
        l: sketch width, k <= l <= min(m, n).
        seed: random seed; fixes the factorization exactly.
        pivot_mode: "partial" (default) or "complete" pivoting for the
            sketch factorization.

    Raises:
        RankCollapseError: the sketch Y = A G has numerical rank below k.
    """
    a = as_matrix(a)
    if np.iscomplexobj(a):
        raise ParameterError("randomized_lu expects a real input matrix")
    k, l = int(k), int(l)
    _check_rank_params(a, k, l)
    if pivot_mode not in PIVOT_MODES:
        raise ParameterError(f"pivot_mode must be one of {PIVOT_MODES}")

    op = make_gaussian_sketch(seed, a.shape[1], l)
    y = apply_gaussian(a, op)
    factor = lu_partial_pivot if pivot_mode == "partial" else lu_complete_pivot
    lu_y = factor(y, steps=k)
    if lu_y.rank_detected < k:
        raise RankCollapseError(
            f"sketch matrix has detected rank {lu_y.rank_detected} < k={k}; "
            f"reduce k or widen the sketch",
            achievable_rank=lu_y.rank_detected,
        )
    l_y, _ = truncate_lu(lu_y, k)
    b = least_squares_apply(l_y, apply_row_perm(lu_y.row_perm, a))
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


def reconstruct(f: LowRankLU) -> np.ndarray:
    """The approximation P^T (L U) Q^T in original coordinates."""
    lu = matmul(f.L, f.U)
    return apply_row_perm(f.P.inverse(), apply_col_perm(lu, f.Q.inverse()))


def reconstruct_real(f: LowRankLU) -> np.ndarray:
    """Real part of the reconstruction, for complex-factor approximants of
    real inputs."""
    return np.real(reconstruct(f))


def approx_error(f: LowRankLU, a, norm: str = "frobenius", relative: bool = False) -> float:
    """||P A Q - L U|| in the requested norm ("frobenius" or "spectral").

    With relative=True the value is divided by the same norm of A.
    """
    a = as_matrix(a)
    if norm not in ("frobenius", "spectral"):
        raise ParameterError(f"unknown norm {norm!r}")
    if f.P.size != a.shape[0] or f.Q.size != a.shape[1]:
        raise DimensionError("factorization permutations do not match the matrix shape")
    paq = apply_col_perm(apply_row_perm(f.P, a), f.Q)
    residual = paq - matmul(f.L, f.U)
    if norm == "frobenius":
        err = frobenius_norm(residual)
        return err / frobenius_norm(a) if relative else err
    err = spectral_norm(residual)
    return err / spectral_norm(a) if relative else err


def range_finder(a, k: int, l: int, seed: int) -> RangeBasis:
    """Orthonormal basis for the dominant range of A, from the SVD of the
    Gaussian sketch Y = A G."""
    a = as_matrix(a)
    k, l = int(k), int(l)
    _check_rank_params(a, k, l)
    y = apply_gaussian(a, make_gaussian_sketch(seed, a.shape[1], l))
    res = svd_oracle(y)
    sig = res.singular_values
    rank = int(np.count_nonzero(sig > 1e-12 * (sig[0] if sig[0] > 0 else 1.0)))
    if rank < k:
        raise RankCollapseError(
            f"sketch matrix has detected rank {rank} < k={k}",
            achievable_rank=rank,
        )
    return RangeBasis(Q_basis=res.U[:, :k].copy(), k=k, l=l)


def randomized_svd_baseline(a, k: int, l: int, seed: int):
    """Rank-k randomized SVD: range finder, then the SVD of Q^H A.

    Returns (U, singular_values, V).
    """
    a = as_matrix(a)
    basis = range_finder(a, k, l, seed)
    small = svd_oracle(matmul(basis.Q_basis.conj().T, a))
    u = matmul(basis.Q_basis, small.U[:, :k])
    return u, small.singular_values[:k].copy(), small.V[:, :k].copy()


def randomized_id_baseline(a, k: int, l: int, seed: int):
    """Rank-k randomized row ID: sketch, then row selection on the sketch.

    Returns (J, X) with A ~= X @ A[J, :].
    """
    a = as_matrix(a)
    k, l = int(k), int(l)
    _check_rank_params(a, k, l)
    y = apply_gaussian(a, make_gaussian_sketch(seed, a.shape[1], l))
    rid = row_id_rank(y, k)
    return rid.J, rid.X
