"""Row interpolative decomposition: Y ~= X @ Y[J, :] with an identity
block on the selected rows.

The default pivot engine is the pivoted LU of y, which is the
column-pivoted factorization of the conjugate transpose expressed on y
itself (pivoted columns of y^H are pivoted rows of y).  A column-pivoted
Gram-Schmidt QR engine is available for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix
from .errors import ParameterError, RankCollapseError
from .kernels import lu_partial_pivot, triangular_solve_upper

_ENGINES = ("lu", "qr")


@dataclass(frozen=True)
class RowID:
    """Row selection J plus the interpolation coefficients X (m x r)."""

    J: np.ndarray
    X: np.ndarray
    r: int


def row_id_full(y, engine: str = "lu") -> RowID:
    """Full-column-rank row ID of an m x l matrix (r = l).

    Raises RankCollapseError, reporting the achievable rank, when y is
    numerically rank deficient.
    """
    y = as_matrix(y)
    m, l = y.shape
    if m < l:
        raise ParameterError("row_id_full requires rows >= cols")
    if engine not in _ENGINES:
        raise ParameterError(f"unknown ID engine {engine!r}")
    if engine == "lu":
        J, X, rank = _id_via_lu(y, l)
    else:
        J, X, rank = _id_via_qr(y, l)
    if rank < l:
        raise RankCollapseError(
            f"row ID requires full column rank {l}, detected {rank}",
            achievable_rank=rank,
        )
    return RowID(J=J, X=X, r=l)


def row_id_rank(y, r: int, engine: str = "lu") -> RowID:
    """Rank-r row ID (approximate when r < rank(y))."""
    y = as_matrix(y)
    if not (1 <= r <= min(y.shape)):
        raise ParameterError(f"rank r={r} outside 1..{min(y.shape)}")
    if engine not in _ENGINES:
        raise ParameterError(f"unknown ID engine {engine!r}")
    J, X, rank = (_id_via_lu if engine == "lu" else _id_via_qr)(y, r)
    if rank < r:
        raise RankCollapseError(
            f"requested ID rank {r} exceeds detected numerical rank {rank}",
            achievable_rank=rank,
        )
    return RowID(J=J, X=X, r=r)


def coefficient_magnitude(rid: RowID) -> float:
    """max |X_ij|, the interpolation quality diagnostic."""
    return float(np.max(np.abs(rid.X))) if rid.X.size else 0.0


def _id_via_lu(y: np.ndarray, r: int):
    f = lu_partial_pivot(y, steps=r)
    rank = min(f.rank_detected, r)
    if rank < r:
        return f.row_perm.forward[:rank].copy(), None, rank
    L = f.L
    L1 = L[:r, :]
    L2 = L[r:, :]
    # Z = L2 @ L1^{-1} via L1^T Z^T = L2^T (unit upper solve)
    z = triangular_solve_upper(L1.T, L2.T, unit_diagonal=True).T
    px = np.vstack([np.eye(r, dtype=L.dtype), z])
    X = px[f.row_perm.inverse().forward]
    return f.row_perm.forward[:r].copy(), X, r


def _id_via_qr(y: np.ndarray, r: int):
    """Column-pivoted modified Gram-Schmidt QR of y^H."""
    w = y.conj().T.copy()            # l x m, columns are conjugated rows of y
    l, m = w.shape
    steps = min(r, l)
    norms2 = np.sum(np.abs(w) ** 2, axis=0).real
    perm = np.arange(m, dtype=np.int64)
    q = np.zeros((l, steps), dtype=w.dtype)
    rmat = np.zeros((steps, m), dtype=w.dtype)
    scale = np.sqrt(norms2.max()) if m else 0.0
    rank = 0
    for i in range(steps):
        pc = i + int(np.argmax(norms2[i:]))
        if np.sqrt(max(norms2[pc], 0.0)) <= 1e-12 * scale:
            break
        if pc != i:
            w[:, [i, pc]] = w[:, [pc, i]]
            norms2[[i, pc]] = norms2[[pc, i]]
            perm[[i, pc]] = perm[[pc, i]]
            rmat[:, [i, pc]] = rmat[:, [pc, i]]
        v = w[:, i].copy()
        for _ in range(2):
            if i:
                coeff = q[:, :i].conj().T @ v
                rmat[:i, i] += coeff
                v -= q[:, :i] @ coeff
        nrm = np.linalg.norm(v)
        q[:, i] = v / nrm
        rmat[i, i] = nrm
        if i + 1 < m:
            coeff = q[:, i].conj() @ w[:, i + 1:]
            rmat[i, i + 1:] = coeff
            w[:, i + 1:] -= np.outer(q[:, i], coeff)
            norms2[i + 1:] = np.maximum(norms2[i + 1:] - np.abs(coeff) ** 2, 0.0)
        rank += 1
    J = perm[:rank].copy()
    if rank < r:
        return J, None, rank
    # rows of y: y[perm[p], :] = (R1^{-1} R[:, p])^H @ y[J, :]
    coeffs = triangular_solve_upper(rmat[:r, :r], rmat[:r, :])
    X = np.zeros((m, r), dtype=y.dtype)
    X[perm] = coeffs.conj().T
    return J, X, r
