"""Pivoted LU factorizations, triangular solves, the trapezoidal
pseudoinverse, and a one-sided Jacobi SVD used as the accuracy oracle.

All factorizations store L with a unit diagonal.  ``rank_detected`` counts
pivots whose magnitude exceeds PIVOT_TOL relative to the Frobenius norm of
the input; it is a numerical-rank estimate over the eliminated steps, not
a certified rank.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Permutation, as_matrix, frobenius_norm
from .errors import (
    ConditioningError,
    ConvergenceError,
    ParameterError,
    RankCollapseError,
    SingularMatrixError,
)

PIVOT_TOL = 1e-12          # pivot cutoff, relative to ||A||_F
DIAG_TOL = 1e-14           # triangular-solve diagonal cutoff, relative to ||U||_F
_PANEL = 32                # blocked-elimination panel width


@dataclass(frozen=True)
class PivotedLU:
    """Result of a pivoted factorization P A Q = L U.

    L is m x r unit-lower-trapezoidal and U is r x n upper-trapezoidal,
    where r = min(m, n) for a full factorization (or the requested step
    count when elimination was stopped early).
    """

    row_perm: Permutation
    col_perm: Permutation
    L: np.ndarray
    U: np.ndarray
    rank_detected: int
    pivot_magnitudes: np.ndarray


def _extract_factors(work: np.ndarray, steps: int):
    m, n = work.shape
    L = np.tril(work[:, :steps], k=-1)
    L[np.arange(steps), np.arange(steps)] = 1.0
    U = np.triu(work[:steps, :])
    return L, U


def _detect_rank(pivmag: np.ndarray, scale: float) -> int:
    if scale == 0.0:
        return 0
    return int(np.count_nonzero(pivmag > PIVOT_TOL * scale))


def lu_partial_pivot(a, steps: int | None = None) -> PivotedLU:
    """LU with row (partial) pivoting: P A = L U.

    ``steps`` limits elimination to the first ``steps`` pivots; the
    returned factors then cover only those rows/columns.  Partial pivoting
    keeps every multiplier at magnitude <= 1.
    """
    A = as_matrix(a)
    m, n = A.shape
    r = min(m, n)
    steps = r if steps is None else min(int(steps), r)
    work = A.copy()
    perm = np.arange(m, dtype=np.int64)
    pivmag = np.zeros(steps)
    for j0 in range(0, steps, _PANEL):
        j1 = min(j0 + _PANEL, steps)
        for j in range(j0, j1):
            p = j + int(np.argmax(np.abs(work[j:, j])))
            pivmag[j] = abs(work[p, j])
            if p != j:
                work[[j, p], :] = work[[p, j], :]
                perm[[j, p]] = perm[[p, j]]
            piv = work[j, j]
            if piv != 0.0:
                work[j + 1:, j] /= piv
                if j + 1 < j1:
                    work[j + 1:, j + 1:j1] -= np.outer(work[j + 1:, j], work[j, j + 1:j1])
        if j1 < n:
            blk = work[j0:j1, j1:]
            for t in range(1, j1 - j0):
                blk[t, :] -= work[j0 + t, j0:j0 + t] @ blk[:t, :]
            if j1 < m and j1 < steps:
                work[j1:, j1:] -= work[j1:, j0:j1] @ blk
    L, U = _extract_factors(work, steps)
    return PivotedLU(
        row_perm=Permutation(perm),
        col_perm=Permutation.identity(n),
        L=L,
        U=U,
        rank_detected=_detect_rank(pivmag, frobenius_norm(A)),
        pivot_magnitudes=pivmag,
    )


def lu_complete_pivot(a, steps: int | None = None) -> PivotedLU:
    """LU with complete pivoting: P A Q = L U.

    Each pivot is the largest-magnitude entry of the trailing submatrix.
    """
    A = as_matrix(a)
    m, n = A.shape
    r = min(m, n)
    steps = r if steps is None else min(int(steps), r)
    work = A.copy()
    rperm = np.arange(m, dtype=np.int64)
    cperm = np.arange(n, dtype=np.int64)
    pivmag = np.zeros(steps)
    for j in range(steps):
        sub = np.abs(work[j:, j:])
        flat = int(np.argmax(sub))
        pr = j + flat // sub.shape[1]
        pc = j + flat % sub.shape[1]
        pivmag[j] = abs(work[pr, pc])
        if pr != j:
            work[[j, pr], :] = work[[pr, j], :]
            rperm[[j, pr]] = rperm[[pr, j]]
        if pc != j:
            work[:, [j, pc]] = work[:, [pc, j]]
            cperm[[j, pc]] = cperm[[pc, j]]
        piv = work[j, j]
        if piv != 0.0:
            work[j + 1:, j] /= piv
            work[j + 1:, j + 1:] -= np.outer(work[j + 1:, j], work[j, j + 1:])
    L, U = _extract_factors(work, steps)
    return PivotedLU(
        row_perm=Permutation(rperm),
        col_perm=Permutation(cperm),
        L=L,
        U=U,
        rank_detected=_detect_rank(pivmag, frobenius_norm(A)),
        pivot_magnitudes=pivmag,
    )


def lu_column_pivot(a, steps: int | None = None) -> PivotedLU:
    """LU with greedy column pivoting: A Q = L U, rows left in place.

    At step i the column whose entry in pivot row i has maximal magnitude
    is brought to position i.  Multipliers are not bounded by 1 in this
    mode.
    """
    A = as_matrix(a)
    m, n = A.shape
    r = min(m, n)
    steps = r if steps is None else min(int(steps), r)
    work = A.copy()
    cperm = np.arange(n, dtype=np.int64)
    pivmag = np.zeros(steps)
    for j in range(steps):
        pc = j + int(np.argmax(np.abs(work[j, j:])))
        pivmag[j] = abs(work[j, pc])
        if pc != j:
            work[:, [j, pc]] = work[:, [pc, j]]
            cperm[[j, pc]] = cperm[[pc, j]]
        piv = work[j, j]
        if piv != 0.0:
            work[j + 1:, j] /= piv
            work[j + 1:, j + 1:] -= np.outer(work[j + 1:, j], work[j, j + 1:])
        elif np.any(work[j + 1:, j]):
            raise SingularMatrixError(
                f"column pivoting found no usable pivot in row {j}", index=j
            )
    L, U = _extract_factors(work, steps)
    return PivotedLU(
        row_perm=Permutation.identity(m),
        col_perm=Permutation(cperm),
        L=L,
        U=U,
        rank_detected=_detect_rank(pivmag, frobenius_norm(A)),
        pivot_magnitudes=pivmag,
    )


def truncate_lu(f: PivotedLU, k: int):
    """First k columns of L and first k rows of U, no renormalization."""
    k = int(k)
    if k < 1 or k > f.L.shape[1]:
        raise ParameterError(f"truncation rank k={k} outside 1..{f.L.shape[1]}")
    if k > f.rank_detected:
        raise RankCollapseError(
            f"truncation rank k={k} exceeds detected numerical rank "
            f"{f.rank_detected}",
            achievable_rank=f.rank_detected,
        )
    return f.L[:, :k].copy(), f.U[:k, :].copy()


def triangular_solve_lower(L, b, unit_diagonal: bool = False) -> np.ndarray:
    """Solve L x = b by forward substitution (L lower triangular k x k)."""
    return _substitute(L, b, lower=True, unit=unit_diagonal)


def triangular_solve_upper(U, b, unit_diagonal: bool = False) -> np.ndarray:
    """Solve U x = b by back substitution (U upper triangular k x k)."""
    return _substitute(U, b, lower=False, unit=unit_diagonal)


def _substitute(T, b, lower: bool, unit: bool) -> np.ndarray:
    T = np.asarray(T)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ParameterError("triangular solve requires a square matrix")
    k = T.shape[0]
    b = np.asarray(b)
    vector = b.ndim == 1
    rhs = b.reshape(k, -1) if vector else b
    if rhs.shape[0] != k:
        raise ParameterError(f"rhs has {rhs.shape[0]} rows, expected {k}")
    if not unit:
        cutoff = DIAG_TOL * frobenius_norm(T)
        small = np.abs(np.diagonal(T)) <= cutoff
        if np.any(small):
            i = int(np.argmax(small))
            raise SingularMatrixError(
                f"triangular diagonal entry {i} has magnitude "
                f"{abs(T[i, i]):.3e}, below cutoff {cutoff:.3e}",
                index=i,
            )
    x = rhs.astype(np.promote_types(T.dtype, rhs.dtype), copy=True)
    order = range(k) if lower else range(k - 1, -1, -1)
    for i in order:
        if lower and i:
            x[i] -= T[i, :i] @ x[:i]
        elif not lower and i < k - 1:
            x[i] -= T[i, i + 1:] @ x[i + 1:]
        if not unit:
            x[i] /= T[i, i]
    return x[:, 0] if vector else x


def _gram_factor(L) -> PivotedLU:
    gram = L.conj().T @ L
    f = lu_partial_pivot(gram)
    k = gram.shape[0]
    if f.rank_detected < k:
        raise ConditioningError(
            f"Gram matrix of the {L.shape[0]}x{k} trapezoidal factor is "
            f"numerically singular (detected rank {f.rank_detected})"
        )
    return f


def _gram_solve(f: PivotedLU, rhs: np.ndarray) -> np.ndarray:
    z = triangular_solve_lower(f.L, rhs[f.row_perm.forward], unit_diagonal=True)
    return triangular_solve_upper(f.U, z)


def pinv_trapezoidal(L) -> np.ndarray:
    """Pseudoinverse (L^H L)^{-1} L^H of a full-column-rank m x k factor.

    The k x k Gram matrix is formed explicitly and solved through its own
    pivoted LU.
    """
    L = as_matrix(L, "trapezoidal factor")
    m, k = L.shape
    if m < k:
        raise ParameterError("pinv_trapezoidal requires rows >= cols")
    return _gram_solve(_gram_factor(L), L.conj().T)


def least_squares_apply(L, b) -> np.ndarray:
    """x minimizing ||L x - b||_2 for full-column-rank trapezoidal L.

    Same normal-equations route as pinv_trapezoidal, applied directly to b
    so the k x m pseudoinverse is never materialized.
    """
    L = as_matrix(L, "trapezoidal factor")
    if L.shape[0] < L.shape[1]:
        raise ParameterError("least_squares_apply requires rows >= cols")
    b = np.asarray(b)
    if b.shape[0] != L.shape[0]:
        raise ParameterError(f"rhs has {b.shape[0]} rows, expected {L.shape[0]}")
    return _gram_solve(_gram_factor(L), L.conj().T @ b)


# ---------------------------------------------------------------------------
# One-sided Jacobi SVD (desk-scale oracle)

@dataclass(frozen=True)
class SvdResult:
    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray


_schedules: dict[int, list] = {}


def _round_robin(n: int):
    """Disjoint column pairings covering all pairs in n-1 (or n) rounds."""
    rounds = _schedules.get(n)
    if rounds is not None:
        return rounds
    N = n + (n & 1)
    players = list(range(N))
    rounds = []
    for _ in range(N - 1):
        ii, jj = [], []
        for t in range(N // 2):
            a, b = players[t], players[N - 1 - t]
            if a < n and b < n:
                ii.append(min(a, b))
                jj.append(max(a, b))
        rounds.append((np.asarray(ii), np.asarray(jj)))
        players = [players[0], players[-1]] + players[1:-1]
    _schedules[n] = rounds
    return rounds


def svd_oracle(a, tol: float = 1e-12, max_sweeps: int = 60) -> SvdResult:
    """Thin SVD by one-sided Jacobi with a round-robin rotation order.

    Sweeps continue until every column pair is orthogonal to ``tol``
    (relative to the column norms) or ``max_sweeps`` is hit, in which case
    a ConvergenceError carries the best estimate so far.
    """
    A = as_matrix(a)
    m, n = A.shape
    if min(m, n) > 2000:
        raise ParameterError("svd_oracle is limited to min(m, n) <= 2000")
    if m < n:
        res = svd_oracle(A.conj().T, tol=tol, max_sweeps=max_sweeps)
        return SvdResult(U=res.V, singular_values=res.singular_values, V=res.U)

    W = A.copy()
    V = np.eye(n, dtype=W.dtype)
    converged = False
    off_max = np.inf
    for _ in range(max_sweeps):
        off_max = 0.0
        for ii, jj in _round_robin(n):
            wi = W[:, ii]
            wj = W[:, jj]
            gii = np.sum(np.abs(wi) ** 2, axis=0)
            gjj = np.sum(np.abs(wj) ** 2, axis=0)
            gij = np.sum(np.conj(wi) * wj, axis=0)
            absg = np.abs(gij)
            denom = np.sqrt(gii * gjj)
            off = np.divide(absg, denom, out=np.zeros_like(absg), where=denom > 0)
            if off.size:
                off_max = max(off_max, float(off.max()))
            active = off > tol
            if not np.any(active):
                continue
            # Rotate against |gij|: scale column j by the conjugate unit
            # phase of the cross term (a sign flip in the real case).
            phase = np.where(active & (absg > 0), gij / np.where(absg > 0, absg, 1.0), 1.0)
            W[:, jj] = wj = wj * np.conj(phase)
            V[:, jj] = V[:, jj] * np.conj(phase)
            beta = np.where(active, absg, 1.0)
            tau = np.where(active, (gjj - gii) / (2.0 * beta), 0.0)
            sign = np.where(tau >= 0.0, 1.0, -1.0)
            t = np.where(active, sign / (np.abs(tau) + np.sqrt(1.0 + tau * tau)), 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            wi_new = c * wi - s * wj
            wj_new = s * wi + c * wj
            W[:, ii] = wi_new
            W[:, jj] = wj_new
            vi = V[:, ii]
            vj = V[:, jj]
            V[:, ii] = c * vi - s * vj
            V[:, jj] = s * vi + c * vj
        if off_max <= tol:
            converged = True
            break
    if not converged:
        raise ConvergenceError(
            f"Jacobi sweeps hit the cap ({max_sweeps}) with max off-diagonal "
            f"coupling {off_max:.3e}",
            best_estimate=off_max,
        )

    sigma = np.sqrt(np.sum(np.abs(W) ** 2, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    W = W[:, order]
    V = V[:, order]
    U = np.zeros_like(W)
    nonzero = sigma > 0
    U[:, nonzero] = W[:, nonzero] / sigma[nonzero]
    if not np.all(nonzero):
        U = _complete_orthonormal(U, np.flatnonzero(~nonzero))
    return SvdResult(U=U, singular_values=sigma, V=V)


def _complete_orthonormal(U: np.ndarray, missing: np.ndarray) -> np.ndarray:
    """Fill zero columns of U with vectors orthonormal to the rest."""
    U = U.copy()
    m = U.shape[0]
    filled = [j for j in range(U.shape[1]) if j not in set(missing.tolist())]
    basis = [U[:, j] for j in filled]
    for j in missing:
        residual = 1.0 - np.sum(np.abs(U) ** 2, axis=1)
        pick = int(np.argmax(residual))
        v = np.zeros(m, dtype=U.dtype)
        v[pick] = 1.0
        for _ in range(2):
            for q in basis:
                v = v - q * np.vdot(q, v)
        v = v / np.linalg.norm(v)
        U[:, j] = v
        basis.append(v)
    return U
