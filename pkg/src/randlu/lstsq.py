"""Rank-deficient least squares through the randomized LU factorization.

For A of numerical rank k the solve splits into a full-rank least-squares
step against the trapezoidal L (normal equations) and a k x k triangular
solve against the leading block of U.  The free block of the permuted
solution is pinned to zero, so x carries at most k nonzero entries; this
is deliberately not the minimum-norm solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix
from .decomp import LowRankLU, randomized_lu
from .errors import ParameterError, SingularMatrixError
from .kernels import least_squares_apply, triangular_solve_upper


@dataclass(frozen=True)
class RdlsSolution:
    x: np.ndarray
    residual_norm: float
    k_used: int
    nonzero_count: int


def solve_rdls(a, b, k: int, l: int, seed: int) -> RdlsSolution:
    """Minimize ||A x - b|| over the rank-k randomized LU surrogate of A.

    Args:
        a: m x n real matrix, m >= n.
        b: right-hand side of length m.
        k: working rank (the numerical rank of A for an exact-rank solve).
        l: sketch width, k <= l <= min(m, n).
        seed: sketch seed.

    Raises:
        SingularMatrixError: the leading k x k block of U is numerically
            singular; retry with a larger k or another seed.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        raise ParameterError("solve_rdls expects a tall system (rows >= cols)")
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if b.shape[0] != m:
        raise ParameterError(f"rhs has length {b.shape[0]}, expected {m}")
    f = randomized_lu(a, k, l, seed)
    x, residual = _solve_from_factorization(f, a, b)
    z_nonzeros = int(np.count_nonzero(x))
    return RdlsSolution(x=x, residual_norm=residual, k_used=int(k), nonzero_count=z_nonzeros)


def _solve_from_factorization(f: LowRankLU, a: np.ndarray, b: np.ndarray):
    n = f.Q.size
    c = b[f.P.forward]
    y = least_squares_apply(f.L, c)
    u1 = f.U[:, : f.k]
    try:
        z1 = triangular_solve_upper(u1, y)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            f"leading block of U is numerically singular ({exc}); "
            f"retry with a larger k or a different seed",
            index=exc.index,
        ) from exc
    z = np.zeros(n, dtype=z1.dtype)
    z[: f.k] = z1
    x = z[f.Q.inverse().forward]
    residual = float(np.linalg.norm(a @ x - b))
    return x, residual
