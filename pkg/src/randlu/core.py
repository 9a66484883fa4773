"""Dense-matrix groundwork: deterministic random streams, permutations,
elementary products and norms.

Matrices are plain 2-D numpy arrays in row-major order, float64 or
complex128.  Everything here is a pure function over immutable inputs;
results for a fixed seed are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DimensionError, ParameterError

REAL = np.float64
COMPLEX = np.complex128

_MASK64 = (1 << 64) - 1


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and coerce ``a`` to a 2-D float64 or complex128 array."""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.size == 0:
        raise DimensionError(f"{name} must be non-empty")
    if np.iscomplexobj(arr):
        return np.ascontiguousarray(arr, dtype=COMPLEX)
    return np.ascontiguousarray(arr, dtype=REAL)


class RandomStream:
    """Counter-based deterministic random stream.

    Uniform variates come from a Philox counter generator keyed by
    (seed, tag); normal variates are produced by the Box-Muller transform
    of that uniform output, so the full scalar sequence is a pure function
    of the key.
    """

    def __init__(self, seed: int, tag: int = 0):
        self.seed = int(seed)
        self.tag = int(tag)
        key = np.array([self.seed & _MASK64, self.tag & _MASK64], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def substream(self, tag: int) -> "RandomStream":
        """Independent stream derived from the same seed."""
        return RandomStream(self.seed, tag)

    def uniform(self, n: int) -> np.ndarray:
        """n uniforms in [0, 1)."""
        return self._gen.random(int(n))

    def normals(self, n: int) -> np.ndarray:
        """n standard normals via Box-Muller pairs."""
        n = int(n)
        pairs = (n + 1) // 2
        u1 = 1.0 - self.uniform(pairs)  # (0, 1]: keeps the log finite
        u2 = self.uniform(pairs)
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:n]

    def unit_phases(self, n: int) -> np.ndarray:
        """n complex scalars uniform on the unit circle."""
        return np.exp(2j * np.pi * self.uniform(n))

    def permutation(self, n: int) -> np.ndarray:
        """Uniformly random permutation of range(n), as random-key argsort."""
        return np.argsort(self.uniform(n), kind="stable")

    def pick_without_replacement(self, n: int, count: int) -> np.ndarray:
        """count distinct indices from range(n), returned sorted ascending."""
        if count > n:
            raise ParameterError(f"cannot pick {count} distinct indices from {n}")
        return np.sort(self.permutation(n)[:count])


def gaussian_matrix(stream: RandomStream, rows: int, cols: int) -> np.ndarray:
    """rows x cols matrix of i.i.d. standard normals drawn from ``stream``."""
    rows, cols = int(rows), int(cols)
    if rows < 1 or cols < 1:
        raise ParameterError("gaussian_matrix requires rows, cols >= 1")
    return stream.normals(rows * cols).reshape(rows, cols)


@dataclass(frozen=True)
class Permutation:
    """A permutation of indices 0..size-1, stored as its forward map."""

    forward: np.ndarray

    def __post_init__(self):
        fwd = np.asarray(self.forward, dtype=np.int64)
        if fwd.ndim != 1 or fwd.size == 0:
            raise ParameterError("permutation map must be a non-empty 1-D index array")
        if not np.array_equal(np.sort(fwd), np.arange(fwd.size)):
            raise ParameterError("permutation map is not a bijection on its range")
        object.__setattr__(self, "forward", fwd)

    @property
    def size(self) -> int:
        return self.forward.size

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(int(n), dtype=np.int64))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.forward, np.arange(self.size)))

    def inverse(self) -> "Permutation":
        inv = np.empty(self.size, dtype=np.int64)
        inv[self.forward] = np.arange(self.size)
        return Permutation(inv)

    def to_dense(self) -> np.ndarray:
        """The permutation as a dense matrix P with (P @ a) == apply_row_perm."""
        p = np.zeros((self.size, self.size))
        p[np.arange(self.size), self.forward] = 1.0
        return p


def apply_row_perm(p: Permutation, a: np.ndarray) -> np.ndarray:
    """Reorder rows: out[i, :] = a[p.forward[i], :]."""
    a = np.asarray(a)
    if p.size != a.shape[0]:
        raise DimensionError(f"row permutation size {p.size} != row count {a.shape[0]}")
    return a[p.forward]


def apply_col_perm(a: np.ndarray, q: Permutation) -> np.ndarray:
    """Reorder columns: out[:, j] = a[:, q.forward[j]]."""
    a = np.asarray(a)
    if q.size != a.shape[-1]:
        raise DimensionError(f"column permutation size {q.size} != column count {a.shape[-1]}")
    return a[..., q.forward]


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with shape checking and real/complex promotion."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[0]:
        raise DimensionError(f"inner dimensions differ: {a.shape} @ {b.shape}")
    return a @ b


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def spectral_norm(a, tol: float = 1e-10, max_iters: int = 5000, seed: int = 0) -> float:
    """Largest singular value, by power iteration on the Gram operator.

    Restarts once from a fresh vector if the first pass stalls; raises
    ConvergenceError (carrying the best estimate) if both passes stall.
    """
    a = np.asarray(a)
    if tol <= 0:
        raise ParameterError("spectral_norm requires tol > 0")
    if not np.any(a):
        return 0.0
    n = a.shape[1]
    best = 0.0
    for attempt in range(2):
        v = RandomStream(seed, tag=attempt).normals(n)
        v = v / np.linalg.norm(v)
        lam_old = -1.0
        for _ in range(max_iters):
            w = a @ v
            lam = float(np.real(np.vdot(w, w)))
            if lam == 0.0:
                break  # v landed in the null space; restart
            if abs(lam - lam_old) <= tol * lam:
                return float(np.sqrt(lam))
            lam_old = lam
            u = a.conj().T @ w
            v = u / np.linalg.norm(u)
        best = max(best, float(np.sqrt(max(lam_old, 0.0))))
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iters} iterations "
        f"(best estimate {best:.17g})",
        best_estimate=best,
    )


def orthonormal_columns(stream: RandomStream, rows: int, cols: int) -> np.ndarray:
    """rows x cols matrix with orthonormal columns from a seeded Gaussian.

    Modified Gram-Schmidt with one re-orthogonalization pass; requires
    cols <= rows.
    """
    if cols > rows:
        raise ParameterError("orthonormal_columns requires cols <= rows")
    g = gaussian_matrix(stream, rows, cols)
    q = np.empty_like(g)
    for j in range(cols):
        v = g[:, j].copy()
        for _ in range(2):
            if j:
                v -= q[:, :j] @ (q[:, :j].T @ v)
        q[:, j] = v / np.linalg.norm(v)
    return q
