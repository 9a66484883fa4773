"""Random projection operators: dense Gaussian sketches and the
subsampled random Fourier transform R = D F S.

D is a diagonal of unit-modulus phases, F the unitary DFT with
F[j, k] = n**-0.5 * exp(-2j*pi*j*k/n), and S a column sampler drawn
without replacement so that R^H R = I exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fft
from .core import RandomStream, as_matrix, frobenius_norm, gaussian_matrix, matmul
from .errors import DimensionError, ParameterError

GAUSSIAN = "gaussian"
SRFT = "srft"


@dataclass(frozen=True)
class SketchOperator:
    """Tagged description of a random projection from n to l coordinates."""

    kind: str
    n: int
    l: int
    seed: int
    d_phases: np.ndarray | None = None
    selected_cols: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in (GAUSSIAN, SRFT):
            raise ParameterError(f"unknown sketch kind {self.kind!r}")
        if not (1 <= self.l <= self.n):
            raise ParameterError(f"sketch requires 1 <= l <= n, got l={self.l}, n={self.n}")
        if self.kind == SRFT:
            if self.d_phases is None or self.selected_cols is None:
                raise ParameterError("srft sketch requires d_phases and selected_cols")
            if self.d_phases.shape != (self.n,):
                raise ParameterError("d_phases must have length n")
            if np.max(np.abs(np.abs(self.d_phases) - 1.0)) > 1e-15:
                raise ParameterError("d_phases must lie on the unit circle")
            cols = np.asarray(self.selected_cols)
            if cols.shape != (self.l,) or len(np.unique(cols)) != self.l:
                raise ParameterError("selected_cols must be l distinct indices")
            if cols.min() < 0 or cols.max() >= self.n:
                raise ParameterError("selected_cols out of range")


def make_gaussian_sketch(seed: int, n: int, l: int) -> SketchOperator:
    return SketchOperator(kind=GAUSSIAN, n=int(n), l=int(l), seed=int(seed))


def make_srft_sketch(seed: int, n: int, l: int) -> SketchOperator:
    stream = RandomStream(seed)
    phases = stream.unit_phases(int(n))
    cols = stream.pick_without_replacement(int(n), int(l))
    return SketchOperator(
        kind=SRFT, n=int(n), l=int(l), seed=int(seed),
        d_phases=phases, selected_cols=cols,
    )


def gaussian_sketch_matrix(op: SketchOperator) -> np.ndarray:
    """Materialize the n x l Gaussian test matrix of ``op``."""
    if op.kind != GAUSSIAN:
        raise ParameterError("gaussian_sketch_matrix needs a gaussian operator")
    return gaussian_matrix(RandomStream(op.seed), op.n, op.l)


def apply_gaussian(a, op: SketchOperator) -> np.ndarray:
    """A @ G for the materialized Gaussian test matrix G."""
    a = as_matrix(a)
    if op.kind != GAUSSIAN:
        raise ParameterError("apply_gaussian needs a gaussian operator")
    if a.shape[1] != op.n:
        raise DimensionError(f"operator expects {op.n} columns, matrix has {a.shape[1]}")
    return matmul(a, gaussian_sketch_matrix(op))


def srft_matrix(op: SketchOperator) -> np.ndarray:
    """Materialize R = D F S column by column from the DFT formula.

    Intentionally independent of the fast transform in fft.py so the two
    routes can check each other.
    """
    if op.kind != SRFT:
        raise ParameterError("srft_matrix needs an srft operator")
    n = op.n
    j = np.arange(n).reshape(-1, 1)
    k = np.asarray(op.selected_cols).reshape(1, -1)
    f_cols = np.exp(-2j * np.pi * j * k / n) / np.sqrt(n)
    return op.d_phases.reshape(-1, 1) * f_cols


def apply_srft(a, op: SketchOperator) -> np.ndarray:
    """A @ (D F S) via a fast Fourier transform along the rows of A D."""
    a = as_matrix(a)
    if op.kind != SRFT:
        raise ParameterError("apply_srft needs an srft operator")
    if a.shape[1] != op.n:
        raise DimensionError(f"operator expects {op.n} columns, matrix has {a.shape[1]}")
    scaled = a * op.d_phases
    transformed = fft.fft(scaled, axis=1) / np.sqrt(op.n)
    return np.ascontiguousarray(transformed[:, op.selected_cols])


def srft_column_orthonormality(op: SketchOperator) -> float:
    """Diagnostic ||R^H R - I||_F for the materialized operator."""
    r = srft_matrix(op)
    gram = r.conj().T @ r
    return frobenius_norm(gram - np.eye(op.l))
