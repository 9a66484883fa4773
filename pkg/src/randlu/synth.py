"""Synthetic test matrices with prescribed singular spectra.

A matrix is assembled as Q1 diag(sigma) Q2^T with seeded orthonormal
factors, so its singular values match the requested profile to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import RandomStream, orthonormal_columns
from .errors import ParameterError

KINDS = ("exponential", "step", "custom")


@dataclass(frozen=True)
class SpectrumSpec:
    """Recipe for a synthetic matrix: shape, seed, and spectrum kind.

    exponential: sigma_j = rho**(j-1) with rho in (0, 1).
    step: the first ``rank`` singular values are 1, the rest 0.
    custom: explicit nonincreasing ``sigmas``.
    """

    kind: str
    m: int
    n: int
    seed: int
    rho: float | None = None
    rank: int | None = None
    sigmas: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown spectrum kind {self.kind!r}")
        if self.m < 1 or self.n < 1:
            raise ParameterError("matrix dimensions must be positive")
        r = min(self.m, self.n)
        if self.kind == "exponential":
            if self.rho is None or not (0.0 < self.rho < 1.0):
                raise ParameterError("exponential spectrum requires rho in (0, 1)")
        elif self.kind == "step":
            if self.rank is None or not (1 <= self.rank <= r):
                raise ParameterError(f"step spectrum requires 1 <= rank <= {r}")
        else:
            if self.sigmas is None or len(self.sigmas) != r:
                raise ParameterError(f"custom spectrum requires {r} singular values")
            vals = np.asarray(self.sigmas, dtype=np.float64)
            if np.any(vals < 0) or np.any(np.diff(vals) > 0):
                raise ParameterError("custom singular values must be nonincreasing and >= 0")


def singular_profile(spec: SpectrumSpec) -> np.ndarray:
    r = min(spec.m, spec.n)
    if spec.kind == "exponential":
        return spec.rho ** np.arange(r, dtype=np.float64)
    if spec.kind == "step":
        out = np.zeros(r)
        out[: spec.rank] = 1.0
        return out
    return np.asarray(spec.sigmas, dtype=np.float64)


def synth_matrix(spec: SpectrumSpec) -> np.ndarray:
    """Materialize the spec as Q1 diag(sigma) Q2^T."""
    r = min(spec.m, spec.n)
    sigma = singular_profile(spec)
    stream = RandomStream(spec.seed)
    q1 = orthonormal_columns(stream.substream(1), spec.m, r)
    q2 = orthonormal_columns(stream.substream(2), spec.n, r)
    return (q1 * sigma) @ q2.T
