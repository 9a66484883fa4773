"""Iterative radix-2 FFT with a Bluestein fallback for arbitrary lengths.

Transforms act along the last axis and follow the unnormalized DFT
convention X[k] = sum_j x[j] exp(-2*pi*i*j*k/n); ifft divides by n.
Plans (bit-reversal indices, stage twiddles, Bluestein chirps) are cached
per length.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

_pow2_plans: dict[int, tuple[np.ndarray, list[np.ndarray]]] = {}
_bluestein_plans: dict[tuple[int, bool], tuple[int, np.ndarray, np.ndarray]] = {}


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _pow2_plan(n: int):
    plan = _pow2_plans.get(n)
    if plan is None:
        bits = n.bit_length() - 1
        idx = np.arange(n)
        rev = np.zeros(n, dtype=np.int64)
        for b in range(bits):
            rev = (rev << 1) | ((idx >> b) & 1)
        twiddles = []
        half = 1
        while half < n:
            twiddles.append(np.exp(-1j * np.pi * np.arange(half) / half))
            half *= 2
        plan = (rev, twiddles)
        _pow2_plans[n] = plan
    return plan


def _fft_pow2(x: np.ndarray, inverse: bool) -> np.ndarray:
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    rev, twiddles = _pow2_plan(n)
    lead = x.shape[:-1]
    y = x[..., rev]
    half = 1
    for tw in twiddles:
        if inverse:
            tw = np.conj(tw)
        y = y.reshape(*lead, n // (2 * half), 2, half)
        even = y[..., 0, :]
        odd = y[..., 1, :] * tw
        y = np.concatenate([even + odd, even - odd], axis=-1).reshape(*lead, n)
        half *= 2
    return y


def _bluestein_plan(n: int, inverse: bool):
    # Chirp-z: an n-point DFT as a power-of-two circular convolution.
    plan = _bluestein_plans.get((n, inverse))
    if plan is None:
        m = 1 << (2 * n - 1).bit_length()
        j = np.arange(n, dtype=np.float64)
        sign = 1.0 if inverse else -1.0
        chirp = np.exp(sign * 1j * np.pi * j * j / n)
        b = np.zeros(m, dtype=np.complex128)
        b[:n] = np.conj(chirp)
        if n > 1:
            b[-(n - 1):] = np.conj(chirp[1:])[::-1]
        b_hat = _fft_pow2(b, inverse=False)
        plan = (m, chirp, b_hat)
        _bluestein_plans[(n, inverse)] = plan
    return plan


def _fft_bluestein(x: np.ndarray, inverse: bool) -> np.ndarray:
    n = x.shape[-1]
    m, chirp, b_hat = _bluestein_plan(n, inverse)
    a = np.zeros(x.shape[:-1] + (m,), dtype=np.complex128)
    a[..., :n] = x * chirp
    conv = _fft_pow2(_fft_pow2(a, inverse=False) * b_hat, inverse=True) / m
    return conv[..., :n] * chirp


def fft(x, axis: int = -1) -> np.ndarray:
    """Forward DFT along ``axis``."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.shape[axis] < 1:
        raise ParameterError("fft requires a non-empty transform axis")
    moved = np.moveaxis(arr, axis, -1)
    n = moved.shape[-1]
    out = _fft_pow2(moved, False) if _is_pow2(n) else _fft_bluestein(moved, False)
    return np.moveaxis(out, -1, axis)


def ifft(x, axis: int = -1) -> np.ndarray:
    """Inverse DFT along ``axis`` (includes the 1/n factor)."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.shape[axis] < 1:
        raise ParameterError("ifft requires a non-empty transform axis")
    moved = np.moveaxis(arr, axis, -1)
    n = moved.shape[-1]
    out = _fft_pow2(moved, True) if _is_pow2(n) else _fft_bluestein(moved, True)
    return np.moveaxis(out, -1, axis) / n
