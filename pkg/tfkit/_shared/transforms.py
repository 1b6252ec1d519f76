"""Exposes the discrete approximations of the continuous Fourier transform.

Every conversion in tfkit (time <-> frequency, lag <-> frequency,
time <-> Doppler) is a Riemann sum of the form

    X(xi_l) = step * sum_n x[n] exp(sign * j2pi * xi_l * (origin + n * step))

evaluated on the dual axis `xi_l = dual_origin + l / (N * step)`. When
`dual_origin` is omitted the dual axis is centered, with zero at index N/2.
The pair `continuous_ft` / `continuous_ift` are exact inverses of each other.
"""

from typing import Optional

import numpy as np
from scipy import fft as sp_fft


def dual_axis(n: int, step: float, dual_origin: Optional[float] = None) -> np.ndarray:
    """Gets the axis dual to `n` samples spaced `step` apart.

    Args:
        n: the number of samples
        step: the spacing of the samples
        dual_origin: the first value of the dual axis. None centers the axis,
            putting zero exactly at index n // 2.

    Returns:
        the n-point dual axis with spacing 1 / (n * step)
    """
    spacing = 1.0 / (n * step)
    if dual_origin is None:
        return (np.arange(n) - n // 2) * spacing
    return dual_origin + spacing * np.arange(n)


def continuous_ft(
    values: np.ndarray,
    origin: float,
    step: float,
    dual_origin: Optional[float] = None,
    sign: int = -1,
    axis: int = -1,
) -> np.ndarray:
    """Approximates the continuous Fourier transform of uniformly sampled data.

    Args:
        values: the samples; transformed along `axis`
        origin: the coordinate of sample 0
        step: the spacing between samples
        dual_origin: the first value of the output axis (None: centered)
        sign: -1 for the forward kernel exp(-j2pi..), +1 for exp(+j2pi..)
        axis: the axis to transform

    Returns:
        the transformed values on `dual_axis(n, step, dual_origin)`
    """
    x = np.asarray(values, dtype=complex)
    n = x.shape[axis]
    xi = dual_axis(n, step, dual_origin)
    pre = _pre_phase(n, step, xi[0], sign, centered=dual_origin is None)
    post = step * np.exp(sign * 2j * np.pi * xi * origin)

    y = x * _along(pre, axis, x.ndim)
    if sign < 0:
        y = sp_fft.fft(y, axis=axis)
    else:
        y = sp_fft.ifft(y, axis=axis) * n
    return y * _along(post, axis, x.ndim)


def continuous_ift(
    spectrum: np.ndarray,
    origin: float,
    step: float,
    dual_origin: Optional[float] = None,
    sign: int = -1,
    axis: int = -1,
) -> np.ndarray:
    """Inverts `continuous_ft` called with the same arguments.

    Args:
        spectrum: values on `dual_axis(n, step, dual_origin)`
        origin: the coordinate of sample 0 of the recovered data
        step: the spacing of the recovered samples
        dual_origin: the first value of the spectrum's axis (None: centered)
        sign: the sign that was used by the forward transform
        axis: the axis to transform

    Returns:
        the samples at `origin + n * step`
    """
    big_x = np.asarray(spectrum, dtype=complex)
    n = big_x.shape[axis]
    xi = dual_axis(n, step, dual_origin)
    spacing = 1.0 / (n * step)
    post = np.exp(-sign * 2j * np.pi * xi * origin)
    pre = np.conj(_pre_phase(n, step, xi[0], sign, centered=dual_origin is None))

    y = big_x * _along(post, axis, big_x.ndim)
    if sign < 0:
        y = sp_fft.ifft(y, axis=axis) * n
    else:
        y = sp_fft.fft(y, axis=axis)
    return spacing * y * _along(pre, axis, big_x.ndim)


def lag_product(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Builds the half-lag local correlation u[n+m] conj(v[n-m]).

    Samples outside [0, N) are zero (no periodic wrap).

    Args:
        u: the first signal's samples, length N (even)
        v: the second signal's samples, same length

    Returns:
        an N x N matrix whose row n, column m + N/2 holds the product at lag
        m, for m in [-N/2, N/2). The lag tau_m = 2 m dt.
    """
    n = u.shape[0]
    rows = np.arange(n)[:, None]
    lags = (np.arange(n) - n // 2)[None, :]
    ahead = rows + lags
    behind = rows - lags
    valid = (ahead >= 0) & (ahead < n) & (behind >= 0) & (behind < n)
    product = u[np.clip(ahead, 0, n - 1)] * np.conj(v[np.clip(behind, 0, n - 1)])
    return np.where(valid, product, 0.0)


def _pre_phase(n: int, step: float, first: float, sign: int, centered: bool) -> np.ndarray:
    """Gets the per-sample phase that shifts the FFT onto the requested dual axis."""
    k = np.arange(n)
    if centered:
        # exp(-/+ j pi k) is exactly (-1)^k
        return np.where(k % 2, -1.0, 1.0).astype(complex)
    return np.exp(sign * 2j * np.pi * first * step * k)


def _along(vector: np.ndarray, axis: int, ndim: int) -> np.ndarray:
    """Reshapes a 1D vector so it broadcasts along `axis` of an ndim array."""
    shape = [1] * ndim
    shape[axis] = vector.shape[0]
    return vector.reshape(shape)
