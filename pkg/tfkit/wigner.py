"""Exposes the discrete Wigner-Ville distribution and its Gaussian smoothing.

The auto distribution is

    W[n, k] = 2 dt * sum_m a[n+m] conj(a[n-m]) exp(-j2pi f_k 2m dt)

with zero-padding outside the record. Lags are spaced 2 dt apart, so the
frequency axis is spaced fs / (2N) and spans half the sampled band. By
default that band is [-fs/4, fs/4); pass `f_start=0` for analytic signals
of real data. With this spacing both marginals are exact sums.

Typical usage example:

```python
from tfkit.wigner import wvd, gaussian_smooth

grid = wvd(a)
smooth = gaussian_smooth(grid, alpha=0.6, beta=0.5)
```
"""

import logging
from typing import Optional

import numpy as np

from ._shared.grid import TFGrid, tf_axes
from ._shared.transforms import continuous_ft, lag_product
from .ambiguity import ambiguity_from_wvd, apply_kernel, wvd_from_ambiguity
from .config import TfkitConfig, resolve_config
from .errors import InvalidSignalError, NumericalError
from .kernels import make
from .signal import SampledSignal, energy

logger = logging.getLogger(__name__)

__all__ = ["TFGrid", "tf_axes", "wvd", "cross_wvd", "gaussian_smooth"]

REALNESS_TOLERANCE = 1e-10


def wvd(a: SampledSignal, f_start: Optional[float] = None) -> TFGrid:
    """Computes the Wigner-Ville distribution of a signal.

    Args:
        a: the signal, typically the output of `analytic`
        f_start: the first frequency of the rendered band (None: [-fs/4, fs/4))

    Returns:
        the real-valued distribution

    Raises:
        NumericalError: if the imaginary residue exceeds 1e-10 of the peak
    """
    values = _lag_transform(a, a, f_start)
    peak = np.max(np.abs(values))
    residue = np.max(np.abs(values.imag))
    if residue > REALNESS_TOLERANCE * peak:
        raise NumericalError(
            f"the Wigner-Ville grid has an imaginary residue of {residue / peak:.3g} of its peak"
        )

    logger.debug("computed a %d x %d Wigner-Ville grid, imaginary residue %.3g", a.n, a.n, residue)
    return _to_grid(values.real, a, f_start, energy=energy(a))


def cross_wvd(u: SampledSignal, v: SampledSignal, f_start: Optional[float] = None) -> TFGrid:
    """Computes the cross Wigner-Ville distribution W(u, v).

    Args:
        u: the first signal
        v: the second signal, on the same grid as `u`

    Returns:
        the complex-valued distribution, whose Riemann sum is the inner product <u, v>

    Raises:
        InvalidSignalError: if the two signals are not on the same grid
    """
    if u.n != v.n or u.sample_rate != v.sample_rate or u.t0 != v.t0:
        raise InvalidSignalError(
            f"signals should share their grid, got (n={u.n}, fs={u.sample_rate}, t0={u.t0}) "
            f"and (n={v.n}, fs={v.sample_rate}, t0={v.t0})"
        )
    return _to_grid(_lag_transform(u, v, f_start), u, f_start)


def gaussian_smooth(
    grid: TFGrid, alpha: float, beta: float, config: Optional[TfkitConfig] = None
) -> TFGrid:
    """Smooths a distribution with the unit-integral Gaussian pair.

    Convolves in time with exp(-pi t^2 / alpha) / sqrt(alpha) and in
    frequency with exp(-pi f^2 / beta) / sqrt(beta). The convolution runs
    in the ambiguity domain, where it is a product with
    exp(-pi alpha nu^2) exp(-pi beta tau^2).

    Args:
        grid: the distribution to smooth
        alpha: the time spread, > 0
        beta: the frequency spread, > 0
        config: the tolerances to use

    Returns:
        the smoothed distribution, real when `grid` is real

    Raises:
        ValueError: if alpha or beta is not positive
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError(f"alpha and beta should be positive, got {alpha} and {beta}")

    kernel = make("gaussian", alpha=alpha, beta=beta)
    smoothed = wvd_from_ambiguity(apply_kernel(ambiguity_from_wvd(grid), kernel)).values

    if grid.is_real:
        residue = np.max(np.abs(smoothed.imag))
        if residue > resolve_config(config).imag_residue * max(grid.peak, np.finfo(float).tiny):
            logger.warning("gaussian smoothing left an imaginary residue of %.3g", residue)
        smoothed = smoothed.real

    return grid.with_values(smoothed, kernel="gaussian", time_marginal=False, freq_marginal=False)


def _lag_transform(u: SampledSignal, v: SampledSignal, f_start: Optional[float]) -> np.ndarray:
    correlation = lag_product(u.samples, v.samples)
    # lags tau_m = 2 m dt, m in [-N/2, N/2)
    return continuous_ft(correlation, -u.n * u.dt, 2 * u.dt, dual_origin=f_start, axis=1)


def _to_grid(
    values: np.ndarray, a: SampledSignal, f_start: Optional[float], energy: Optional[float] = None
) -> TFGrid:
    t_axis, f_axis = tf_axes(a.n, a.sample_rate, t0=a.t0, f_start=f_start)
    return TFGrid(
        values=values, sample_rate=a.sample_rate, t_axis=t_axis, f_axis=f_axis, energy=energy
    )
