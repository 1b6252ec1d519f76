"""Exposes the symmetric ambiguity function and ambiguity-domain filtering.

The ambiguity function is

    A(tau, nu) = integral a(t + tau/2) conj(a(t - tau/2)) exp(+j2pi nu t) dt

on delays tau_m = 2 m dt and Doppler frequencies nu_l = (l - N/2) fs / N.
It is computed from the Wigner-Ville grid by an exact pair of discrete
transforms, so W -> A -> W reproduces W to round-off.
"""

import logging
from typing import TYPE_CHECKING, Optional

import numpy as np

from ._shared.grid import AmbGrid, TFGrid, amb_axes, tf_axes
from ._shared.transforms import continuous_ft, continuous_ift, lag_product
from .signal import SampledSignal

if TYPE_CHECKING:
    from .kernels import Kernel

logger = logging.getLogger(__name__)

__all__ = [
    "AmbGrid",
    "ambiguity_from_wvd",
    "wvd_from_ambiguity",
    "direct_ambiguity",
    "apply_kernel",
    "volume",
]


def ambiguity_from_wvd(grid: TFGrid) -> AmbGrid:
    """Converts a (time, frequency) distribution into its ambiguity function.

    The frequency axis is mapped back to lags, then time is mapped to
    Doppler with the exp(+j2pi nu t) kernel.

    Args:
        grid: the distribution

    Returns:
        the ambiguity grid with rows indexed by delay and columns by Doppler
    """
    n, dt = grid.n, grid.dt
    correlation = continuous_ift(
        grid.values, -n * dt, 2 * dt, dual_origin=grid.f_start, sign=-1, axis=1
    )
    values = continuous_ft(correlation, grid.t0, dt, sign=1, axis=0)
    return _to_amb_grid(values.T, grid.sample_rate, grid.t0, grid.f_start)


def wvd_from_ambiguity(grid: AmbGrid) -> TFGrid:
    """Converts an ambiguity grid back into a (time, frequency) distribution.

    The result keeps complex values; callers decide whether the imaginary
    residue can be dropped.

    Args:
        grid: the (possibly filtered) ambiguity grid

    Returns:
        the distribution on the TF lattice the ambiguity grid pairs with
    """
    n, dt = grid.n, grid.dt
    correlation = continuous_ift(grid.values.T, grid.t_origin, dt, sign=1, axis=0)
    values = continuous_ft(
        correlation, -n * dt, 2 * dt, dual_origin=grid.f_origin, sign=-1, axis=1
    )
    t_axis, f_axis = tf_axes(n, grid.sample_rate, t0=grid.t_origin, f_start=grid.f_origin)
    return TFGrid(values=values, sample_rate=grid.sample_rate, t_axis=t_axis, f_axis=f_axis)


def direct_ambiguity(a: SampledSignal, f_start: Optional[float] = None) -> AmbGrid:
    """Computes the ambiguity function straight from the lag products of a signal.

    This does not go through the Wigner-Ville grid, so it cross-checks
    `ambiguity_from_wvd`.

    Args:
        a: the signal, preferably analytic
        f_start: the first frequency of the TF grid to pair with (None: centered band)

    Returns:
        the ambiguity grid
    """
    correlation = lag_product(a.samples, a.samples)
    values = continuous_ft(correlation, a.t0, a.dt, sign=1, axis=0)
    if f_start is None:
        f_start = float(tf_axes(a.n, a.sample_rate)[1][0])
    return _to_amb_grid(values.T, a.sample_rate, a.t0, f_start)


def apply_kernel(grid: AmbGrid, kernel: "Kernel") -> AmbGrid:
    """Multiplies an ambiguity grid pointwise by the kernel g(tau, nu).

    Args:
        grid: the ambiguity grid
        kernel: the kernel to filter with

    Returns:
        the filtered ambiguity grid
    """
    weights = kernel.on_grid(grid.tau_axis, grid.nu_axis)
    logger.debug("applying the %s kernel on a %d-point ambiguity grid", kernel.name, grid.n)
    return grid.with_values(grid.values * weights)


def volume(grid: AmbGrid) -> float:
    """Computes the ambiguity volume sum |A|^2 dtau dnu.

    For a self-ambiguity this is ||a||^4 and is unchanged by symplectic
    signal actions.
    """
    return float(np.sum(np.abs(grid.values) ** 2) * grid.cell)


def _to_amb_grid(values: np.ndarray, sample_rate: float, t_origin: float, f_origin: float) -> AmbGrid:
    tau_axis, nu_axis = amb_axes(values.shape[0], sample_rate)
    return AmbGrid(
        values=values,
        sample_rate=sample_rate,
        tau_axis=tau_axis,
        nu_axis=nu_axis,
        t_origin=t_origin,
        f_origin=f_origin,
    )
