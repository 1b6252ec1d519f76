"""Exposes general quadratic time-frequency distributions.

A distribution is the Wigner-Ville grid of a signal filtered by a kernel
in the ambiguity domain: wvd -> ambiguity -> kernel -> back. This module
also holds the marginals and the grid scans used to check them.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from pydantic import ConfigDict, BaseModel

from ._shared.grid import TFGrid
from .ambiguity import ambiguity_from_wvd, apply_kernel, wvd_from_ambiguity
from .config import TfkitConfig, resolve_config
from .kernels import Kernel, is_freq_marginal, is_time_marginal
from .signal import SampledSignal, spectrum
from .wigner import wvd

logger = logging.getLogger(__name__)


class GridExtremum(BaseModel):
    """The extreme value of a grid and where it sits.

    Attributes:
        value (float): the extreme value
        t (float): the time at which it occurs, seconds
        f (float): the frequency at which it occurs, Hz
        index (Tuple[int, int]): the (row, column) of the value
    """

    model_config = ConfigDict(frozen=True)

    value: float
    t: float
    f: float
    index: Tuple[int, int]


def compute_tfd(
    a: SampledSignal,
    kernel: Kernel,
    f_start: Optional[float] = None,
    keep_complex: bool = False,
    config: Optional[TfkitConfig] = None,
) -> TFGrid:
    """Computes the quadratic distribution of a signal for a given kernel.

    Args:
        a: the signal
        kernel: the ambiguity-domain kernel
        f_start: the first frequency of the rendered band (None: [-fs/4, fs/4))
        keep_complex: whether to return the complex grid instead of its real part
        config: the tolerances to use

    Returns:
        the distribution, tagged with the kernel name and its marginality
    """
    config = resolve_config(config)
    base = wvd(a, f_start=f_start)
    amb = ambiguity_from_wvd(base)
    values = wvd_from_ambiguity(apply_kernel(amb, kernel)).values

    if not keep_complex:
        residue = float(np.max(np.abs(values.imag)))
        peak = float(np.max(np.abs(values)))
        if kernel.hermitian and residue > config.imag_residue * peak:
            logger.warning(
                "the %s distribution has an imaginary residue of %.3g of its peak",
                kernel.name,
                residue / peak,
            )
        else:
            logger.debug("dropping an imaginary residue of %.3g (%s kernel)", residue, kernel.name)
        values = values.real

    return base.with_values(
        values,
        kernel=kernel.name,
        time_marginal=is_time_marginal(kernel, amb.nu_axis, config=config),
        freq_marginal=is_freq_marginal(kernel, amb.tau_axis, config=config),
    )


def time_marginal(grid: TFGrid) -> np.ndarray:
    """Integrates a distribution over frequency, one value per instant."""
    return np.sum(np.real(grid.values), axis=1) * grid.df


def freq_marginal(grid: TFGrid) -> np.ndarray:
    """Integrates a distribution over time, one value per frequency."""
    return np.sum(np.real(grid.values), axis=0) * grid.dt


def signal_marginals(a: SampledSignal, grid: TFGrid) -> Tuple[np.ndarray, np.ndarray]:
    """Gets |a(t)|^2 and |A(f)|^2 on the axes of a distribution.

    Args:
        a: the signal the distribution was built from
        grid: the distribution

    Returns:
        the tuple (|a|^2 on the time axis, |A|^2 on the frequency axis)
    """
    _, values = spectrum(a, oversample=2, f_start=grid.f_start)
    return np.abs(a.samples) ** 2, np.abs(values[: grid.n]) ** 2


def min_scan(grid: TFGrid) -> GridExtremum:
    """Finds the smallest value of a distribution (its real part)."""
    return _extremum(grid, np.argmin)


def max_scan(grid: TFGrid) -> GridExtremum:
    """Finds the largest value of a distribution (its real part)."""
    return _extremum(grid, np.argmax)


def _extremum(grid: TFGrid, arg) -> GridExtremum:
    values = np.real(grid.values)
    row, col = np.unravel_index(arg(values), values.shape)
    return GridExtremum(
        value=float(values[row, col]),
        t=float(grid.t_axis[row]),
        f=float(grid.f_axis[col]),
        index=(int(row), int(col)),
    )
