"""Exposes covariance matrices of distributions and the uncertainty checks.

Phase space is (t, f) with the exp(-j2pi ft) Fourier convention, so the
effective Planck constant is 1 / (2 pi) and every bound below shares the
constant 1 / (16 pi^2).

Typical usage example:

```python
from tfkit.moments import covariance, uncertainty_report
from tfkit.wigner import wvd

cov = covariance(wvd(a))
report = uncertainty_report(a)
```
"""

import logging
from typing import Literal, Optional

import numpy as np
from pydantic import ConfigDict, BaseModel, Field

from ._shared.grid import TFGrid
from .config import TfkitConfig, resolve_config
from .errors import NonMarginalKernelError, NumericalError
from .kernels import Kernel, make
from .signal import SampledSignal, energy, fourier, inverse_fourier
from .tfd import compute_tfd

logger = logging.getLogger(__name__)

HBAR_EFF = 1.0 / (2 * np.pi)
HEISENBERG_CONSTANT = 1.0 / (16 * np.pi**2)
NEGATIVE_VARIANCE_FLOOR = -1e-10
MIN_MASS_FRACTION = 1e-6
REPORT_SCHEMA = "tfkit-report/1"


class CovarianceMatrix(BaseModel):
    """The means and second central moments of a normalized distribution.

    Attributes:
        var_t (float): the time variance, s^2
        var_f (float): the frequency variance, Hz^2
        cov_tf (float): the time-frequency covariance, s Hz
        mean_t (float): the mean time, s
        mean_f (float): the mean frequency, Hz
        total_mass (float): the mass of the distribution before normalization
    """

    model_config = ConfigDict(frozen=True)

    var_t: float = Field(ge=0)
    var_f: float = Field(ge=0)
    cov_tf: float
    mean_t: float = 0.0
    mean_f: float = 0.0
    total_mass: float = 1.0

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, means=(0.0, 0.0), total_mass: float = 1.0):
        """Builds a covariance from a symmetric 2 x 2 matrix, ordered (t, f)."""
        matrix = np.asarray(matrix, dtype=float)
        return cls(
            var_t=float(matrix[0, 0]),
            var_f=float(matrix[1, 1]),
            cov_tf=float((matrix[0, 1] + matrix[1, 0]) / 2),
            mean_t=float(means[0]),
            mean_f=float(means[1]),
            total_mass=total_mass,
        )

    def matrix(self) -> np.ndarray:
        """Gets the 2 x 2 matrix [[var_t, cov_tf], [cov_tf, var_f]]."""
        return np.array([[self.var_t, self.cov_tf], [self.cov_tf, self.var_f]])

    def means(self) -> np.ndarray:
        """Gets the vector (mean_t, mean_f)."""
        return np.array([self.mean_t, self.mean_f])

    @property
    def det(self) -> float:
        """the determinant var_t var_f - cov_tf^2"""
        return self.var_t * self.var_f - self.cov_tf**2

    @property
    def strong_det(self) -> float:
        """det(C + i (hbar_eff / 2) J) = var_t var_f - cov_tf^2 - 1 / (16 pi^2)"""
        return self.det - HEISENBERG_CONSTANT


class HeisenbergResult(BaseModel):
    """The outcome of the signal-level Heisenberg check."""

    model_config = ConfigDict(frozen=True)

    lhs: float
    rhs: float
    ratio: float
    holds: bool


class Relation1Result(BaseModel):
    """The outcome of the marginal-distribution spread check.

    `status` is "not-applicable" when the distribution lacks a marginal, in
    which case the numeric fields are None.
    """

    model_config = ConfigDict(frozen=True)

    status: Literal["ok", "violated", "not-applicable"]
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    ratio: Optional[float] = None
    t0: Optional[float] = None
    f0: Optional[float] = None


class StrongUncertaintyResult(BaseModel):
    """The outcome of the strong (matrix) uncertainty check."""

    model_config = ConfigDict(frozen=True)

    det: float
    psd: bool
    tolerance: float


class UncertaintyReport(BaseModel):
    """All uncertainty checks for one signal and one kernel.

    Attributes:
        schema_version (str): the report schema, serialized as "schema"
        kernel (str): the kernel of the distribution the moments came from
        energy (float): the signal energy ||a||^2
        covariance (CovarianceMatrix): the covariance of the distribution
        heisenberg (HeisenbergResult): the signal-level Heisenberg check
        relation1 (Relation1Result): the second-moment check on the distribution
        strong (StrongUncertaintyResult): the strong uncertainty check
        passed (bool): whether every applicable check holds
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_version: Literal["tfkit-report/1"] = Field(default=REPORT_SCHEMA, alias="schema")
    kernel: str
    energy: float
    covariance: CovarianceMatrix
    heisenberg: HeisenbergResult
    relation1: Relation1Result
    strong: StrongUncertaintyResult
    passed: bool

    @property
    def heisenberg_lhs(self) -> float:
        return self.heisenberg.lhs

    @property
    def heisenberg_rhs(self) -> float:
        return self.heisenberg.rhs

    @property
    def relation1_lhs(self) -> Optional[float]:
        return self.relation1.lhs

    @property
    def relation1_rhs(self) -> Optional[float]:
        return self.relation1.rhs

    @property
    def strong_det(self) -> float:
        return self.strong.det

    @property
    def strong_psd(self) -> bool:
        return self.strong.psd


def covariance(grid: TFGrid) -> CovarianceMatrix:
    """Computes the covariance matrix of a distribution by Riemann sums.

    The distribution is renormalized to unit mass first. Negative lobes
    count as they are.

    Args:
        grid: the distribution; complex grids contribute their real part

    Returns:
        the covariance matrix

    Raises:
        NumericalError: if the mass is not positive, is below 1e-6 of the
            signal energy, or a variance is clearly negative
    """
    values = np.real(grid.values)
    mass = float(np.sum(values) * grid.cell)
    if not mass > 0:
        raise NumericalError(f"the distribution has a non-positive mass {mass:.3g}")
    if grid.energy is not None and mass < MIN_MASS_FRACTION * grid.energy:
        raise NumericalError(
            f"the distribution mass {mass:.3g} is negligible against the energy {grid.energy:.3g}"
        )

    weights = values * grid.cell / mass
    t = grid.t_axis[:, None]
    f = grid.f_axis[None, :]
    mean_t = float(np.sum(weights * t))
    mean_f = float(np.sum(weights * f))
    var_t = float(np.sum(weights * (t - mean_t) ** 2))
    var_f = float(np.sum(weights * (f - mean_f) ** 2))
    cov_tf = float(np.sum(weights * (t - mean_t) * (f - mean_f)))

    return CovarianceMatrix(
        var_t=_clip_variance("var_t", var_t),
        var_f=_clip_variance("var_f", var_f),
        cov_tf=cov_tf,
        mean_t=mean_t,
        mean_f=mean_f,
        total_mass=mass,
    )


def signal_moments(a: SampledSignal) -> CovarianceMatrix:
    """Computes the covariance straight from a signal, without any distribution.

    The variances come from |a(t)|^2 and |A(f)|^2. The covariance uses the
    instantaneous frequency: <t f> = integral t Im(conj(a) a') dt / (2 pi),
    with a' the band-limited derivative.

    Raises:
        NumericalError: if the signal is identically zero
    """
    mass = energy(a)
    if not mass > 0:
        raise NumericalError("cannot take the moments of an all-zero signal")

    t = a.t_axis
    density_t = np.abs(a.samples) ** 2 * a.dt / mass
    freqs, values = fourier(a)
    density_f = np.abs(values) ** 2 * (a.sample_rate / a.n) / mass

    mean_t = float(np.sum(density_t * t))
    mean_f = float(np.sum(density_f * freqs))
    derivative = inverse_fourier(2j * np.pi * freqs * values, a).samples
    flow = np.imag(np.conj(a.samples) * derivative)
    mean_tf = float(np.sum(t * flow) * a.dt / (2 * np.pi * mass))

    return CovarianceMatrix(
        var_t=_clip_variance("var_t", float(np.sum(density_t * (t - mean_t) ** 2))),
        var_f=_clip_variance("var_f", float(np.sum(density_f * (freqs - mean_f) ** 2))),
        cov_tf=mean_tf - mean_t * mean_f,
        mean_t=mean_t,
        mean_f=mean_f,
        total_mass=mass,
    )


def heisenberg_check(a: SampledSignal, config: Optional[TfkitConfig] = None) -> HeisenbergResult:
    """Checks integral (t - <t>)^2 |a|^2 dt * integral (f - <f>)^2 |A|^2 df >= ||a||^4 / (16 pi^2).

    Args:
        a: the signal, normalized or not
        config: the tolerances to use

    Returns:
        the two sides, their ratio and whether the bound holds within the slack

    Raises:
        NumericalError: if the signal is identically zero
    """
    moments = signal_moments(a)
    mass = moments.total_mass
    lhs = (moments.var_t * mass) * (moments.var_f * mass)
    rhs = mass**2 * HEISENBERG_CONSTANT
    slack = resolve_config(config).inequality_slack
    return HeisenbergResult(lhs=lhs, rhs=rhs, ratio=lhs / rhs, holds=lhs >= rhs * (1 - slack))


def relation1_check(
    grid: TFGrid,
    a: SampledSignal,
    t0: Optional[float] = None,
    f0: Optional[float] = None,
    config: Optional[TfkitConfig] = None,
) -> Relation1Result:
    """Checks integral (|t - t0|^2 + |f - f0|^2) rho dt df >= ||a||^2 / (2 pi).

    The distribution is rescaled so its mass is ||a||^2. The sum is
    smallest when (t0, f0) are the means, which is the default.

    Args:
        grid: a distribution that keeps both marginals
        a: the signal it was built from
        t0: the reference time (None: the mean time)
        f0: the reference frequency (None: the mean frequency)
        config: the tolerances to use

    Returns:
        the two sides, their ratio and the verdict

    Raises:
        NonMarginalKernelError: if the distribution lacks a marginal
    """
    if not (grid.time_marginal and grid.freq_marginal):
        raise NonMarginalKernelError(
            f"the {grid.kernel} distribution does not keep both marginals"
        )

    moments = covariance(grid)
    t0 = moments.mean_t if t0 is None else t0
    f0 = moments.mean_f if f0 is None else f0
    mass = energy(a)

    spread = moments.var_t + (moments.mean_t - t0) ** 2 + moments.var_f + (moments.mean_f - f0) ** 2
    lhs = mass * spread
    rhs = mass / (2 * np.pi)
    slack = resolve_config(config).inequality_slack
    return Relation1Result(
        status="ok" if lhs >= rhs * (1 - slack) else "violated",
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs,
        t0=t0,
        f0=f0,
    )


def strong_uncertainty_check(
    cov: CovarianceMatrix, config: Optional[TfkitConfig] = None
) -> StrongUncertaintyResult:
    """Checks that C + i (hbar_eff / 2) J is positive semi-definite.

    Args:
        cov: the covariance matrix
        config: the tolerances to use

    Returns:
        det(C + i (hbar_eff / 2) J) and whether it clears -tolerance,
        tolerance being `strong_tolerance * var_t * var_f`
    """
    tolerance = resolve_config(config).strong_tolerance * cov.var_t * cov.var_f
    det = cov.strong_det
    return StrongUncertaintyResult(
        det=det,
        psd=bool(det >= -tolerance and cov.var_t + cov.var_f >= 0),
        tolerance=tolerance,
    )


def uncertainty_report(
    a: SampledSignal,
    kernel: Optional[Kernel] = None,
    t0: Optional[float] = None,
    f0: Optional[float] = None,
    config: Optional[TfkitConfig] = None,
) -> UncertaintyReport:
    """Runs every uncertainty check on a signal.

    Args:
        a: the signal
        kernel: the kernel of the distribution to take moments of (default: wigner)
        t0: the reference time of the spread check (None: the mean)
        f0: the reference frequency of the spread check (None: the mean)
        config: the tolerances to use

    Returns:
        the report
    """
    kernel = kernel if kernel is not None else make("wigner")
    grid = compute_tfd(a, kernel, config=config)
    cov = covariance(grid)
    heisenberg = heisenberg_check(a, config=config)
    strong = strong_uncertainty_check(cov, config=config)

    try:
        relation1 = relation1_check(grid, a, t0=t0, f0=f0, config=config)
    except NonMarginalKernelError as exp:
        logger.info("skipping the spread check: %s", exp)
        relation1 = Relation1Result(status="not-applicable")

    return UncertaintyReport(
        kernel=kernel.name,
        energy=energy(a),
        covariance=cov,
        heisenberg=heisenberg,
        relation1=relation1,
        strong=strong,
        passed=heisenberg.holds and relation1.status != "violated" and strong.psd,
    )


def _clip_variance(name: str, value: float) -> float:
    if value >= 0:
        return value
    if value >= NEGATIVE_VARIANCE_FLOOR:
        logger.warning("clipping %s = %.3g to zero", name, value)
        return 0.0
    raise NumericalError(f"{name} is negative ({value:.3g})")
