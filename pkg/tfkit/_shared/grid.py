"""Exposes the grid models housing distributions.

A `TFGrid` is a (time, frequency) lattice holding a Wigner-Ville or any
other quadratic distribution. An `AmbGrid` is its Fourier dual, a (delay,
Doppler) lattice. Both keep the sample rate and the origins needed to go
back and forth exactly.
"""

from typing import Optional

import numpy as np
from pydantic import ConfigDict, BaseModel, Field, field_validator, model_validator

from .transforms import dual_axis

AXIS_TOLERANCE = 1e-9


class AbstractGrid(BaseModel):
    """A base class for the 2D grids, TF and ambiguity alike.

    Attributes:
        values (np.ndarray): the N x N matrix of values, read-only
        sample_rate (float): the sample rate of the signal the grid came from
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    sample_rate: float = Field(gt=0)

    @field_validator("values", mode="before")
    @classmethod
    def _freeze_values(cls, value):
        array = np.array(value)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"values should be a square matrix, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("values should be finite")
        if not np.iscomplexobj(array):
            array = array.astype(float)
        array.flags.writeable = False
        return array

    @property
    def n(self) -> int:
        """the number of points along each axis"""
        return self.values.shape[0]

    @property
    def dt(self) -> float:
        """the sampling interval of the source signal"""
        return 1.0 / self.sample_rate

    @property
    def peak(self) -> float:
        """the largest magnitude on the grid"""
        return float(np.max(np.abs(self.values)))

    @property
    def is_real(self) -> bool:
        """whether the values are stored as reals"""
        return not np.iscomplexobj(self.values)


class TFGrid(AbstractGrid):
    """A distribution over a (time, frequency) lattice.

    Rows are time, columns are frequency. The frequency spacing is
    fs / (2N), which is what the half-lag Wigner-Ville sum produces.

    Attributes:
        t_axis (np.ndarray): the N sample instants, seconds
        f_axis (np.ndarray): the N frequencies, Hz
        energy (Optional[float]): the energy of the source signal, if known
        kernel (str): the name of the kernel that produced the grid
        time_marginal (bool): whether the kernel preserves the time marginal
        freq_marginal (bool): whether the kernel preserves the frequency marginal
    """

    t_axis: np.ndarray
    f_axis: np.ndarray
    energy: Optional[float] = None
    kernel: str = "wigner"
    time_marginal: bool = True
    freq_marginal: bool = True

    @field_validator("t_axis", "f_axis", mode="before")
    @classmethod
    def _freeze_axis(cls, value):
        return _as_axis(value)

    @model_validator(mode="after")
    def _check_axes(self):
        n = self.n
        if self.t_axis.shape != (n,) or self.f_axis.shape != (n,):
            raise ValueError("t_axis and f_axis should have one entry per row/column")
        _check_spacing(self.t_axis, self.dt, "t_axis")
        _check_spacing(self.f_axis, self.df, "f_axis")
        return self

    @property
    def df(self) -> float:
        """the frequency spacing, fs / (2N)"""
        return self.sample_rate / (2 * self.n)

    @property
    def t0(self) -> float:
        """the time of the first row"""
        return float(self.t_axis[0])

    @property
    def f_start(self) -> float:
        """the frequency of the first column"""
        return float(self.f_axis[0])

    @property
    def cell(self) -> float:
        """the area dt * df of one lattice cell"""
        return self.dt * self.df

    @property
    def mass(self) -> float:
        """the Riemann sum of the (real part of the) values"""
        return float(np.sum(np.real(self.values)) * self.cell)

    def with_values(self, values: np.ndarray, **updates) -> "TFGrid":
        """Gets a grid on the same lattice with other values.

        Args:
            values: the new N x N values
            updates: any other fields to replace

        Returns:
            the new grid
        """
        fields = dict(
            values=values,
            sample_rate=self.sample_rate,
            t_axis=self.t_axis,
            f_axis=self.f_axis,
            energy=self.energy,
            kernel=self.kernel,
            time_marginal=self.time_marginal,
            freq_marginal=self.freq_marginal,
        )
        fields.update(updates)
        return TFGrid(**fields)


class AmbGrid(AbstractGrid):
    """A distribution over a (delay, Doppler) lattice.

    Rows are delay, columns are Doppler. Delays are tau_m = 2 m dt for
    m in [-N/2, N/2) and Doppler frequencies are nu_l = (l - N/2) fs / N,
    so (0, 0) sits at index (N/2, N/2).

    Attributes:
        tau_axis (np.ndarray): the N delays, seconds
        nu_axis (np.ndarray): the N Doppler frequencies, Hz
        t_origin (float): the first instant of the paired TF grid
        f_origin (float): the first frequency of the paired TF grid
    """

    tau_axis: np.ndarray
    nu_axis: np.ndarray
    t_origin: float
    f_origin: float

    @field_validator("tau_axis", "nu_axis", mode="before")
    @classmethod
    def _freeze_axis(cls, value):
        return _as_axis(value)

    @model_validator(mode="after")
    def _check_axes(self):
        n = self.n
        if self.tau_axis.shape != (n,) or self.nu_axis.shape != (n,):
            raise ValueError("tau_axis and nu_axis should have one entry per row/column")
        _check_spacing(self.tau_axis, 2 * self.dt, "tau_axis")
        _check_spacing(self.nu_axis, self.sample_rate / n, "nu_axis")
        return self

    @property
    def center(self) -> complex:
        """the value at (tau, nu) = (0, 0)"""
        return complex(self.values[self.n // 2, self.n // 2])

    @property
    def cell(self) -> float:
        """the area of one lattice cell"""
        return float((2 * self.dt) * (self.sample_rate / self.n))

    def with_values(self, values: np.ndarray) -> "AmbGrid":
        """Gets a grid on the same lattice with other values."""
        return AmbGrid(
            values=values,
            sample_rate=self.sample_rate,
            tau_axis=self.tau_axis,
            nu_axis=self.nu_axis,
            t_origin=self.t_origin,
            f_origin=self.f_origin,
        )


def tf_axes(n: int, sample_rate: float, t0: Optional[float] = None, f_start: Optional[float] = None):
    """Gets the time and frequency axes of an N-point TF grid.

    Args:
        n: the number of samples
        sample_rate: the sample rate
        t0: the first instant; None centers the time axis at zero
        f_start: the first frequency; None centers the band [-fs/4, fs/4)

    Returns:
        the tuple (t_axis, f_axis)
    """
    dt = 1.0 / sample_rate
    t_axis = dual_axis(n, 1.0 / (n * dt)) if t0 is None else t0 + dt * np.arange(n)
    f_axis = dual_axis(n, 2 * dt, f_start)
    return t_axis, f_axis


def amb_axes(n: int, sample_rate: float):
    """Gets the delay and Doppler axes of an N-point ambiguity grid.

    Returns:
        the tuple (tau_axis, nu_axis)
    """
    dt = 1.0 / sample_rate
    return dual_axis(n, 1.0 / (2 * n * dt)), dual_axis(n, dt)


def _as_axis(value) -> np.ndarray:
    axis = np.array(value, dtype=float)
    if axis.ndim != 1:
        raise ValueError("an axis should be one dimensional")
    axis.flags.writeable = False
    return axis


def _check_spacing(axis: np.ndarray, step: float, name: str):
    if axis.shape[0] < 2:
        return
    spacing = np.diff(axis)
    if not np.allclose(spacing, step, rtol=AXIS_TOLERANCE, atol=0.0):
        raise ValueError(f"{name} should be uniformly spaced by {step}")
