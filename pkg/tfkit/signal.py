"""Exposes sampled signals, the test-signal factory and the Fourier contract.

The time axis is t[n] = t0 + n / fs and, on the Fourier side, the
frequency axis is f[k] = (k - N/2) fs / N, so zero frequency sits at bin
N/2. Continuous integrals are Riemann sums; signals are assumed negligible
outside the sampled window.

Typical usage example:

```python
from tfkit.signal import SignalSpec, generate, analytic

spec = SignalSpec(kind="gaussian", n=1024, sample_rate=32, parameters={"width": 1.0})
a = generate(spec)
```
"""

import enum
import logging
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import ConfigDict, BaseModel, Field, field_validator, model_validator
from scipy import fft as sp_fft
from scipy.signal import hilbert

from ._shared.transforms import continuous_ft, continuous_ift, dual_axis
from .errors import InvalidSignalError

logger = logging.getLogger(__name__)

REALNESS_TOLERANCE = 1e-12


class SampledSignal(BaseModel):
    """A uniformly sampled complex-valued signal.

    Attributes:
        samples (np.ndarray): the N complex samples, read-only. N is even and at least 2.
        sample_rate (float): samples per second
        t0 (float): the time of sample 0, seconds
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    samples: np.ndarray
    sample_rate: float = Field(gt=0)
    t0: float = 0.0

    @field_validator("samples", mode="before")
    @classmethod
    def _freeze_samples(cls, value):
        samples = np.array(value, dtype=complex).reshape(-1)
        if samples.shape[0] < 2 or samples.shape[0] % 2:
            raise InvalidSignalError(
                f"a signal should have an even number (>= 2) of samples, got {samples.shape[0]}"
            )
        if not np.all(np.isfinite(samples)):
            raise InvalidSignalError("samples should be finite")
        samples.flags.writeable = False
        return samples

    @property
    def n(self) -> int:
        """the number of samples"""
        return self.samples.shape[0]

    @property
    def dt(self) -> float:
        """the sampling interval"""
        return 1.0 / self.sample_rate

    @property
    def duration(self) -> float:
        """the span N / fs covered by the samples"""
        return self.n * self.dt

    @property
    def t_axis(self) -> np.ndarray:
        """the sample instants"""
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def f_axis(self) -> np.ndarray:
        """the frequencies of `fourier`, centered on zero"""
        return dual_axis(self.n, self.dt)

    def with_samples(self, samples: np.ndarray) -> "SampledSignal":
        """Gets a signal on the same grid with other samples."""
        return SampledSignal(samples=samples, sample_rate=self.sample_rate, t0=self.t0)


class SignalKind(str, enum.Enum):
    """The kinds of signals `generate` can build"""

    GAUSSIAN = "gaussian"
    LFM_CHIRP = "lfm_chirp"
    TONE = "tone"
    TWO_TONE = "two_tone"
    TWO_COMPONENT = "two_component"
    FROM_FILE = "from_file"


REQUIRED_PARAMETERS: Dict[SignalKind, Tuple[str, ...]] = {
    SignalKind.GAUSSIAN: ("width",),
    SignalKind.LFM_CHIRP: ("width", "rate"),
    SignalKind.TONE: ("center_frequency",),
    SignalKind.TWO_TONE: ("center_frequency", "separation"),
    SignalKind.TWO_COMPONENT: ("width", "separation"),
    SignalKind.FROM_FILE: (),
}

OPTIONAL_PARAMETERS = ("center_time", "center_frequency", "frequency_separation", "t0")


class SignalSpec(BaseModel):
    """The recipe for a test signal.

    Attributes:
        kind (SignalKind): the family of the signal
        parameters (Dict[str, float]): center_time (s), center_frequency (Hz),
            width (s), rate (Hz/s), separation (s for two_component, Hz for two_tone),
            frequency_separation (Hz, two_component only) and t0, the grid origin
            (default: -N / (2 fs), a grid centered on zero)
        n (Optional[int]): the number of samples; required except for from_file
        sample_rate (Optional[float]): the sample rate; required except for from_file
        path (Optional[str]): the signal file, for from_file
    """

    model_config = ConfigDict(frozen=True)

    kind: SignalKind
    parameters: Dict[str, float] = {}
    n: Optional[int] = Field(default=None, ge=2)
    sample_rate: Optional[float] = Field(default=None, gt=0)
    path: Optional[str] = None

    @model_validator(mode="after")
    def _check_parameters(self):
        missing = [key for key in REQUIRED_PARAMETERS[self.kind] if key not in self.parameters]
        if missing:
            raise ValueError(f"{self.kind.value} signals need the parameters {missing}")

        unknown = set(self.parameters) - set(REQUIRED_PARAMETERS[self.kind]) - set(OPTIONAL_PARAMETERS)
        if unknown:
            raise ValueError(f"unknown parameters for {self.kind.value}: {sorted(unknown)}")

        if self.kind is SignalKind.FROM_FILE:
            if self.path is None:
                raise ValueError("from_file signals need a path")
        elif self.n is None or self.sample_rate is None:
            raise ValueError(f"{self.kind.value} signals need n and sample_rate")

        if self.n is not None and self.n % 2:
            raise ValueError(f"n should be even, got {self.n}")

        if self.parameters.get("width", 1.0) <= 0:
            raise ValueError("width should be positive")
        return self

    def get(self, key: str, default: float = 0.0) -> float:
        """Gets a parameter, falling back to `default`."""
        return float(self.parameters.get(key, default))


def generate(spec: SignalSpec) -> SampledSignal:
    """Builds the signal a `SignalSpec` describes.

    Synthetic signals are normalized to unit energy. The gaussian kind is
    g(t) = 2^(1/4) exp(-pi (t - t_c)^2 / w^2) / sqrt(w), modulated to the
    center frequency; lfm_chirp multiplies it by exp(j pi k (t - t_c)^2).

    Args:
        spec: the recipe

    Returns:
        the sampled signal

    Raises:
        InvalidSignalError: if the signal cannot be built e.g. it is identically zero
    """
    if spec.kind is SignalKind.FROM_FILE:
        return _load(spec)

    t0 = spec.get("t0", -spec.n / (2 * spec.sample_rate))
    t = t0 + np.arange(spec.n) / spec.sample_rate
    t_c = spec.get("center_time")
    f_c = spec.get("center_frequency")

    if spec.kind is SignalKind.GAUSSIAN:
        samples = _gaussian(t, t_c, f_c, spec.get("width"))

    elif spec.kind is SignalKind.LFM_CHIRP:
        samples = _gaussian(t, t_c, f_c, spec.get("width"))
        samples = samples * np.exp(1j * np.pi * spec.get("rate") * (t - t_c) ** 2)

    elif spec.kind is SignalKind.TONE:
        samples = np.exp(2j * np.pi * f_c * t)

    elif spec.kind is SignalKind.TWO_TONE:
        half = spec.get("separation") / 2
        samples = np.exp(2j * np.pi * (f_c - half) * t) + np.exp(2j * np.pi * (f_c + half) * t)

    else:
        half_t = spec.get("separation") / 2
        half_f = spec.get("frequency_separation") / 2
        width = spec.get("width")
        samples = _gaussian(t, t_c - half_t, f_c - half_f, width) + _gaussian(
            t, t_c + half_t, f_c + half_f, width
        )

    signal = SampledSignal(samples=samples, sample_rate=spec.sample_rate, t0=t0)
    logger.debug("generated %s signal, n=%d, fs=%g", spec.kind.value, spec.n, spec.sample_rate)
    return normalize(signal)


def dft(x: np.ndarray) -> np.ndarray:
    """Computes the discrete Fourier transform with kernel exp(-j2pi nk/N)."""
    return sp_fft.fft(np.asarray(x, dtype=complex))


def idft(x: np.ndarray) -> np.ndarray:
    """Inverts `dft`."""
    return sp_fft.ifft(np.asarray(x, dtype=complex))


def fourier(x: SampledSignal) -> Tuple[np.ndarray, np.ndarray]:
    """Approximates the continuous Fourier transform A(f) of a signal.

    A(f_k) = dt * sum_n x[n] exp(-j2pi f_k t_n) on f_k = (k - N/2) fs / N.

    Args:
        x: the signal

    Returns:
        the tuple (f_axis, spectrum)
    """
    return x.f_axis, continuous_ft(x.samples, x.t0, x.dt)


def inverse_fourier(spectrum: np.ndarray, like: SampledSignal) -> SampledSignal:
    """Recovers the signal whose `fourier` spectrum is given.

    Args:
        spectrum: values on the centered frequency axis of `like`
        like: a signal on the target time grid

    Returns:
        the signal on the grid of `like`
    """
    return like.with_samples(continuous_ift(spectrum, like.t0, like.dt))


def spectrum(x: SampledSignal, oversample: int = 1, f_start: Optional[float] = None):
    """Computes the Fourier transform on a finer (zero-padded) frequency axis.

    Args:
        x: the signal
        oversample: the zero-padding factor; the spacing becomes fs / (oversample N)
        f_start: the first frequency of the axis (None: centered)

    Returns:
        the tuple (f_axis, spectrum), each with oversample * N points
    """
    padded = np.concatenate([x.samples, np.zeros((oversample - 1) * x.n, dtype=complex)])
    axis = dual_axis(padded.shape[0], x.dt, f_start)
    return axis, continuous_ft(padded, x.t0, x.dt, dual_origin=f_start)


def evaluate(x: SampledSignal, times: np.ndarray) -> np.ndarray:
    """Evaluates the band-limited interpolant of a signal at arbitrary instants.

    The interpolant is the Fourier series of `fourier(x)`, so at the sample
    instants it returns the samples themselves.

    Args:
        x: the signal
        times: the instants, seconds

    Returns:
        the interpolated values, shaped like `times`
    """
    times = np.asarray(times, dtype=float)
    freqs, values = fourier(x)
    df = x.sample_rate / x.n
    phases = np.exp(2j * np.pi * np.outer(times.reshape(-1), freqs))
    return (phases @ values * df).reshape(times.shape)


def evaluate_spectrum(x: SampledSignal, freqs: np.ndarray, sign: int = -1) -> np.ndarray:
    """Evaluates dt * sum_n x[n] exp(sign * j2pi f t_n) at arbitrary frequencies."""
    freqs = np.asarray(freqs, dtype=float)
    phases = np.exp(sign * 2j * np.pi * np.outer(freqs.reshape(-1), x.t_axis))
    return (phases @ x.samples * x.dt).reshape(freqs.shape)


def is_self_dual(x: SampledSignal) -> bool:
    """Checks whether the time axis and the `fourier` frequency axis coincide.

    That is the case when fs^2 = N and the time axis is centered on zero.
    """
    return bool(
        np.isclose(x.sample_rate**2, x.n, rtol=1e-12)
        and np.allclose(x.t_axis, x.f_axis, rtol=0.0, atol=1e-12 * x.duration)
    )


def analytic(x: SampledSignal) -> SampledSignal:
    """Converts a real signal into its analytic signal x + jH{x}.

    Negative-frequency bins are zeroed, positive ones doubled, DC and
    Nyquist kept as they are.

    Args:
        x: a real-valued signal (imaginary parts below 1e-12 of the peak)

    Returns:
        the analytic signal, whose real part is `x`

    Raises:
        InvalidSignalError: if `x` is not real-valued
    """
    peak = np.max(np.abs(x.samples))
    if np.max(np.abs(x.samples.imag)) > REALNESS_TOLERANCE * peak:
        raise InvalidSignalError("the analytic signal needs a real-valued input")
    if peak == 0:
        return x.with_samples(np.zeros(x.n, dtype=complex))
    return x.with_samples(hilbert(x.samples.real))


def energy(x: SampledSignal) -> float:
    """Computes the energy sum_n |x[n]|^2 dt."""
    return float(np.sum(np.abs(x.samples) ** 2) * x.dt)


def norm2(x: SampledSignal) -> float:
    """Computes the L2 norm sqrt(sum_n |x[n]|^2 dt)."""
    return float(np.sqrt(energy(x)))


def normalize(x: SampledSignal) -> SampledSignal:
    """Rescales a signal to unit L2 norm.

    Raises:
        InvalidSignalError: if the signal is identically zero
    """
    norm = norm2(x)
    if norm == 0:
        raise InvalidSignalError("cannot normalize an all-zero signal")
    return x.with_samples(x.samples / norm)


def _gaussian(t: np.ndarray, t_c: float, f_c: float, width: float) -> np.ndarray:
    envelope = 2**0.25 * np.exp(-np.pi * (t - t_c) ** 2 / width**2) / np.sqrt(width)
    return envelope * np.exp(2j * np.pi * f_c * t)


def _load(spec: SignalSpec) -> SampledSignal:
    from .io import read_signal

    signal = read_signal(spec.path)
    if spec.n is not None and spec.n != signal.n:
        raise InvalidSignalError(f"{spec.path} holds {signal.n} samples, expected {spec.n}")
    if spec.sample_rate is not None and not np.isclose(spec.sample_rate, signal.sample_rate):
        raise InvalidSignalError(
            f"{spec.path} is sampled at {signal.sample_rate}, expected {spec.sample_rate}"
        )
    return signal
