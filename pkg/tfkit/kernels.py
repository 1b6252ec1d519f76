"""Exposes the catalogue of ambiguity-domain kernels g(tau, nu).

A quadratic distribution is the Wigner-Ville grid filtered by a kernel in
the ambiguity domain. The kernel decides which marginals survive:
g(0, nu) = 1 for all nu keeps the time marginal, g(tau, 0) = 1 for all tau
keeps the frequency marginal.

Typical usage example:

```python
from tfkit.kernels import make, parse_kernel, is_time_marginal

rihaczek = make("rihaczek")
smoothing = parse_kernel("gaussian:alpha=0.6,beta=0.5", like=signal)
```
"""

import enum
import logging
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from pydantic import ConfigDict, BaseModel
from scipy.ndimage import map_coordinates

from .ambiguity import direct_ambiguity
from .config import TfkitConfig, resolve_config
from .errors import UnknownKernelError
from .signal import SampledSignal, SignalSpec, generate

logger = logging.getLogger(__name__)

KernelFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]
Factor = Callable[[np.ndarray], np.ndarray]


class KernelName(str, enum.Enum):
    """The kernels `make` knows how to build"""

    WIGNER = "wigner"
    GAUSSIAN = "gaussian"
    RIHACZEK = "rihaczek"
    LEVIN = "levin"
    PAGE = "page"
    BORN_JORDAN = "born_jordan"
    SPECTROGRAM = "spectrogram"


class Kernel(BaseModel):
    """An ambiguity-domain filter g(tau, nu).

    Attributes:
        name (str): the name of the kernel
        evaluate (Callable): the vectorised function (tau, nu) -> g
        separable (Optional[Tuple[Callable, Callable]]): the factors (G1(nu), g2(tau))
            when g(tau, nu) = G1(nu) g2(tau)
        params (Dict[str, float]): the parameters the kernel was built with
        hermitian (bool): whether g(-tau, -nu) = conj(g(tau, nu)), which makes
            the distribution of a single signal real
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    evaluate: KernelFunction
    separable: Optional[Tuple[Factor, Factor]] = None
    params: Dict[str, float] = {}
    hermitian: bool = True

    def __call__(self, tau, nu) -> np.ndarray:
        tau, nu = np.broadcast_arrays(np.asarray(tau, dtype=float), np.asarray(nu, dtype=float))
        return np.asarray(self.evaluate(tau, nu), dtype=complex)

    def on_grid(self, tau_axis: np.ndarray, nu_axis: np.ndarray) -> np.ndarray:
        """Evaluates the kernel on the outer product of two axes.

        Args:
            tau_axis: the delays, one per row
            nu_axis: the Doppler frequencies, one per column

        Returns:
            the matrix g(tau_i, nu_j)
        """
        if self.separable is not None:
            doppler, delay = self.separable
            return np.outer(delay(np.asarray(tau_axis)), doppler(np.asarray(nu_axis))).astype(complex)
        tau, nu = np.meshgrid(tau_axis, nu_axis, indexing="ij")
        return self(tau, nu)


def make(name: str, **params) -> Kernel:
    """Builds a kernel from the catalogue.

    Args:
        name: one of wigner, gaussian, rihaczek, levin, page, born_jordan, spectrogram
        params: alpha and beta (both > 0) for gaussian; window (a SampledSignal)
            for spectrogram

    Returns:
        the kernel

    Raises:
        UnknownKernelError: if the name or the parameters are not recognised
    """
    try:
        kind = KernelName(name)
    except ValueError:
        raise UnknownKernelError(f"unknown kernel {name!r}")

    if kind is KernelName.GAUSSIAN:
        return _gaussian(**params)
    if kind is KernelName.SPECTROGRAM:
        return _spectrogram(**params)

    if params:
        raise UnknownKernelError(f"the {kind.value} kernel takes no parameters, got {sorted(params)}")

    if kind is KernelName.WIGNER:
        return Kernel(name=kind.value, evaluate=_unit_kernel, separable=(_ones, _ones))
    if kind is KernelName.RIHACZEK:
        return Kernel(name=kind.value, evaluate=_rihaczek_kernel, hermitian=False)
    if kind is KernelName.LEVIN:
        return Kernel(name=kind.value, evaluate=_levin_kernel)
    if kind is KernelName.PAGE:
        return Kernel(name=kind.value, evaluate=_page_kernel)
    return Kernel(name=kind.value, evaluate=_born_jordan_kernel)


def parse_kernel(text: str, like: Optional[SampledSignal] = None) -> Kernel:
    """Builds a kernel from its command-line form `name[:key=value,...]`.

    e.g. `gaussian:alpha=0.6,beta=0.5` or `spectrogram:width=0.5`.

    Args:
        text: the kernel description
        like: the signal the kernel will be applied to; the spectrogram
            window is built on its grid

    Returns:
        the kernel

    Raises:
        UnknownKernelError: if the description cannot be understood
    """
    name, _, raw_params = text.strip().partition(":")
    params: Dict[str, float] = {}
    for pair in filter(None, (part.strip() for part in raw_params.split(","))):
        key, sep, value = pair.partition("=")
        try:
            if not sep:
                raise ValueError(pair)
            params[key.strip()] = float(value)
        except ValueError:
            raise UnknownKernelError(f"malformed kernel parameter {pair!r} in {text!r}")

    if name == KernelName.SPECTROGRAM.value:
        if like is None:
            raise UnknownKernelError("a spectrogram kernel needs the signal it will be applied to")
        width = params.pop("width", 1.0)
        if params:
            raise UnknownKernelError(f"the spectrogram kernel takes only width, got {sorted(params)}")
        return make(name, window=gaussian_window(like, width))

    return make(name, **params)


def gaussian_window(like: SampledSignal, width: float) -> SampledSignal:
    """Builds a unit-energy Gaussian window centered on t = 0 on the grid of `like`."""
    if width <= 0:
        raise UnknownKernelError(f"the window width should be positive, got {width}")
    spec = SignalSpec(
        kind="gaussian",
        n=like.n,
        sample_rate=like.sample_rate,
        parameters={"width": width, "t0": like.t0},
    )
    return generate(spec)


def is_time_marginal(kernel: Kernel, nu_axis: np.ndarray, config: Optional[TfkitConfig] = None) -> bool:
    """Checks g(0, nu) = 1 at every Doppler frequency of the axis.

    Args:
        kernel: the kernel to check
        nu_axis: the Doppler frequencies to check at
        config: the tolerances to use

    Returns:
        True if the kernel keeps the time marginal
    """
    nu_axis = np.asarray(nu_axis, dtype=float)
    deviation = np.abs(kernel(np.zeros_like(nu_axis), nu_axis) - 1)
    return bool(np.all(deviation < resolve_config(config).marginal_tolerance))


def is_freq_marginal(kernel: Kernel, tau_axis: np.ndarray, config: Optional[TfkitConfig] = None) -> bool:
    """Checks g(tau, 0) = 1 at every delay of the axis."""
    tau_axis = np.asarray(tau_axis, dtype=float)
    deviation = np.abs(kernel(tau_axis, np.zeros_like(tau_axis)) - 1)
    return bool(np.all(deviation < resolve_config(config).marginal_tolerance))


def _gaussian(alpha: Optional[float] = None, beta: Optional[float] = None, **rest) -> Kernel:
    if rest:
        raise UnknownKernelError(f"the gaussian kernel takes alpha and beta, got {sorted(rest)}")
    if alpha is None or beta is None:
        raise UnknownKernelError("the gaussian kernel needs both alpha and beta")
    if alpha <= 0 or beta <= 0:
        raise UnknownKernelError(f"alpha and beta should be positive, got {alpha} and {beta}")

    # transforms of the unit-integral smoothing pair exp(-pi t^2/alpha)/sqrt(alpha)
    # and exp(-pi f^2/beta)/sqrt(beta)
    def doppler(nu):
        return np.exp(-np.pi * alpha * np.asarray(nu) ** 2).astype(complex)

    def delay(tau):
        return np.exp(-np.pi * beta * np.asarray(tau) ** 2).astype(complex)

    def evaluate(tau, nu):
        return doppler(nu) * delay(tau)

    return Kernel(
        name=KernelName.GAUSSIAN.value,
        evaluate=evaluate,
        separable=(doppler, delay),
        params={"alpha": float(alpha), "beta": float(beta)},
    )


def _spectrogram(window: Optional[SampledSignal] = None, **rest) -> Kernel:
    if rest:
        raise UnknownKernelError(f"the spectrogram kernel takes a window, got {sorted(rest)}")
    if not isinstance(window, SampledSignal):
        raise UnknownKernelError("the spectrogram kernel needs a SampledSignal window")

    amb = direct_ambiguity(window)
    tau0, d_tau = amb.tau_axis[0], amb.tau_axis[1] - amb.tau_axis[0]
    nu0, d_nu = amb.nu_axis[0], amb.nu_axis[1] - amb.nu_axis[0]

    def evaluate(tau, nu):
        # g(tau, nu) = A_w(-tau, -nu)
        tau, nu = np.asarray(tau), np.asarray(nu)
        coords = np.stack([(-tau.ravel() - tau0) / d_tau, (-nu.ravel() - nu0) / d_nu])
        real = map_coordinates(amb.values.real, coords, order=1, mode="constant", cval=0.0)
        imag = map_coordinates(amb.values.imag, coords, order=1, mode="constant", cval=0.0)
        return (real + 1j * imag).reshape(tau.shape)

    logger.debug("built a spectrogram kernel from a %d-point window", window.n)
    return Kernel(
        name=KernelName.SPECTROGRAM.value,
        evaluate=evaluate,
        params={"window_energy": float(amb.center.real)},
    )


def _ones(x: np.ndarray) -> np.ndarray:
    return np.ones_like(np.asarray(x, dtype=float), dtype=complex)


def _unit_kernel(tau: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return _ones(tau)


def _rihaczek_kernel(tau: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return np.exp(1j * np.pi * tau * nu)


def _levin_kernel(tau: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return np.exp(-1j * np.pi * np.abs(tau) * nu)


def _page_kernel(tau: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return np.exp(1j * np.pi * np.abs(tau) * nu)


def _born_jordan_kernel(tau: np.ndarray, nu: np.ndarray) -> np.ndarray:
    # np.sinc is sin(pi x) / (pi x), 1 at x = 0
    return np.sinc(tau * nu).astype(complex)
