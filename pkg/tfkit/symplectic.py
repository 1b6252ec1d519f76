"""Exposes SL(2, R) matrices, their generator words and their actions on signals.

Phase-space points are column vectors z = (t, f). A matrix S acts on a
distribution by W -> W(S^-1 z), which moves its covariance to S C S^T.
The generators and the signal operations realising them are:

    J    = [[0, 1], [-1, 0]]   act_fourier          (Fourier transform)
    t(k) = [[1, 0], [k, 1]]    act_chirp(a, -k)     (multiply by exp(+j pi k t^2))
    m(c) = [[c, 0], [0, 1/c]]  act_dilate(a, c)     (a(t / c) / sqrt(c))

Typical usage example:

```python
from tfkit.symplectic import GeneratorWord, act_word, factor, SL2Matrix

word = factor(SL2Matrix(a=2, b=1, c=1, d=1))
b = act_word(a, word)
same = act_word(a, GeneratorWord.parse("M(2),T(1)"))
```
"""

import logging
import re
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ConfigDict, BaseModel, model_validator
from scipy.ndimage import map_coordinates

from ._shared.grid import AmbGrid, TFGrid
from ._shared.transforms import continuous_ft
from .config import TfkitConfig, resolve_config
from .errors import NotSymplecticError, SupportOverflowError
from .moments import CovarianceMatrix, covariance
from .signal import (
    SampledSignal,
    energy,
    evaluate,
    evaluate_spectrum,
    fourier,
    is_self_dual,
)
from .wigner import wvd

logger = logging.getLogger(__name__)

SYMPLECTIC_TOLERANCE = 1e-10
# act_chirp(a, k) shears the TF plane by t(CHIRP_SHEAR_SIGN * k)
CHIRP_SHEAR_SIGN = -1

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
_TOKEN_PATTERN = re.compile(r"^(?:(?P<rotation>Jinv|J)|(?P<kind>[TM])\((?P<value>[^()]+)\))$")

MatrixLike = Union["SL2Matrix", np.ndarray, Sequence[Sequence[float]]]


class SL2Matrix(BaseModel):
    """A real 2 x 2 matrix of unit determinant, [[a, b], [c, d]]."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    d: float

    @model_validator(mode="after")
    def _check_determinant(self):
        if not is_symplectic(self.to_array()):
            raise ValueError(f"the determinant should be 1, got {self.a * self.d - self.b * self.c}")
        return self

    @classmethod
    def from_array(cls, matrix: MatrixLike) -> "SL2Matrix":
        """Builds the matrix from a 2 x 2 array.

        Raises:
            NotSymplecticError: if the matrix is not in SL(2, R)
        """
        array = _as_array(matrix)
        if not is_symplectic(array):
            raise NotSymplecticError(f"{array.tolist()} does not satisfy S^T J S = J")
        return cls(a=array[0, 0], b=array[0, 1], c=array[1, 0], d=array[1, 1])

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(a=self.d, b=-self.b, c=-self.c, d=self.a)

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix.from_array(self.to_array() @ other.to_array())


class Token(BaseModel):
    """One generator in a word: J, Jinv, T(k) = t(k) or M(c) = m(c).

    Attributes:
        kind (str): one of "J", "Jinv", "T", "M"
        value (Optional[float]): the shear k of T or the scale c > 0 of M
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["J", "Jinv", "T", "M"]
    value: Optional[float] = None

    @model_validator(mode="after")
    def _check_value(self):
        if self.kind in ("J", "Jinv") and self.value is not None:
            raise ValueError(f"{self.kind} takes no argument")
        if self.kind in ("T", "M") and self.value is None:
            raise ValueError(f"{self.kind} needs an argument")
        if self.kind == "M" and not self.value > 0:
            raise ValueError(f"M needs a positive argument, got {self.value}")
        return self

    def matrix(self) -> np.ndarray:
        """Gets the 2 x 2 matrix of the generator."""
        if self.kind == "J":
            return _J.copy()
        if self.kind == "Jinv":
            return -_J
        if self.kind == "T":
            return shear(self.value).to_array()
        return dilation(self.value).to_array()

    def __str__(self):
        if self.value is None:
            return self.kind
        return f"{self.kind}({self.value!r})"


class GeneratorWord(BaseModel):
    """A product of generators, read left to right as a matrix product.

    Attributes:
        tokens (Tuple[Token, ...]): the generators
    """

    model_config = ConfigDict(frozen=True)

    tokens: Tuple[Token, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GeneratorWord":
        """Parses the comma-separated form e.g. "J,T(2.0),M(0.5)".

        Raises:
            ValueError: if a token cannot be parsed
        """
        tokens = []
        for raw in filter(None, (part.strip() for part in text.split(","))):
            match = _TOKEN_PATTERN.match(raw.replace(" ", ""))
            if match is None:
                raise ValueError(f"cannot parse the generator {raw!r}")
            if match.group("rotation"):
                tokens.append(Token(kind=match.group("rotation")))
            else:
                try:
                    value = float(match.group("value"))
                except ValueError:
                    raise ValueError(f"cannot parse the argument of {raw!r}")
                tokens.append(Token(kind=match.group("kind"), value=value))
        return cls(tokens=tuple(tokens))

    def matrix(self) -> SL2Matrix:
        """Multiplies the generators out."""
        product = np.eye(2)
        for token in self.tokens:
            product = product @ token.matrix()
        return SL2Matrix.from_array(product)

    def __str__(self):
        return ",".join(str(token) for token in self.tokens)

    def __len__(self):
        return len(self.tokens)


def shear(k: float) -> SL2Matrix:
    """Gets t(k) = [[1, 0], [k, 1]]."""
    return SL2Matrix(a=1, b=0, c=k, d=1)


def dilation(c: float) -> SL2Matrix:
    """Gets m(c) = [[c, 0], [0, 1/c]], c > 0."""
    if not c > 0:
        raise ValueError(f"the dilation factor should be positive, got {c}")
    return SL2Matrix(a=c, b=0, c=0, d=1.0 / c)


def is_symplectic(matrix: MatrixLike) -> bool:
    """Checks S^T J S = J to within 1e-10 (i.e. det S = 1 for 2 x 2 matrices)."""
    try:
        array = _as_array(matrix)
    except ValueError:
        return False
    if not np.all(np.isfinite(array)):
        return False
    return bool(np.max(np.abs(array.T @ _J @ array - _J)) < SYMPLECTIC_TOLERANCE)


def factor(matrix: MatrixLike) -> GeneratorWord:
    """Writes a matrix of SL(2, R) as a word in J, Jinv, T and M.

    With S = [[a, b], [c, d]] and a > 0,
    S = t(c/a) m(a) J t(-b/a) Jinv. When |a| < |c| the word starts with
    Jinv and factors J S instead; when a < 0 it starts with J, J (that is
    -I) and factors -S. Trivial generators are left out, so the identity
    gives the empty word.

    Args:
        matrix: the matrix to factor

    Returns:
        the word whose product is the matrix

    Raises:
        NotSymplecticError: if the matrix is not in SL(2, R)
    """
    remainder = SL2Matrix.from_array(matrix).to_array()
    tokens = []
    if abs(remainder[0, 0]) < abs(remainder[1, 0]):
        tokens.append(Token(kind="Jinv"))
        remainder = _J @ remainder
    if remainder[0, 0] < 0:
        tokens.extend([Token(kind="J"), Token(kind="J")])
        remainder = -remainder

    (a, b), (c, _) = remainder
    tokens.extend(
        [
            Token(kind="T", value=c / a),
            Token(kind="M", value=a),
            Token(kind="J"),
            Token(kind="T", value=-b / a),
            Token(kind="Jinv"),
        ]
    )
    return GeneratorWord(tokens=tuple(_simplify(tokens)))


def act_fourier(a: SampledSignal) -> SampledSignal:
    """Applies J: replaces a signal with its Fourier transform, read on the time grid.

    On a self-dual grid (fs^2 = N, centered) the frequency axis is the time
    axis and this is a single FFT; otherwise the transform is evaluated at
    the sample instants directly.
    """
    if is_self_dual(a):
        return a.with_samples(fourier(a)[1])
    logger.warning("the grid is not self-dual; evaluating the Fourier transform directly")
    return a.with_samples(_in_band(a, evaluate_spectrum(a, a.t_axis)))


def act_inverse_fourier(a: SampledSignal) -> SampledSignal:
    """Applies Jinv, the inverse Fourier transform read on the time grid."""
    if is_self_dual(a):
        return a.with_samples(continuous_ft(a.samples, a.t0, a.dt, sign=1))
    logger.warning("the grid is not self-dual; evaluating the inverse Fourier transform directly")
    return a.with_samples(_in_band(a, evaluate_spectrum(a, a.t_axis, sign=1)))


def act_chirp(a: SampledSignal, k: float, config: Optional[TfkitConfig] = None) -> SampledSignal:
    """Multiplies a signal by the chirp exp(-j pi k t^2).

    The instantaneous frequency moves by -k t, which is the shear
    t(CHIRP_SHEAR_SIGN * k).

    Args:
        a: the signal
        k: the chirp rate, Hz/s
        config: the overflow thresholds to use

    Returns:
        the chirped signal
    """
    chirped = a.with_samples(a.samples * np.exp(-1j * np.pi * k * a.t_axis**2))
    overflow = _band_overflow(chirped)
    if overflow > resolve_config(config).overflow_warning:
        logger.warning("chirping by %g leaves %.3g of the energy beyond fs/4", k, overflow)
    return chirped


def act_dilate(a: SampledSignal, c: float, config: Optional[TfkitConfig] = None) -> SampledSignal:
    """Applies m(c): a(t) -> a(t / c) / sqrt(c), keeping the L2 norm.

    The signal is resampled through its band-limited interpolant; instants
    whose preimage t / c falls outside the record get 0.

    Args:
        a: the signal
        c: the dilation factor, > 0
        config: the overflow thresholds to use

    Returns:
        the dilated signal

    Raises:
        ValueError: if c is not positive
        SupportOverflowError: if more energy than `overflow_error` leaves the grid
    """
    if not c > 0:
        raise ValueError(f"the dilation factor should be positive, got {c}")

    config = resolve_config(config)
    overflow = _dilation_overflow(a, c)
    if config.overflow_error is not None and overflow > config.overflow_error:
        raise SupportOverflowError(f"dilating by {c} pushes {overflow:.3g} of the energy off the grid")
    if overflow > config.overflow_warning:
        logger.warning("dilating by %g pushes %.3g of the energy off the grid", c, overflow)

    source = a.t_axis / c
    # the interpolant is periodic; reads outside the record are zero
    inside = (source >= a.t0) & (source < a.t0 + a.n * a.dt)
    return a.with_samples(np.where(inside, evaluate(a, source), 0.0) / np.sqrt(c))


def act_token(a: SampledSignal, token: Token, config: Optional[TfkitConfig] = None) -> SampledSignal:
    """Applies the signal operation realising one generator."""
    if token.kind == "J":
        return act_fourier(a)
    if token.kind == "Jinv":
        return act_inverse_fourier(a)
    if token.kind == "T":
        return act_chirp(a, CHIRP_SHEAR_SIGN * token.value, config=config)
    return act_dilate(a, token.value, config=config)


def act_word(a: SampledSignal, word: GeneratorWord, config: Optional[TfkitConfig] = None) -> SampledSignal:
    """Applies the signal operation realising the product matrix of a word.

    The rightmost token acts first, so the covariance of the result is the
    pushforward by `word.matrix()`.
    """
    for token in reversed(word.tokens):
        a = act_token(a, token, config=config)
    return a


def pushforward(cov: CovarianceMatrix, matrix: MatrixLike) -> CovarianceMatrix:
    """Moves a covariance matrix by S: C -> S C S^T, means -> S means.

    Raises:
        NotSymplecticError: if S is not in SL(2, R)
    """
    s = SL2Matrix.from_array(matrix).to_array()
    return CovarianceMatrix.from_matrix(
        s @ cov.matrix() @ s.T, means=s @ cov.means(), total_mass=cov.total_mass
    )


def act_on_grid(grid: TFGrid, matrix: MatrixLike) -> TFGrid:
    """Moves a distribution by S: W(z) -> W(S^-1 z), by cubic-spline resampling.

    Points whose preimage falls off the grid get 0.
    """
    inverse = SL2Matrix.from_array(matrix).inverse().to_array()
    t, f = np.meshgrid(grid.t_axis, grid.f_axis, indexing="ij")
    source_t = inverse[0, 0] * t + inverse[0, 1] * f
    source_f = inverse[1, 0] * t + inverse[1, 1] * f
    coords = np.stack([(source_t - grid.t0) / grid.dt, (source_f - grid.f_start) / grid.df])
    return grid.with_values(_resample(grid.values, coords))


def act_on_ambiguity(grid: AmbGrid, matrix: MatrixLike) -> AmbGrid:
    """Moves an ambiguity grid the way `act_on_grid` moves its distribution.

    The new value at (tau, nu) is the old one at (tau', nu') with
    (nu', tau') = S^T (nu, tau): J gives A(nu, -tau) and t(k) gives
    A(tau, nu + k tau).
    """
    s = SL2Matrix.from_array(matrix).to_array()
    tau, nu = np.meshgrid(grid.tau_axis, grid.nu_axis, indexing="ij")
    source_nu = s[0, 0] * nu + s[1, 0] * tau
    source_tau = s[0, 1] * nu + s[1, 1] * tau
    d_tau = grid.tau_axis[1] - grid.tau_axis[0]
    d_nu = grid.nu_axis[1] - grid.nu_axis[0]
    coords = np.stack([(source_tau - grid.tau_axis[0]) / d_tau, (source_nu - grid.nu_axis[0]) / d_nu])
    return grid.with_values(_resample(grid.values, coords))


class ActionVerification(BaseModel):
    """The measured and predicted covariance of a transformed signal.

    Attributes:
        word (str): the generator word applied
        matrix (SL2Matrix): its product
        measured (CovarianceMatrix): the covariance of the transformed signal's distribution
        predicted (CovarianceMatrix): the pushforward of the original covariance
        max_relative_deviation (float): the largest relative gap between the two;
            variances relative to themselves, the covariance relative to
            sqrt(var_t var_f)
    """

    model_config = ConfigDict(frozen=True)

    word: str
    matrix: SL2Matrix
    measured: CovarianceMatrix
    predicted: CovarianceMatrix
    max_relative_deviation: float


def verify_action(
    a: SampledSignal, word: GeneratorWord, config: Optional[TfkitConfig] = None
) -> ActionVerification:
    """Compares the covariance of act_word(a, word) with the pushforward law."""
    matrix = word.matrix()
    measured = covariance(wvd(act_word(a, word, config=config)))
    predicted = pushforward(covariance(wvd(a)), matrix)

    scale = np.sqrt(predicted.var_t * predicted.var_f)
    deviation = max(
        abs(measured.var_t - predicted.var_t) / predicted.var_t,
        abs(measured.var_f - predicted.var_f) / predicted.var_f,
        abs(measured.cov_tf - predicted.cov_tf) / scale,
    )
    logger.info("word %s: relative covariance deviation %.3g", word, deviation)
    return ActionVerification(
        word=str(word),
        matrix=matrix,
        measured=measured,
        predicted=predicted,
        max_relative_deviation=float(deviation),
    )


def _as_array(matrix: MatrixLike) -> np.ndarray:
    if isinstance(matrix, SL2Matrix):
        return matrix.to_array()
    array = np.asarray(matrix, dtype=float)
    if array.shape == (4,):
        array = array.reshape(2, 2)
    if array.shape != (2, 2):
        raise ValueError(f"expected a 2 x 2 matrix, got shape {array.shape}")
    return array


def _simplify(tokens):
    """Drops T(0) and M(1) then cancels adjacent J, Jinv pairs."""
    kept = []
    for token in tokens:
        if (token.kind == "T" and token.value == 0) or (token.kind == "M" and token.value == 1):
            continue
        if kept and {kept[-1].kind, token.kind} == {"J", "Jinv"}:
            kept.pop()
            continue
        kept.append(token)
    return kept


def _resample(values: np.ndarray, coords: np.ndarray) -> np.ndarray:
    options = dict(order=3, mode="grid-constant", cval=0.0)
    if np.iscomplexobj(values):
        return map_coordinates(values.real, coords, **options) + 1j * map_coordinates(
            values.imag, coords, **options
        )
    return map_coordinates(values, coords, **options)


def _in_band(a: SampledSignal, values: np.ndarray) -> np.ndarray:
    """Zeroes transform values read at |f| beyond the band [-fs/2, fs/2), where the DFT sum repeats."""
    half = a.sample_rate / 2
    inside = (a.t_axis >= -half) & (a.t_axis < half)
    return np.where(inside, values, 0.0)


def _band_overflow(a: SampledSignal) -> float:
    """Gets the fraction of the energy at |f| >= fs/4."""
    total = energy(a)
    if total == 0:
        return 0.0
    freqs, values = fourier(a)
    outside = np.abs(freqs) >= a.sample_rate / 4
    return float(np.sum(np.abs(values[outside]) ** 2) * (a.sample_rate / a.n) / total)


def _dilation_overflow(a: SampledSignal, c: float) -> float:
    """Gets the fraction of the energy that m(c) moves off the time grid or out of band."""
    total = energy(a)
    if total == 0:
        return 0.0
    # the dilated signal reads a(s) for s in [t_first / c, t_last / c]
    t = a.t_axis
    lost_in_time = (t < t[0] / c) | (t > t[-1] / c)
    # and its spectrum reads A(f) for |f| <= c fs / 2
    freqs, values = fourier(a)
    lost_in_band = np.abs(freqs) > c * a.sample_rate / 2

    time_fraction = np.sum(np.abs(a.samples[lost_in_time]) ** 2) * a.dt / total
    band_fraction = np.sum(np.abs(values[lost_in_band]) ** 2) * (a.sample_rate / a.n) / total
    return float(time_fraction + band_fraction)


# built last: the determinant check needs is_symplectic and _as_array
J = SL2Matrix(a=0, b=1, c=-1, d=0)
J_INV = SL2Matrix(a=0, b=-1, c=1, d=0)
