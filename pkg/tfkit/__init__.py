"""A numerical toolkit for quadratic time-frequency analysis.

Provides:

1. `SampledSignal` and a factory of test signals, with the Fourier and
analytic-signal conventions every other module relies on
2. The discrete Wigner-Ville distribution, its Gaussian smoothing and the
ambiguity function, linked by exact discrete transforms
3. A catalogue of ambiguity-domain kernels (Rihaczek, Born-Jordan,
spectrogram, ...) and the distributions they define
4. Covariance matrices of distributions and the uncertainty checks built on them
5. SL(2, R) matrices, their factorization into generators and the signal
operations that realise them
6. CSV/JSON file formats and the `tfkit` command line
"""

from tfkit.config import TfkitConfig
from tfkit.errors import TfkitError
from tfkit.signal import SampledSignal, SignalSpec, generate, analytic
from tfkit.wigner import TFGrid, wvd, cross_wvd, gaussian_smooth
from tfkit.ambiguity import AmbGrid, ambiguity_from_wvd, wvd_from_ambiguity
from tfkit.kernels import Kernel, make as make_kernel
from tfkit.tfd import compute_tfd
from tfkit.moments import CovarianceMatrix, covariance, uncertainty_report
from tfkit.symplectic import SL2Matrix, GeneratorWord, factor, act_word

__all__ = [
    "TfkitConfig",
    "TfkitError",
    "SampledSignal",
    "SignalSpec",
    "generate",
    "analytic",
    "TFGrid",
    "wvd",
    "cross_wvd",
    "gaussian_smooth",
    "AmbGrid",
    "ambiguity_from_wvd",
    "wvd_from_ambiguity",
    "Kernel",
    "make_kernel",
    "compute_tfd",
    "CovarianceMatrix",
    "covariance",
    "uncertainty_report",
    "SL2Matrix",
    "GeneratorWord",
    "factor",
    "act_word",
]

__version__ = "0.1.0"
