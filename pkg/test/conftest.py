import numpy as np
import pytest
from pytest_lazyfixture import lazy_fixture

from tfkit import SignalSpec, generate, wvd
from tfkit.config import TfkitConfig

N = 1024
FS = 32.0
GAUSSIAN_VARIANCE = 1 / (4 * np.pi)

# kernels whose distributions keep both marginals
marginal_kernels = ["wigner", "rihaczek", "levin", "page", "born_jordan"]

# (alpha, beta) pairs on either side of alpha * beta = 1/4
nonnegative_smoothing = (np.sqrt(0.3), np.sqrt(0.3))
negative_smoothing = (np.sqrt(0.1), np.sqrt(0.1))


def make_signal(kind: str, n: int = N, fs: float = FS, **parameters):
    """Builds a test signal on the default desk-scale grid"""
    return generate(SignalSpec(kind=kind, n=n, sample_rate=fs, parameters=parameters))


@pytest.fixture()
def gaussian():
    yield make_signal("gaussian", width=1.0)


@pytest.fixture()
def chirp():
    yield make_signal("lfm_chirp", width=1.0, rate=2.0)


@pytest.fixture()
def two_component():
    yield make_signal("two_component", width=1.0, separation=2.5)


@pytest.fixture()
def shifted_gaussian():
    yield make_signal("gaussian", width=0.8, center_time=1.5, center_frequency=-2.0)


@pytest.fixture()
def tone():
    yield make_signal("tone", center_frequency=4.0)


@pytest.fixture()
def gaussian_wvd(gaussian):
    yield wvd(gaussian)


@pytest.fixture()
def config():
    yield TfkitConfig()


@pytest.fixture()
def signal_file(tmp_path, gaussian):
    from tfkit.io import write_signal

    path = tmp_path / "g.csv"
    write_signal(gaussian, path)
    yield path


@pytest.fixture()
def chirp_file(tmp_path, chirp):
    from tfkit.io import write_signal

    path = tmp_path / "chirp.csv"
    write_signal(chirp, path)
    yield path


signals_fixture = [
    lazy_fixture("gaussian"),
    lazy_fixture("chirp"),
    lazy_fixture("two_component"),
]
localized_signals_fixture = [
    lazy_fixture("gaussian"),
    lazy_fixture("chirp"),
    lazy_fixture("shifted_gaussian"),
]
kernel_signal_fixture = [
    (kernel, signal) for kernel in marginal_kernels for signal in signals_fixture
]
