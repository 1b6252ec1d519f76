"""Tests for covariance matrices and the uncertainty checks"""

import numpy as np
import orjson
import pytest

from tfkit.config import TfkitConfig
from tfkit.errors import NonMarginalKernelError, NumericalError
from tfkit.io import dump_json
from tfkit.kernels import make, parse_kernel
from tfkit.moments import (
    HEISENBERG_CONSTANT,
    CovarianceMatrix,
    covariance,
    heisenberg_check,
    relation1_check,
    signal_moments,
    strong_uncertainty_check,
    uncertainty_report,
)
from tfkit.tfd import compute_tfd
from tfkit.wigner import TFGrid, gaussian_smooth, tf_axes, wvd
from test.conftest import GAUSSIAN_VARIANCE, kernel_signal_fixture, localized_signals_fixture


def _grid(values: np.ndarray, energy=None) -> TFGrid:
    t_axis, f_axis = tf_axes(values.shape[0], 1.0)
    return TFGrid(values=values, sample_rate=1.0, t_axis=t_axis, f_axis=f_axis, energy=energy)


def test_gaussian_covariance(gaussian_wvd):
    """The unit Gaussian has var_t = var_f = 1/(4 pi) and no correlation"""
    cov = covariance(gaussian_wvd)
    assert cov.var_t == pytest.approx(GAUSSIAN_VARIANCE, rel=1e-2)
    assert cov.var_f == pytest.approx(GAUSSIAN_VARIANCE, rel=1e-2)
    assert cov.cov_tf == pytest.approx(0.0, abs=1e-4)
    assert cov.mean_t == pytest.approx(0.0, abs=1e-10)
    assert cov.mean_f == pytest.approx(0.0, abs=1e-10)
    assert cov.total_mass == pytest.approx(1.0)


def test_chirp_covariance(chirp):
    """A chirp of rate k correlates time and frequency by k var_t"""
    cov = covariance(wvd(chirp))
    assert cov.var_t == pytest.approx(GAUSSIAN_VARIANCE, rel=1e-2)
    assert cov.var_f == pytest.approx(5 * GAUSSIAN_VARIANCE, rel=2e-2)
    assert cov.cov_tf == pytest.approx(2.0 * cov.var_t, rel=2e-2)


def test_shifted_gaussian_means(shifted_gaussian):
    cov = covariance(wvd(shifted_gaussian))
    assert cov.mean_t == pytest.approx(1.5, abs=1e-8)
    assert cov.mean_f == pytest.approx(-2.0, abs=1e-8)


@pytest.mark.parametrize("signal", localized_signals_fixture)
def test_signal_moments_match_the_wvd(signal):
    """Moments taken from the signal agree with the moments of its WVD"""
    direct = signal_moments(signal)
    via_wvd = covariance(wvd(signal))
    assert np.allclose(direct.matrix(), via_wvd.matrix(), rtol=1e-6, atol=1e-8)
    assert np.allclose(direct.means(), via_wvd.means(), atol=1e-8)


def test_covariance_matrix_helpers():
    cov = CovarianceMatrix.from_matrix([[2.0, 0.5], [0.5, 1.0]], means=(1.0, -1.0))
    assert cov.cov_tf == 0.5
    assert cov.det == pytest.approx(1.75)
    assert cov.strong_det == pytest.approx(1.75 - HEISENBERG_CONSTANT)
    assert np.array_equal(cov.means(), [1.0, -1.0])
    assert np.array_equal(cov.matrix(), [[2.0, 0.5], [0.5, 1.0]])

    with pytest.raises(ValueError):
        CovarianceMatrix(var_t=-1.0, var_f=1.0, cov_tf=0.0)


def test_covariance_rejects_empty_grids():
    with pytest.raises(NumericalError, match=r"non-positive mass"):
        covariance(_grid(np.zeros((4, 4))))

    with pytest.raises(NumericalError, match=r"negligible"):
        covariance(_grid(np.full((4, 4), 1e-12), energy=1.0))


def test_covariance_rejects_negative_variances():
    """Negative lobes far from the mean can drive a variance below zero"""
    values = np.zeros((4, 4))
    values[2, 2] = 1.0
    values[0, 2] = -0.2
    values[3, 2] = -0.4
    with pytest.raises(NumericalError, match=r"var_t is negative"):
        covariance(_grid(values))


def test_heisenberg_equality(gaussian):
    """The Gaussian saturates the Heisenberg bound"""
    result = heisenberg_check(gaussian)
    assert result.ratio == pytest.approx(1.0, rel=1e-2)
    assert result.rhs == pytest.approx(HEISENBERG_CONSTANT)
    assert result.holds


def test_heisenberg_chirp(chirp):
    """A chirp of rate 2 sits five times above the bound"""
    result = heisenberg_check(chirp)
    assert result.ratio == pytest.approx(5.0, rel=2e-2)
    assert result.holds


def test_heisenberg_scales_with_energy(gaussian):
    result = heisenberg_check(gaussian.with_samples(3 * gaussian.samples))
    assert result.rhs == pytest.approx(81 * HEISENBERG_CONSTANT)
    assert result.ratio == pytest.approx(1.0, rel=1e-2)


@pytest.mark.parametrize("kernel, signal", kernel_signal_fixture)
def test_relation1_holds(kernel, signal):
    """The spread of every marginal distribution clears ||a||^2 / (2 pi)"""
    result = relation1_check(compute_tfd(signal, make(kernel)), signal)
    assert result.status == "ok"
    assert result.ratio >= 1 - 1e-6


def test_relation1_equality(gaussian, gaussian_wvd):
    """The Gaussian at its means reaches the bound"""
    result = relation1_check(gaussian_wvd, gaussian)
    assert result.lhs == pytest.approx(1 / (2 * np.pi), rel=1e-2)
    assert result.ratio == pytest.approx(1.0, rel=1e-2)
    assert result.t0 == pytest.approx(0.0, abs=1e-10)

    rihaczek = relation1_check(compute_tfd(gaussian, make("rihaczek")), gaussian)
    assert rihaczek.lhs == pytest.approx(result.lhs, abs=1e-4)


def test_relation1_reference_point(gaussian, gaussian_wvd):
    """Moving the reference point away from the means adds its squared distance"""
    centered = relation1_check(gaussian_wvd, gaussian)
    offset = relation1_check(gaussian_wvd, gaussian, t0=1.0, f0=-0.5)
    assert offset.lhs == pytest.approx(centered.lhs + 1.25, rel=1e-8)
    assert offset.t0 == 1.0 and offset.f0 == -0.5


def test_relation1_needs_marginals(gaussian, gaussian_wvd):
    with pytest.raises(NonMarginalKernelError, match=r"does not keep both marginals"):
        relation1_check(gaussian_smooth(gaussian_wvd, 0.5, 0.5), gaussian)


@pytest.mark.parametrize("signal", localized_signals_fixture)
def test_strong_uncertainty_of_gaussian_states(signal):
    """Gaussian states, chirped or shifted, make det(C + i J / (4 pi)) vanish"""
    cov = covariance(wvd(signal))
    result = strong_uncertainty_check(cov)
    assert result.det == pytest.approx(0.0, abs=1e-4 * cov.var_t * cov.var_f)
    assert result.psd


def test_strong_uncertainty_violation():
    cov = CovarianceMatrix(var_t=0.01, var_f=0.01, cov_tf=0.0)
    result = strong_uncertainty_check(cov)
    assert result.det < 0
    assert not result.psd
    assert result.tolerance == pytest.approx(1e-4 * 1e-4)


def test_strong_uncertainty_tolerance():
    """The slack scales with var_t var_f and comes from the config"""
    cov = CovarianceMatrix(var_t=1 / (4 * np.pi), var_f=0.99 / (4 * np.pi), cov_tf=0.0)
    assert not strong_uncertainty_check(cov).psd
    assert strong_uncertainty_check(cov, TfkitConfig(strong_tolerance=0.02)).psd


def test_report_wigner(gaussian):
    report = uncertainty_report(gaussian)
    assert report.kernel == "wigner"
    assert report.passed
    assert report.energy == pytest.approx(1.0)
    assert report.relation1.status == "ok"
    assert report.relation1_lhs == pytest.approx(1 / (2 * np.pi), rel=1e-2)
    assert report.heisenberg_lhs == pytest.approx(report.heisenberg_rhs, rel=1e-2)
    assert report.strong_psd


def test_report_non_marginal_kernel(two_component):
    """The spread check does not apply to the spectrogram"""
    report = uncertainty_report(two_component, parse_kernel("spectrogram", like=two_component))
    assert report.kernel == "spectrogram"
    assert report.relation1.status == "not-applicable"
    assert report.relation1_lhs is None
    assert report.passed


def test_report_offsets(gaussian):
    report = uncertainty_report(gaussian, make("born_jordan"), t0=0.5, f0=0.5)
    assert report.relation1.t0 == 0.5
    assert report.relation1.ratio > 1


def test_report_schema(chirp):
    """The JSON form carries the schema tag and every block"""
    data = orjson.loads(dump_json(uncertainty_report(chirp)))
    assert data["schema"] == "tfkit-report/1"
    assert set(data) == {
        "schema",
        "kernel",
        "energy",
        "covariance",
        "heisenberg",
        "relation1",
        "strong",
        "passed",
    }
    assert set(data["covariance"]) == {"var_t", "var_f", "cov_tf", "mean_t", "mean_f", "total_mass"}
    assert data["heisenberg"]["ratio"] == pytest.approx(5.0, rel=2e-2)
