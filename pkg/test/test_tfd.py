"""Tests for kernel distributions, their marginals and extrema"""

import logging

import numpy as np
import pytest

from tfkit.kernels import make, parse_kernel
from tfkit.tfd import (
    compute_tfd,
    freq_marginal,
    max_scan,
    min_scan,
    signal_marginals,
    time_marginal,
)
from tfkit.wigner import gaussian_smooth, wvd
from test.conftest import N, kernel_signal_fixture


@pytest.mark.parametrize("kernel, signal", kernel_signal_fixture)
def test_marginal_kernels_keep_marginals(kernel, signal):
    """Distributions of marginal kernels integrate to |a|^2 and |A|^2"""
    grid = compute_tfd(signal, make(kernel))
    power, density = signal_marginals(signal, grid)
    assert grid.kernel == kernel
    assert grid.time_marginal and grid.freq_marginal
    assert grid.is_real
    assert np.max(np.abs(time_marginal(grid) - power)) < 1e-6
    assert np.max(np.abs(freq_marginal(grid) - density)) < 1e-6


def test_spectrogram_loses_marginals(two_component):
    """The spectrogram smears both marginals"""
    grid = compute_tfd(two_component, parse_kernel("spectrogram", like=two_component))
    power, density = signal_marginals(two_component, grid)
    assert not grid.time_marginal and not grid.freq_marginal
    assert np.max(np.abs(time_marginal(grid) - power)) > 1e-3
    assert np.max(np.abs(freq_marginal(grid) - density)) > 1e-3


def test_spectrogram_is_nonnegative(two_component):
    grid = compute_tfd(two_component, parse_kernel("spectrogram:width=0.7", like=two_component))
    assert min_scan(grid).value >= -1e-6 * grid.peak
    assert grid.mass == pytest.approx(1.0, rel=1e-6)


def test_gaussian_kernel_matches_smoothing(two_component):
    """compute_tfd with the gaussian kernel is gaussian_smooth of the WVD"""
    via_kernel = compute_tfd(two_component, make("gaussian", alpha=0.6, beta=0.5))
    via_smoothing = gaussian_smooth(wvd(two_component), 0.6, 0.5)
    assert np.max(np.abs(via_kernel.values - via_smoothing.values)) < 1e-12 * via_kernel.peak
    assert min_scan(via_kernel).value >= -1e-6 * via_kernel.peak


def test_wigner_kernel_is_the_wvd(chirp):
    grid = compute_tfd(chirp, make("wigner"))
    assert np.max(np.abs(grid.values - wvd(chirp).values)) < 1e-12 * grid.peak
    assert grid.energy == pytest.approx(1.0)


def test_keep_complex(gaussian):
    """The complex Rihaczek grid is available on request"""
    kernel = make("rihaczek")
    full = compute_tfd(gaussian, kernel, keep_complex=True)
    real = compute_tfd(gaussian, kernel)
    assert not full.is_real
    assert np.max(np.abs(full.values.imag)) > 1e-3
    assert np.array_equal(full.values.real, real.values)


def test_no_warning_for_non_hermitian_residue(gaussian, caplog):
    """Dropping the imaginary part of a Rihaczek grid is expected, not warned about"""
    with caplog.at_level(logging.WARNING, logger="tfkit.tfd"):
        compute_tfd(gaussian, make("rihaczek"))
    assert not caplog.records


def test_band_selection(gaussian):
    grid = compute_tfd(gaussian, make("born_jordan"), f_start=-2.0)
    assert grid.f_start == -2.0
    assert grid.f_axis.shape == (N,)


def test_extrema(gaussian_wvd, two_component):
    """max_scan finds the Gaussian peak and min_scan the cross-term trough"""
    peak = max_scan(gaussian_wvd)
    assert peak.value == pytest.approx(2.0, rel=1e-4)
    assert peak.t == pytest.approx(0.0, abs=1e-12)
    assert peak.f == pytest.approx(0.0, abs=1e-12)
    assert peak.index == (N // 2, N // 2)

    trough = min_scan(wvd(two_component))
    assert trough.value < 0
    assert trough.value == pytest.approx(np.min(wvd(two_component).values))


def test_signal_marginals_shapes(chirp):
    grid = wvd(chirp)
    power, density = signal_marginals(chirp, grid)
    assert power.shape == (N,)
    assert density.shape == (N,)
    assert np.sum(power) * chirp.dt == pytest.approx(1.0)
    assert np.sum(density) * grid.df == pytest.approx(1.0, rel=1e-8)
