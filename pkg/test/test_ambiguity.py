"""Tests for the ambiguity function and ambiguity-domain filtering"""

import numpy as np
import pytest

from tfkit.ambiguity import (
    ambiguity_from_wvd,
    apply_kernel,
    direct_ambiguity,
    volume,
    wvd_from_ambiguity,
)
from tfkit.kernels import make
from tfkit.wigner import wvd
from test.conftest import FS, N, signals_fixture


def test_axes(gaussian_wvd):
    """Delays are spaced 2 dt, Doppler frequencies fs/N, with (0, 0) at (N/2, N/2)"""
    amb = ambiguity_from_wvd(gaussian_wvd)
    assert amb.tau_axis[1] - amb.tau_axis[0] == pytest.approx(2 / FS)
    assert amb.nu_axis[1] - amb.nu_axis[0] == pytest.approx(FS / N)
    assert amb.tau_axis[N // 2] == 0.0
    assert amb.nu_axis[N // 2] == 0.0
    assert amb.t_origin == gaussian_wvd.t0
    assert amb.f_origin == gaussian_wvd.f_start


@pytest.mark.parametrize("signal", signals_fixture)
def test_round_trip(signal):
    """W -> A -> W gives W back to round-off"""
    grid = wvd(signal)
    back = wvd_from_ambiguity(ambiguity_from_wvd(grid))
    assert np.max(np.abs(back.values - grid.values)) < 1e-12 * grid.peak
    assert np.allclose(back.t_axis, grid.t_axis)
    assert np.allclose(back.f_axis, grid.f_axis)


@pytest.mark.parametrize("signal", signals_fixture)
def test_direct_ambiguity_agrees(signal):
    """The lag-product path and the transform path give the same grid"""
    via_wvd = ambiguity_from_wvd(wvd(signal))
    direct = direct_ambiguity(signal)
    assert np.max(np.abs(via_wvd.values - direct.values)) < 1e-8 * direct.peak
    assert direct.f_origin == via_wvd.f_origin


def test_direct_ambiguity_band(gaussian):
    assert direct_ambiguity(gaussian, f_start=0.0).f_origin == 0.0


@pytest.mark.parametrize("signal", signals_fixture)
def test_center_is_the_energy(signal):
    amb = ambiguity_from_wvd(wvd(signal))
    assert amb.center == pytest.approx(1.0, abs=1e-8)


def test_gaussian_ambiguity(gaussian_wvd):
    """The unit Gaussian has |A(tau, nu)| = exp(-pi (tau^2 + nu^2) / 2)"""
    amb = ambiguity_from_wvd(gaussian_wvd)
    tau = amb.tau_axis[:, None]
    nu = amb.nu_axis[None, :]
    expected = np.exp(-np.pi * (tau**2 + nu**2) / 2)
    assert np.max(np.abs(np.abs(amb.values) - expected)) < 1e-4


def test_tone_ambiguity(tone):
    """A tone lives on the nu = 0 line, with a phase turning at its frequency"""
    amb = direct_ambiguity(tone)
    center = N // 2
    near = np.abs(amb.tau_axis) < 8
    rows = np.abs(amb.values[near])
    assert np.all(np.argmax(rows, axis=1) == center)

    line = amb.values[near, center] * np.exp(-2j * np.pi * 4.0 * amb.tau_axis[near])
    assert np.max(np.abs(np.angle(line))) < 1e-8


def test_volume(gaussian, shifted_gaussian):
    """The ambiguity volume is ||a||^4"""
    assert volume(direct_ambiguity(gaussian)) == pytest.approx(1.0, rel=1e-6)
    assert volume(direct_ambiguity(shifted_gaussian)) == pytest.approx(1.0, rel=1e-6)


def test_apply_kernel(gaussian_wvd):
    """The wigner kernel is the identity and the Gaussian one damps away from the origin"""
    amb = ambiguity_from_wvd(gaussian_wvd)
    assert np.array_equal(apply_kernel(amb, make("wigner")).values, amb.values)

    damped = apply_kernel(amb, make("gaussian", alpha=1.0, beta=1.0))
    assert damped.center == pytest.approx(amb.center)
    assert np.all(np.abs(damped.values) <= np.abs(amb.values) + 1e-15)
    assert volume(damped) < volume(amb)
