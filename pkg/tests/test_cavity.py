import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hybridqed.cavity import CavityConfig, EmitterConfig, g_bare, gamma_s, kappa_0, kappa_1
from hybridqed.errors import DomainError
from hybridqed.materials import Medium

W_SP = 3.451086785347479e15
TWO_PI = 2 * np.pi


@pytest.fixture
def cav():
    return CavityConfig(omega_c=W_SP)


def test_kappa_0_default(cav):
    assert kappa_0(cav) == pytest.approx(3.451e8, rel=1e-3)
    assert kappa_0(cav) / TWO_PI / 1e6 == pytest.approx(55, rel=0.05)


def test_kappa_0_unit_ratio():
    cav = CavityConfig(omega_c=TWO_PI * 3e14, Q0=3e14 * TWO_PI)
    assert kappa_0(cav) == pytest.approx(1.0, rel=1e-15)


def test_kappa_0_halves_with_double_q(cav):
    twice = dataclasses.replace(cav, Q0=2 * cav.Q0)
    assert kappa_0(twice) == pytest.approx(kappa_0(cav) / 2, rel=1e-15)
    assert kappa_1(cav) == pytest.approx(5 * kappa_0(cav), rel=1e-15)


def test_g_bare_default(cav):
    assert g_bare(cav, EmitterConfig()) / TWO_PI / 1e6 == pytest.approx(760, rel=0.05)


def test_g_bare_zero_at_node(cav):
    assert g_bare(dataclasses.replace(cav, f_c0=0.0), EmitterConfig()) == 0


def test_g_bare_quarter_volume_doubles(cav):
    g1 = g_bare(cav, EmitterConfig())
    g4 = g_bare(dataclasses.replace(cav, V_c=4 * cav.V_c), EmitterConfig())
    assert g4 == pytest.approx(g1 / 2, rel=1e-14)


def test_gamma_s_default():
    gs = gamma_s(EmitterConfig(), Medium(), W_SP)
    assert gs / TWO_PI / 1e9 == pytest.approx(1.6, rel=0.03)


def test_gamma_s_scalings():
    assert gamma_s(EmitterConfig(mu=0.0), Medium(), W_SP) == 0
    g1 = gamma_s(EmitterConfig(), Medium(), W_SP)
    assert gamma_s(EmitterConfig(), Medium(), 2 * W_SP) == pytest.approx(8 * g1, rel=1e-14)
    with pytest.raises(DomainError):
        gamma_s(EmitterConfig(), Medium(), 0.0)


def test_wavelength_round_trip():
    cav = CavityConfig.from_wavelength(546e-9)
    assert cav.lambda_c == pytest.approx(546e-9, rel=1e-14)


@pytest.mark.parametrize("kw", [dict(f_c0=1.5), dict(Q0=0.5), dict(V_c=-1.0), dict(eps_c=0.0)])
def test_cavity_validation(kw):
    with pytest.raises(DomainError):
        CavityConfig(omega_c=W_SP, **kw)


@given(st.floats(0.1, 10), st.floats(0.1, 3.0))
def test_g_linear_in_mu_and_field(a, b):
    cav = CavityConfig(omega_c=W_SP, f_c0=0.3)
    base = g_bare(cav, EmitterConfig(mu=1e-28))
    scaled = g_bare(dataclasses.replace(cav, f_c0=0.3 * b / 3), EmitterConfig(mu=a * 1e-28))
    assert scaled == pytest.approx(base * a * b / 3, rel=1e-12)


@given(st.floats(1e12, 1e16), st.floats(1, 1e10))
def test_kappa_times_q_is_omega(w, q):
    cav = CavityConfig(omega_c=w, Q0=q)
    assert math.isclose(kappa_0(cav) * q, w, rel_tol=4e-16)
