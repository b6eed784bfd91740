import dataclasses
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hybridqed.config_io import default_config, derive_all
from hybridqed.spectra import (LinearSystemModel, dynamical_matrix_eigenvalues,
                               steady_state_transmission, sweep_spectrum, transmission)

import oracles

TWO_PI = 2 * np.pi


@pytest.fixture(scope="module")
def params():
    return derive_all(default_config())


def model(p, mnp=True, dipole=True, **kw):
    return LinearSystemModel.auto(p, include_mnp=mnp, include_dipole=dipole, **kw)


def test_critical_coupling_extinction(params):
    p = dataclasses.replace(params, kappa_1=params.kappa_0)
    assert steady_state_transmission(model(p, False, False), 0.0) == pytest.approx(0, abs=1e-15)


def test_overcoupled_minimum(params):
    T0 = steady_state_transmission(model(params, False, False), 0.0)
    assert T0 == pytest.approx((4 / 6) ** 2, abs=1e-12)


@pytest.mark.parametrize("mnp, dipole", [(False, False), (True, False), (False, True), (True, True)])
def test_matches_cramer_rule_oracle(params, mnp, dipole):
    p = params
    m = model(p, mnp, dipole)
    G = (p.G_cm if mnp else p.G_c) if dipole else 0.0
    z = 1.0 if mnp else 0.0
    for d in np.linspace(-3e10, 3e10, 13):
        want = oracles.transmission_explicit(d, G, z * p.h, p.kappa_0, p.kappa_1,
                                             z * p.kappa_R, z * p.kappa_m, p.gamma_s)
        assert steady_state_transmission(m, d) == pytest.approx(want, rel=1e-9, abs=1e-12)


def test_vacuum_rabi_doublet(params):
    tr = sweep_spectrum(model(params))
    outer = tr.dip_positions[0], tr.dip_positions[-1]
    split = outer[1] - outer[0]
    assert split == pytest.approx(2 * np.sqrt(2) * params.G_cm, rel=0.05)
    # the doublet is centred on the shifted line centre h (symmetric mode at 2h, dipole at 0)
    step = np.diff(tr.delta)[0]
    assert abs(0.5 * (outer[0] + outer[1]) - params.h) < step


def test_doublet_plus_uncoupled_antisymmetric_dip(params):
    tr = sweep_spectrum(model(params))
    assert len(tr.dip_positions) == 3
    assert abs(tr.dip_positions[1]) < np.diff(tr.delta)[0]


def test_no_dipole_mnp_is_single_asymmetric_dip(params):
    m = model(params, True, False)
    tr = sweep_spectrum(m)
    assert len(tr.dip_positions) == 1
    x = np.linspace(0, 2e9, 50)
    assert np.max(np.abs(transmission(m, x) - transmission(m, -x))) > 1e-2


def test_removing_dipole_drops_dip_count(params):
    with_dip = sweep_spectrum(model(params))
    without = sweep_spectrum(model(params, True, False))
    assert len(without.dip_positions) < len(with_dip.dip_positions)


def test_single_mode_single_dip(params):
    tr = sweep_spectrum(model(params, False, False))
    assert len(tr.dip_positions) == 1
    assert tr.dip_positions[0] == pytest.approx(0, abs=1e-3)
    assert tr.dip_widths[0] == pytest.approx(params.kappa_bare, rel=0.02)


def test_coarse_grid_flagged(params):
    m = model(params, False, False, points=11)
    with pytest.warns(UserWarning, match="points per linewidth"):
        tr = sweep_spectrum(m)
    assert tr.coarse_grid
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert not sweep_spectrum(model(params, False, False)).coarse_grid


def test_grid_validation(params):
    with pytest.raises(ValueError, match="increasing"):
        LinearSystemModel(np.array([0.0, -1.0, 2.0]), params, False, False)
    with pytest.raises(ValueError, match="span"):
        LinearSystemModel(np.linspace(-1e6, 1e6, 11), params, False, False)


# -- eigenvalues ---------------------------------------------------------------------

def test_eigen_single_mode(params):
    ev = dynamical_matrix_eigenvalues(model(params, False, False))
    assert ev.shape == (1,)
    assert ev[0] == pytest.approx(-0.5j * params.kappa_bare)


def test_eigen_mnp_only_hand_diagonalization(params):
    p = params
    ev = dynamical_matrix_eigenvalues(model(p, True, False))
    anti = -0.5j * p.kappa_bare
    sym = 2 * p.h - 0.5j * (p.kappa_bare + 2 * p.kappa_R + 2 * p.kappa_m)
    assert ev[0] == pytest.approx(anti, rel=1e-12)
    assert ev[1] == pytest.approx(sym, rel=1e-12)


def test_eigen_dipole_only_collective_coupling(params):
    p = params
    ev = dynamical_matrix_eigenvalues(model(p, False, True))
    # symmetric mode couples with sqrt(2) G_c; antisymmetric stays bare
    a, b = -0.5j * p.kappa_bare, -0.5j * p.gamma_s
    root = np.sqrt(2 * p.G_c**2 + ((a - b) / 2) ** 2)
    want = sorted([(a + b) / 2 - root, a, (a + b) / 2 + root], key=lambda z: z.real)
    assert np.allclose(ev, want, rtol=1e-10)
    strong = dataclasses.replace(p, G_c=100 * p.G_c)
    ev = dynamical_matrix_eigenvalues(model(strong, False, True))
    assert ev[-1].real - ev[0].real == pytest.approx(2 * np.sqrt(2) * strong.G_c, rel=1e-3)


def test_dips_track_eigenvalues_when_resolved(params):
    m = model(params)
    tr = sweep_spectrum(m)
    ev = dynamical_matrix_eigenvalues(m)
    half_step = 0.5 * np.diff(m.delta_grid)[0]
    split = ev[-1].real - ev[0].real
    assert split > params.kappa_total + params.gamma_s
    for dip, lam in zip(tr.dip_positions, ev):
        assert abs(dip - lam.real) < half_step


def test_doublet_symmetric_about_centre(params):
    m = model(params)
    tr = sweep_spectrum(m)
    centre = params.h
    lo, hi = tr.dip_positions[0], tr.dip_positions[-1]
    assert abs((centre - lo) - (hi - centre)) < np.diff(m.delta_grid)[0]
    # line shapes mirror each other around the polariton dips
    w = 2 * params.G_cm / 10
    x = hi + np.linspace(-w, w, 41)
    assert np.max(np.abs(transmission(m, x) - transmission(m, 2 * centre - x))) < 0.02


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 20), st.floats(0.0, 5), st.floats(0.1, 10), st.floats(0, 3),
       st.floats(0, 3), st.floats(0.1, 30), st.booleans(), st.booleans())
def test_passive_transmission_bounded(G, h, k1, kR, km, gs, mnp, dip):
    u = TWO_PI * 1e8
    p = dataclasses.replace(derive_all(default_config()), G_c=G * u, G_cm=G * u, h=h * u,
                            kappa_0=u, kappa_1=k1 * u, kappa_R=kR * u, kappa_m=km * u,
                            gamma_s=gs * u)
    T = sweep_spectrum(model(p, mnp, dip, points=801)).transmission
    assert np.all(T >= 0)
    assert np.all(T <= 1 + 1e-9)
