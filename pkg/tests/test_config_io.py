import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hybridqed.config_io import (RunReport, config_digest, default_config, derive_all,
                                 dump_config, format_csv, load_config, normalized_document,
                                 parse_quantity)
from hybridqed.errors import ConfigError

TWO_PI = 2 * np.pi
GAMMA_M = 3e14


def mhz(w):
    return w / TWO_PI / 1e6


def params_tuple(p):
    return tuple(getattr(p, f.name) for f in dataclasses.fields(p))


# -- loading --------------------------------------------------------------------------

@pytest.mark.parametrize("text", ["", "\n", "# nothing here\n", "{}"])
def test_empty_document_gives_defaults(text):
    cfg = load_config(text)
    assert cfg == default_config()
    assert cfg.geometry.r_m == 12e-9 and cfg.geometry.d == 3e-9
    assert cfg.delta_sp == 0


def test_quasi_static_bound():
    with pytest.raises(ConfigError, match="quasi-static"):
        load_config("geometry:\n  r_m: 80 nm\n")


def test_tunnelling_bound():
    with pytest.raises(ConfigError, match="tunnel"):
        load_config("geometry:\n  d: 0.5 nm\n")


def test_bounds_are_inclusive():
    cfg = load_config("geometry:\n  r_m: 50 nm\n  d: 1 nm\n")
    assert cfg.geometry.r_m == 50e-9 and cfg.geometry.d == 1e-9


def test_default_rate_set():
    p = derive_all(load_config(""))
    want = {"G_c": 760, "G_cm": 9000, "h": 170, "kappa_0": 55, "kappa_R": 80, "kappa_m": 30}
    for k, v in want.items():
        assert mhz(getattr(p, k)) == pytest.approx(v, rel=0.05), k
    assert mhz(p.gamma_s) == pytest.approx(1600, rel=0.03)


def test_vanishing_particle_coupling_ratio():
    p = derive_all(load_config("geometry:\n  r_m: 0.5 nm\n"))
    assert 1 <= p.G_cm / p.G_c <= 1.1


def test_far_detuned_particle_losses_small():
    p = derive_all(load_config(f"delta_sp: {-6 * GAMMA_M} rad/s\n"))
    assert p.kappa_R + p.kappa_m < p.kappa_0


def test_derive_all_deterministic():
    a, b = derive_all(default_config()), derive_all(default_config())
    assert params_tuple(a) == params_tuple(b)


def test_full_document():
    text = """\
schema_version: 1
metal:
  omega_p: 6e15 rad/s
  gamma_m: 3e14 rad/s
medium:
  eps_b: 1
cavity:
  eps_c: 2.1025
  V_c: 200 um^3
  f_c0: 0.3
  Q0: 1e7
  kappa1_ratio: 5
emitter:
  mu: 2.4e-28 C*m
  delta_ec: 0 GHz
geometry:
  r_m: 12 nm
  d: 3 nm
delta_sp: 0 rad/s
"""
    assert load_config(text) == default_config()


def test_wavelength_sets_cavity():
    cfg = load_config("cavity:\n  lambda_c: 600 nm\n")
    assert TWO_PI * 299792458.0 / cfg.cavity.omega_c == pytest.approx(600e-9, rel=1e-14)
    assert cfg.delta_sp < 0


def test_conflicting_frequency_fields():
    with pytest.raises(ConfigError, match="only one"):
        load_config("cavity:\n  lambda_c: 600 nm\ndelta_sp: 1 GHz\n")


# -- errors --------------------------------------------------------------------------

def test_parse_error_reports_line():
    with pytest.raises(ConfigError) as exc:
        load_config("geometry:\n  r_m: 12 nm\n  d: [3 nm\n")
    assert exc.value.line is not None and exc.value.line >= 3
    assert "line" in str(exc.value)


def test_bad_unit_names_field_and_line():
    with pytest.raises(ConfigError) as exc:
        load_config("metal:\n  omega_p: 6e15 rad/s\n  gamma_m: 3e14 furlongs\n")
    assert exc.value.field == "metal.gamma_m"
    assert exc.value.line == 3
    assert "line 3" in str(exc.value) and "metal.gamma_m" in str(exc.value)


def test_missing_unit_rejected():
    with pytest.raises(ConfigError, match="missing unit"):
        load_config("geometry:\n  r_m: 12\n")


@pytest.mark.parametrize("text, field", [
    ("foo: 1\n", "foo"),
    ("geometry:\n  radius: 12 nm\n", "geometry.radius"),
])
def test_unknown_keys_rejected(text, field):
    with pytest.raises(ConfigError) as exc:
        load_config(text)
    assert exc.value.field == field


def test_wrong_schema_version():
    with pytest.raises(ConfigError, match="schema_version"):
        load_config("schema_version: 2\n")


def test_non_mapping_document():
    with pytest.raises(ConfigError):
        load_config("- 1\n- 2\n")


# -- units ---------------------------------------------------------------------------

@pytest.mark.parametrize("value, kind, want", [
    ("12 nm", "length", 12e-9),
    ("3 um", "length", 3e-6),
    ("3 µm", "length", 3e-6),
    ("200 um^3", "volume", 2e-16),
    ("1 MHz", "rate", TWO_PI * 1e6),
    ("5 rad/s", "rate", 5.0),
    ("1 D", "dipole", 3.33564095198152e-30),
    (0, "rate", 0.0),
])
def test_parse_quantity(value, kind, want):
    assert parse_quantity(value, kind) == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize("spellings", [
    ("geometry.r_m=12nm", "geometry.r_m=0.012 um", "geometry.r_m=1.2e-8 m"),
    ("cavity.V_c=200 um^3", "cavity.V_c=2e-16 m^3", "cavity.V_c=2e11 nm^3"),
    ("emitter.delta_ec=90 GHz", "emitter.delta_ec=90000 MHz", "emitter.delta_ec=9e10 Hz"),
    ("metal.gamma_m=3e14 rad/s", "metal.gamma_m=300000000000000 rad/s"),
])
def test_unit_invariance_bit_identical(spellings):
    params = [params_tuple(derive_all(load_config("", [s]))) for s in spellings]
    assert all(p == params[0] for p in params[1:])
    digests = {config_digest(load_config("", [s])) for s in spellings}
    assert len(digests) == 1


# -- serialization ---------------------------------------------------------------------

def test_round_trip_idempotent():
    cfg = load_config("geometry:\n  r_m: 20 nm\n  d: 7 nm\ndelta_sp: -2 GHz\n")
    once = dump_config(cfg)
    again = load_config(once)
    assert again == cfg
    assert dump_config(again) == once


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-9, 50e-9), st.floats(1e-9, 100e-9), st.floats(-6, 4), st.floats(1e4, 1e9))
def test_round_trip_property(r_m, d, dsp, q):
    cfg = default_config(dsp * GAMMA_M).with_geometry(r_m=r_m, d=d)
    cfg = cfg.replace(cavity=dataclasses.replace(cfg.cavity, Q0=q))
    text = dump_config(cfg)
    assert load_config(text) == cfg
    assert dump_config(load_config(text)) == text


def test_overrides_applied_before_validation():
    cfg = load_config("geometry:\n  r_m: 80 nm\n", ["geometry.r_m=20 nm"])
    assert cfg.geometry.r_m == 20e-9
    with pytest.raises(ConfigError):
        load_config("", ["geometry.d=0.2 nm"])
    with pytest.raises(ConfigError, match="unknown key"):
        load_config("", ["geometry.radius=3 nm"])
    with pytest.raises(ConfigError):
        load_config("", ["no-equals-sign"])


def test_digest_stable_and_sensitive():
    a = config_digest(default_config())
    assert a == config_digest(load_config(""))
    assert len(a) == 64
    assert a != config_digest(default_config().with_geometry(r_m=13e-9))


def test_run_report():
    cfg = default_config()
    rep = RunReport(cfg, derive_all(cfg))
    data = json.loads(rep.to_json())
    assert data["provenance"]["input_digest"] == config_digest(cfg)
    assert data["provenance"]["timestamp"] is None
    assert data["config"] == normalized_document(cfg)
    assert data["params"]["rates_over_2pi_MHz"]["G_cm"] == pytest.approx(9000, rel=0.05)
    assert rep.to_json() == RunReport(cfg, derive_all(cfg)).to_json()


def test_csv_format():
    text = format_csv(["a", "b"], [[1.0, -2.5e-9], [np.pi, 0]], ["input_digest: x"])
    lines = text.split("\n")
    assert lines[0] == "# input_digest: x"
    assert lines[1] == "a,b"
    assert lines[2] == "1.00000000e+00,-2.50000000e-09"
    assert lines[3] == "3.14159265e+00,0.00000000e+00"
    assert text.endswith("\n") and "\r" not in text
