"""
Scenario documents, validation, unit normalization and result serialization.

A scenario is a YAML mapping. Every dimensional entry is a string carrying an
explicit unit; dimensionless entries are bare numbers. Missing entries take
the default scenario (gold-like Drude sphere of 12 nm, 3 nm gap, silica
toroid at the plasmon resonance)::

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
      major_radius: 30 um
      minor_radius: 3 um
      # lambda_c: 546 nm        (or omega_c: ...; otherwise set by delta_sp)
    emitter:
      mu: 2.4e-28 C*m
      delta_ec: 0 GHz
    geometry:
      r_m: 12 nm
      d: 3 nm
    delta_sp: 0 rad/s

Units: lengths nm/um/mm/m; volumes nm^3/um^3/m^3; rates Hz/kHz/MHz/GHz/THz
(ordinary frequency, multiplied by 2 pi) or rad/s; dipole moments C*m or D.
"""

import dataclasses
import hashlib
import json
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

import numpy as np
import yaml

from . import __version__
from .cavity import CavityConfig, EmitterConfig
from .errors import ConfigError, DomainError
from .hybrid import HybridParams, NanoGeometry, derive_params
from .materials import DrudeMetal, Medium, lspr_frequency

SCHEMA_VERSION = 1

R_M_MAX = 50e-9  # quasi-static validity
D_MIN = 1e-9  # below this, charge tunnelling between emitter and metal

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class SystemConfig:
    metal: DrudeMetal
    medium: Medium
    cavity: CavityConfig
    emitter: EmitterConfig
    geometry: NanoGeometry

    def __post_init__(self):
        if self.geometry.r_m > R_M_MAX:
            raise ConfigError(
                f"r_m = {self.geometry.r_m * 1e9:g} nm exceeds the quasi-static bound "
                f"r_m <= {R_M_MAX * 1e9:g} nm",
                field="geometry.r_m",
            )
        if self.geometry.d < D_MIN:
            raise ConfigError(
                f"d = {self.geometry.d * 1e9:g} nm is below the tunnelling bound "
                f"d >= {D_MIN * 1e9:g} nm",
                field="geometry.d",
            )

    @property
    def omega_sp(self):
        return lspr_frequency(self.metal, self.medium)

    @property
    def delta_sp(self):
        """Cavity-plasmon detuning w_c - w_sp (rad/s)."""
        return self.cavity.omega_c - self.omega_sp

    def with_delta_sp(self, delta_sp):
        """Same scenario with the cavity retuned to w_sp + delta_sp; the metal is unchanged."""
        return self.replace(cavity=dataclasses.replace(self.cavity, omega_c=self.omega_sp + delta_sp))

    def with_geometry(self, r_m=None, d=None):
        g = self.geometry
        return self.replace(geometry=NanoGeometry(
            r_m=g.r_m if r_m is None else r_m, d=g.d if d is None else d))

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def default_config(delta_sp=0.0):
    metal, medium = DrudeMetal(), Medium()
    w_c = lspr_frequency(metal, medium) + delta_sp
    return SystemConfig(metal, medium, CavityConfig(omega_c=w_c), EmitterConfig(), NanoGeometry())


def derive_all(config):
    """Complete HybridParams for a validated scenario."""
    return derive_params(config.metal, config.medium, config.cavity,
                         config.emitter, config.geometry)


# --------------------------------------------------------------------------
# units

_LENGTH = {"m": Decimal(1), "mm": Decimal("1e-3"), "um": Decimal("1e-6"),
           "µm": Decimal("1e-6"), "μm": Decimal("1e-6"), "nm": Decimal("1e-9")}
_FREQ = {"Hz": Decimal(1), "kHz": Decimal("1e3"), "MHz": Decimal("1e6"),
         "GHz": Decimal("1e9"), "THz": Decimal("1e12")}
_ANGULAR = {"rad/s": Decimal(1)}
_DIPOLE = {"C*m": Decimal(1), "C·m": Decimal(1), "Cm": Decimal(1),
           "D": Decimal("3.33564095198152e-30")}

UNITS = {
    "length": _LENGTH,
    "volume": {},
    "rate": {**_FREQ, **_ANGULAR},
    "dipole": _DIPOLE,
}
for _u, _f in _LENGTH.items():
    for _cube in ("^3", "3", "³"):
        UNITS["volume"][_u + _cube] = _f**3

CANONICAL_UNIT = {"length": "m", "volume": "m^3", "rate": "rad/s", "dipole": "C*m"}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S.*?)?\s*$")


def parse_quantity(value, kind, field=None, line=None):
    """Convert "12 nm", "0.76 GHz", ... to an SI float (rad/s for rates).

    The mantissa is scaled in decimal arithmetic before rounding to float, so
    equivalent spellings ("12 nm", "0.012 um") give identical bits.
    """
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise ConfigError(f"expected a quantity with a {kind} unit, got {value!r}", field, line)
    if not isinstance(value, str):
        if value == 0:
            return 0.0
        raise ConfigError(f"missing unit for {kind} quantity {value!r}", field, line)
    m = _QUANTITY.match(value)
    if not m:
        raise ConfigError(f"cannot parse quantity {value!r}", field, line)
    number, unit = m.group(1), (m.group(2) or "").replace(" ", "")
    if not unit:
        if Decimal(number) == 0:
            return 0.0
        raise ConfigError(f"missing unit for {kind} quantity {value!r}", field, line)
    table = UNITS[kind]
    if unit not in table:
        raise ConfigError(
            f"unknown {kind} unit {unit!r}; accepted: {', '.join(sorted(table))}", field, line)
    si = float(Decimal(number) * table[unit])
    if kind == "rate" and unit in _FREQ:
        si *= TWO_PI
    return si


def _parse_number(value, field, line):
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}", field, line)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Decimal(value.strip()))
        except InvalidOperation:
            pass
    raise ConfigError(f"expected a dimensionless number, got {value!r}", field, line)


# section -> field -> kind ("number" means dimensionless)
SCHEMA = {
    "metal": {"omega_p": "rate", "gamma_m": "rate"},
    "medium": {"eps_b": "number"},
    "cavity": {"eps_c": "number", "V_c": "volume", "f_c0": "number", "Q0": "number",
               "kappa1_ratio": "number", "major_radius": "length",
               "minor_radius": "length", "lambda_c": "length", "omega_c": "rate"},
    "emitter": {"mu": "dipole", "delta_ec": "rate"},
    "geometry": {"r_m": "length", "d": "length"},
}
TOP_LEVEL = {"schema_version", "delta_sp", *SCHEMA}


def _line_map(text):
    """Dotted key path -> 1-based source line, from the YAML node tree."""
    lines = {}

    def walk(node, prefix):
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                path = f"{prefix}.{k.value}" if prefix else str(k.value)
                lines[path] = k.start_mark.line + 1
                walk(v, path)

    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        return lines
    if root is not None:
        walk(root, "")
    return lines


def _read_document(text):
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"parse error: {getattr(exc, 'problem', exc)}",
                          line=mark.line + 1 if mark else None) from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError("scenario document must be a mapping")
    return doc


def apply_overrides(doc, overrides):
    """Set dotted ``section.key=value`` entries on a raw document (returns a copy)."""
    doc = {k: (dict(v) if isinstance(v, dict) else v) for k, v in doc.items()}
    for item in overrides:
        key, sep, value = item.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        parts = key.split(".")
        if len(parts) == 1:
            if key not in TOP_LEVEL or key in SCHEMA:
                raise ConfigError("unknown key", field=key)
            doc[key] = value
        elif len(parts) == 2 and parts[0] in SCHEMA:
            if parts[1] not in SCHEMA[parts[0]]:
                raise ConfigError("unknown key", field=key)
            section = doc.setdefault(parts[0], {})
            if not isinstance(section, dict):
                raise ConfigError("section must be a mapping", field=parts[0])
            section[parts[1]] = value
        else:
            raise ConfigError("unknown key", field=key)
    return doc


def config_from_document(doc, lines=None):
    lines = lines or {}
    for key in doc:
        if key not in TOP_LEVEL:
            raise ConfigError("unknown key", field=str(key), line=lines.get(str(key)))
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION and str(version) != str(SCHEMA_VERSION):
        raise ConfigError(f"unsupported schema_version {version!r}", field="schema_version",
                          line=lines.get("schema_version"))

    values = {}
    for section, fields in SCHEMA.items():
        raw = doc.get(section) or {}
        if not isinstance(raw, dict):
            raise ConfigError("section must be a mapping", field=section, line=lines.get(section))
        vals = {}
        for key, value in raw.items():
            path = f"{section}.{key}"
            if key not in fields:
                raise ConfigError("unknown key", field=path, line=lines.get(path))
            kind = fields[key]
            if kind == "number":
                vals[key] = _parse_number(value, path, lines.get(path))
            else:
                vals[key] = parse_quantity(value, kind, path, lines.get(path))
        values[section] = vals

    def build(cls, section, **extra):
        try:
            return cls(**values[section], **extra)
        except DomainError as exc:
            raise ConfigError(str(exc), field=section, line=lines.get(section)) from exc

    metal = build(DrudeMetal, "metal")
    medium = build(Medium, "medium")
    emitter = build(EmitterConfig, "emitter")
    geometry = build(NanoGeometry, "geometry")

    cav = values["cavity"]
    explicit = [k for k in ("lambda_c", "omega_c") if k in cav]
    has_dsp = "delta_sp" in doc
    if len(explicit) > 1 or (explicit and has_dsp):
        raise ConfigError("give only one of cavity.lambda_c, cavity.omega_c, delta_sp",
                          field="cavity", line=lines.get("cavity"))
    if "lambda_c" in cav:
        lam = cav.pop("lambda_c")
        if not lam > 0:
            raise ConfigError("lambda_c must be positive", field="cavity.lambda_c",
                              line=lines.get("cavity.lambda_c"))
        cav["omega_c"] = TWO_PI * 299792458.0 / lam
    if "omega_c" not in cav:
        dsp = parse_quantity(doc["delta_sp"], "rate", "delta_sp", lines.get("delta_sp")) \
            if has_dsp else 0.0
        try:
            cav["omega_c"] = lspr_frequency(metal, medium) + dsp
        except DomainError as exc:
            raise ConfigError(str(exc), field="metal") from exc
    cavity = build(CavityConfig, "cavity")
    return SystemConfig(metal, medium, cavity, emitter, geometry)


def load_config(text, overrides=()):
    """Parse, default, override and validate a scenario document."""
    doc = _read_document(text)
    lines = _line_map(text)
    if overrides:
        doc = apply_overrides(doc, overrides)
    return config_from_document(doc, lines)


def load_config_file(path, overrides=()):
    with open(path, encoding="utf-8") as fh:
        return load_config(fh.read(), overrides)


def normalized_document(config):
    """Nested dict of the scenario in canonical SI units (exact float reprs)."""

    def q(value, unit):
        return f"{float(value)!r} {unit}"

    m, md, cv, em, g = config.metal, config.medium, config.cavity, config.emitter, config.geometry
    return {
        "schema_version": SCHEMA_VERSION,
        "metal": {"omega_p": q(m.omega_p, "rad/s"), "gamma_m": q(m.gamma_m, "rad/s")},
        "medium": {"eps_b": float(md.eps_b)},
        "cavity": {
            "omega_c": q(cv.omega_c, "rad/s"),
            "eps_c": float(cv.eps_c),
            "V_c": q(cv.V_c, "m^3"),
            "f_c0": float(cv.f_c0),
            "Q0": float(cv.Q0),
            "kappa1_ratio": float(cv.kappa1_ratio),
            "major_radius": q(cv.major_radius, "m"),
            "minor_radius": q(cv.minor_radius, "m"),
        },
        "emitter": {"mu": q(em.mu, "C*m"), "delta_ec": q(em.delta_ec, "rad/s")},
        "geometry": {"r_m": q(g.r_m, "m"), "d": q(g.d, "m")},
    }


def dump_config(config):
    """Canonical YAML text of a scenario; loading it back reproduces the config."""
    return yaml.safe_dump(normalized_document(config), sort_keys=False,
                          default_flow_style=False, allow_unicode=True)


def config_digest(config):
    return hashlib.sha256(dump_config(config).encode("utf-8")).hexdigest()


# --------------------------------------------------------------------------
# reports and tabular output

def params_summary(p):
    """Human-facing view: every rate as (rate / 2 pi) in MHz."""
    mhz = lambda w: w / TWO_PI / 1e6  # noqa: E731
    return {
        "beta": {"re": p.beta.real, "im": p.beta.imag, "abs": abs(p.beta)},
        "rates_over_2pi_MHz": {
            "G_c": mhz(p.G_c), "G_cm": mhz(p.G_cm), "h": mhz(p.h),
            "kappa_0": mhz(p.kappa_0), "kappa_1": mhz(p.kappa_1),
            "kappa_R": mhz(p.kappa_R), "kappa_m": mhz(p.kappa_m),
            "gamma_s": mhz(p.gamma_s),
        },
        "V_cm_m3": p.V_cm,
        "cooperativity": {"C_c": p.C_c, "C_cm": p.C_cm, "C_I": p.C_I, "C_II": p.C_II,
                          "enhancement": p.enhancement},
        "lambda_c_nm": TWO_PI * 299792458.0 / p.omega_c * 1e9,
        "lambda_sp_nm": TWO_PI * 299792458.0 / p.omega_sp * 1e9,
        "delta_sp_over_2pi_MHz": mhz(p.delta_sp),
    }


@dataclass
class RunReport:
    config: SystemConfig
    params: HybridParams
    timestamp: str = None

    @property
    def provenance(self):
        return {"tool": "hybridqed", "tool_version": __version__,
                "timestamp": self.timestamp, "input_digest": config_digest(self.config)}

    def to_dict(self):
        return {"config": normalized_document(self.config),
                "params": params_summary(self.params),
                "provenance": self.provenance}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def format_csv(columns, rows, comments=()):
    """CSV text: '#' comment lines, a header row, values in 9-significant-digit scientific."""
    out = [f"# {c}" for c in comments]
    out.append(",".join(columns))
    for row in rows:
        out.append(",".join(_fmt(v) for v in row))
    return "\n".join(out) + "\n"


def _fmt(v):
    if isinstance(v, str):
        return v
    return f"{float(v):.8e}"


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
