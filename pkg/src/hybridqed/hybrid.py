"""
Quantities induced by a metal nanosphere (MNP) sitting on a WGM cavity.

The sphere is treated quasi-statically: its response is the Clausius-Mossotti
factor ``beta`` evaluated at the cavity frequency. The emitter sits a gap
``d`` from the sphere surface on the axis parallel to the cavity field.

Rates follow the package convention: angular (rad/s), energy decay rates for
every ``kappa``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.constants import c

from . import cavity as _cav
from .errors import DomainError, SingularityError
from .materials import beta_coefficient, drude_permittivity, lspr_frequency


@dataclass(frozen=True)
class NanoGeometry:
    r_m: float = 12e-9
    d: float = 3e-9

    def __post_init__(self):
        if not self.r_m > 0:
            raise DomainError(f"r_m must be positive, got {self.r_m}")
        if not self.d > 0:
            raise DomainError(f"gap d must be positive, got {self.d}")

    @property
    def r(self):
        """Emitter distance from the sphere centre."""
        return self.r_m + self.d


@dataclass(frozen=True)
class HybridParams:
    beta: complex
    G_c: float
    G_cm: float
    h: float
    kappa_0: float
    kappa_1: float
    kappa_R: float
    kappa_m: float
    gamma_s: float
    V_cm: float
    C_c: float
    C_cm: float
    omega_c: float = float("nan")
    omega_sp: float = float("nan")
    delta_ec: float = 0.0

    @property
    def kappa_bare(self):
        return self.kappa_0 + self.kappa_1

    @property
    def kappa_mnp(self):
        return self.kappa_R + self.kappa_m

    @property
    def kappa_total(self):
        return self.kappa_bare + self.kappa_mnp

    @property
    def C_I(self):
        """Cooperativity when MNP losses dominate."""
        return _coop(self.G_cm, self.gamma_s, self.kappa_mnp)

    @property
    def C_II(self):
        """Cooperativity when the taper and intrinsic losses dominate."""
        return _coop(self.G_cm, self.gamma_s, self.kappa_bare)

    @property
    def enhancement(self):
        return self.C_cm / self.C_c

    @property
    def delta_sp(self):
        return self.omega_c - self.omega_sp


def field_profile(beta, r_m, r, theta):
    """Local field relative to the unperturbed cavity field, along the cavity polarization.

    Inside the sphere the field is uniform, (1 - beta). Outside, the induced
    dipole adds beta (r_m/r)^3 (2 e_r cos(theta) + e_theta sin(theta)); the
    component along the polarization axis is 1 + beta s (3 cos^2 - 1) with
    s = (r_m/r)^3, i.e. 1 + 2 beta s on axis and 1 - beta s at the equator.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    s = np.where(r > r_m, (r_m / np.where(r > 0, r, 1.0)) ** 3, 0.0)
    outside = 1 + beta * s * (3 * np.cos(theta) ** 2 - 1)
    out = np.where(r <= r_m, 1 - beta, outside)
    return complex(out) if out.ndim == 0 else out


def mode_volume_hybrid(cavity, medium, beta, f_c0=None):
    """Effective mode volume of the hybrid mode, eps_c V_c / (eps_b |1+2 beta|^2 f^2)."""
    f = cavity.f_c0 if f_c0 is None else f_c0
    gain = abs(1 + 2 * beta) ** 2
    if gain == 0:
        raise SingularityError("beta = -1/2 makes the hybrid mode volume infinite")
    if f == 0:
        return float("inf")
    return cavity.eps_c * cavity.V_c / (medium.eps_b * gain * f**2)


def g_hybrid(G_c, beta, geometry):
    """Coupling scaled by the on-axis near-field factor |1 + 2 beta (r_m/r)^3|."""
    s = (geometry.r_m / geometry.r) ** 3
    return G_c * abs(1 + 2 * beta * s)


def mixing_strength_h(cavity, medium, beta, r_m):
    """CW/CCW mixing from scattering off the sphere (rad/s)."""
    return (2 * np.pi * r_m**3 * medium.eps_b * cavity.omega_c * abs(beta) ** 2
            * cavity.f_c0**2 / (cavity.eps_c * cavity.V_c))


def kappa_R(cavity, medium, beta, r_m):
    """Radiative loss of the WGM through dipole scattering by the sphere."""
    alpha_abs = 4 * np.pi * r_m**3
    return (medium.eps_b**2.5 * alpha_abs**2 * abs(beta) ** 4 * cavity.omega_c**4
            * cavity.f_c0**2 / (6 * np.pi * c**3 * cavity.eps_c * cavity.V_c))


def kappa_m(cavity, metal, beta, r_m):
    """Ohmic absorption loss inside the sphere."""
    return (4 * np.pi * r_m**3 * abs(1 - beta) ** 2 * metal.omega_p**2 * metal.gamma_m
            * cavity.f_c0**2 / (3 * cavity.eps_c * cavity.omega_c**2 * cavity.V_c))


def _coop(G, gamma, kappa):
    if not (gamma > 0 and kappa > 0):
        raise DomainError("cooperativity needs positive gamma_s and kappa")
    return 2 * G**2 / (gamma * kappa)


def cooperativity(params, include_mnp=True):
    """C = 2 G^2 / (gamma_s kappa) with the loaded total kappa.

    With the MNP, kappa = kappa_0 + kappa_1 + kappa_R + kappa_m and G = G_cm;
    without it, kappa = kappa_0 + kappa_1 and G = G_c.
    """
    if include_mnp:
        return _coop(params.G_cm, params.gamma_s, params.kappa_total)
    return _coop(params.G_c, params.gamma_s, params.kappa_bare)


def derive_params(metal, medium, cavity, emitter, geometry):
    """Full rate set for one scenario, with beta evaluated at the cavity frequency."""
    beta = beta_coefficient(drude_permittivity(metal, cavity.omega_c), medium)
    G_c = _cav.g_bare(cavity, emitter)
    k0 = _cav.kappa_0(cavity)
    k1 = _cav.kappa_1(cavity)
    gs = _cav.gamma_s(emitter, medium, _cav.emitter_frequency(cavity, emitter))
    G_cm = g_hybrid(G_c, beta, geometry)
    kR = kappa_R(cavity, medium, beta, geometry.r_m)
    km = kappa_m(cavity, metal, beta, geometry.r_m)
    try:
        w_sp = lspr_frequency(metal, medium)
    except DomainError:
        w_sp = float("nan")
    return HybridParams(
        beta=beta,
        G_c=G_c,
        G_cm=G_cm,
        h=mixing_strength_h(cavity, medium, beta, geometry.r_m),
        kappa_0=k0,
        kappa_1=k1,
        kappa_R=kR,
        kappa_m=km,
        gamma_s=gs,
        V_cm=mode_volume_hybrid(cavity, medium, beta),
        C_c=_coop(G_c, gs, k0 + k1),
        C_cm=_coop(G_cm, gs, k0 + k1 + kR + km),
        omega_c=cavity.omega_c,
        omega_sp=w_sp,
        delta_ec=emitter.delta_ec,
    )
