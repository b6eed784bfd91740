"""Bare whispering-gallery cavity and emitter: decay, vacuum coupling, emission."""

from dataclasses import dataclass

import numpy as np
from scipy.constants import c, epsilon_0, hbar

from .errors import DomainError


@dataclass(frozen=True)
class CavityConfig:
    """One WGM doublet (degenerate CW/CCW pair).

    ``V_c`` and ``f_c0`` come from an electromagnetic mode solver and are
    inputs here. The toroid radii are carried as metadata only.
    """

    omega_c: float
    eps_c: float = 1.45**2
    V_c: float = 200e-18
    f_c0: float = 0.3
    Q0: float = 1e7
    kappa1_ratio: float = 5.0
    major_radius: float = 30e-6
    minor_radius: float = 3e-6

    def __post_init__(self):
        for name in ("omega_c", "eps_c", "V_c", "Q0", "kappa1_ratio",
                     "major_radius", "minor_radius"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0 <= self.f_c0 <= 1:
            raise DomainError(f"f_c0 must lie in [0, 1], got {self.f_c0}")
        if not self.Q0 >= 1:
            raise DomainError(f"Q0 must be >= 1, got {self.Q0}")

    @classmethod
    def from_wavelength(cls, lambda_c, **kwargs):
        return cls(omega_c=2 * np.pi * c / lambda_c, **kwargs)

    @property
    def lambda_c(self):
        """Vacuum wavelength (m)."""
        return 2 * np.pi * c / self.omega_c


@dataclass(frozen=True)
class EmitterConfig:
    """Two-level dipole emitter; ``delta_ec`` is w_e - w_c (rad/s)."""

    mu: float = 2.4e-28
    delta_ec: float = 0.0

    def __post_init__(self):
        if not self.mu >= 0:
            raise DomainError(f"mu must be non-negative, got {self.mu}")


def kappa_0(cavity):
    """Intrinsic energy decay w_c / Q0."""
    return cavity.omega_c / cavity.Q0


def kappa_1(cavity):
    """Taper (external) coupling rate."""
    return cavity.kappa1_ratio * kappa_0(cavity)


def g_bare(cavity, emitter):
    """Vacuum Rabi coupling of the emitter to one traveling WGM (rad/s)."""
    zpf = np.sqrt(cavity.omega_c / (2 * hbar * epsilon_0 * cavity.eps_c * cavity.V_c))
    return emitter.mu * cavity.f_c0 * zpf


def gamma_s(emitter, medium, omega_e):
    """Free-space spontaneous emission rate, scaled by the background index."""
    if not omega_e > 0:
        raise DomainError(f"omega_e must be positive, got {omega_e}")
    return (np.sqrt(medium.eps_b) * emitter.mu**2 * omega_e**3
            / (3 * np.pi * epsilon_0 * hbar * c**3))


def emitter_frequency(cavity, emitter):
    return cavity.omega_c + emitter.delta_ec
