"""
Metal dispersion and the quasi-static response of a small metal sphere.

All frequencies are angular (rad/s). Permittivities are returned as plain
Python/numpy complex numbers with ``.real`` and ``.imag``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoResonanceError, SingularityError


@dataclass(frozen=True)
class DrudeMetal:
    """Free-electron metal: bulk plasma frequency and collision damping (rad/s)."""

    omega_p: float = 6e15
    gamma_m: float = 3e14

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"omega_p must be positive, got {self.omega_p}")
        if not self.gamma_m >= 0:
            raise DomainError(f"gamma_m must be non-negative, got {self.gamma_m}")
        if not self.gamma_m < self.omega_p:
            raise DomainError("gamma_m must be smaller than omega_p")

    def permittivity(self, omega):
        return drude_permittivity(self, omega)


@dataclass(frozen=True)
class Medium:
    """Non-absorbing background dielectric surrounding the particle."""

    eps_b: float = 1.0

    def __post_init__(self):
        if not self.eps_b >= 1:
            raise DomainError(f"eps_b must be >= 1, got {self.eps_b}")


def drude_permittivity(metal, omega):
    """eps_m(w) = 1 - w_p^2 / [w (w + i gamma_m)]."""
    w = np.asarray(omega, dtype=float)
    if np.any(~(w > 0)):
        raise DomainError("drude_permittivity needs omega > 0")
    eps = 1.0 - metal.omega_p**2 / (w * (w + 1j * metal.gamma_m))
    return complex(eps) if eps.ndim == 0 else eps


def beta_coefficient(eps_m, medium):
    """Clausius-Mossotti factor (eps_m - eps_b) / (eps_m + 2 eps_b)."""
    eps_b = medium.eps_b
    den = np.asarray(eps_m + 2 * eps_b)
    if np.any(den == 0):
        raise SingularityError("eps_m = -2 eps_b exactly: lossless sphere at resonance")
    beta = (eps_m - eps_b) / den
    return complex(beta) if np.ndim(beta) == 0 else beta


def lspr_frequency(metal, medium):
    """Dipolar plasmon frequency, the root of Re eps_m(w) = -2 eps_b.

    With the Drude form, Re eps_m = 1 - w_p^2 / (w^2 + gamma^2), so the root
    is closed-form: w_sp = sqrt(w_p^2 / (1 + 2 eps_b) - gamma^2).
    """
    w2 = metal.omega_p**2 / (1 + 2 * medium.eps_b) - metal.gamma_m**2
    if not w2 > 0:
        raise NoResonanceError(
            "omega_p^2 <= (1 + 2 eps_b) gamma_m^2: no real plasmon resonance"
        )
    return float(np.sqrt(w2))


def polarizability(r_m, beta):
    """Quasi-static sphere polarizability 4 pi r_m^3 beta (m^3)."""
    if not r_m > 0:
        raise DomainError(f"r_m must be positive, got {r_m}")
    return 4 * np.pi * r_m**3 * beta
