"""
Weak-drive taper transmission of the CW/CCW doublet with MNP mixing and a dipole.

The amplitudes x = (a_cw, a_ccw, sigma_-) obey, in the frame of the probe,

    dx/dt = -i (M - Delta) x + sqrt(kappa_1) a_in e_cw

where M is the non-Hermitian dynamical matrix built by ``dynamical_matrix``.
Its eigenvalues carry line positions (real part, detuning from w_c) and
half-linewidths (minus the imaginary part). The transmitted field in the
forward taper direction is a_in - sqrt(kappa_1) a_cw.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from .errors import NumericalError


@dataclass(frozen=True)
class LinearSystemModel:
    delta_grid: np.ndarray
    rates: object
    include_mnp: bool = True
    include_dipole: bool = True

    def __post_init__(self):
        grid = np.asarray(self.delta_grid, dtype=float)
        object.__setattr__(self, "delta_grid", grid)
        if grid.ndim != 1 or grid.size < 3:
            raise ValueError("delta_grid must be a 1-D array of at least 3 points")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("delta_grid must be strictly increasing")
        need = 3 * self.scale
        if grid[0] > -need or grid[-1] < need:
            raise ValueError(
                "delta_grid must span at least [-3, 3] x max(G, kappa_total) "
                f"= +/-{need:.4g} rad/s"
            )

    @property
    def coupling(self):
        if not self.include_dipole:
            return 0.0
        return self.rates.G_cm if self.include_mnp else self.rates.G_c

    @property
    def kappa_total(self):
        r = self.rates
        return r.kappa_total if self.include_mnp else r.kappa_bare

    @property
    def scale(self):
        return max(self.coupling, self.kappa_total)

    @classmethod
    def auto(cls, rates, include_mnp=True, include_dipole=True, points=2001, span=4.0):
        """Uniform grid covering +/- span x max(G, kappa) plus any line shifts."""
        probe = cls.__new__(cls)
        object.__setattr__(probe, "rates", rates)
        object.__setattr__(probe, "include_mnp", include_mnp)
        object.__setattr__(probe, "include_dipole", include_dipole)
        half = span * probe.scale
        if include_mnp:
            half += 2 * abs(rates.h)
        if include_dipole:
            half += abs(rates.delta_ec)
        grid = np.linspace(-half, half, points)
        return cls(grid, rates, include_mnp, include_dipole)


@dataclass
class SpectrumTrace:
    delta: np.ndarray
    transmission: np.ndarray
    dip_positions: list
    dip_depths: list = field(default_factory=list)
    dip_widths: list = field(default_factory=list)
    coarse_grid: bool = False


def _active_modes(model):
    modes = ["cw"]
    if model.include_mnp or model.include_dipole:
        modes.append("ccw")
    if model.include_dipole:
        modes.append("dipole")
    return modes


def dynamical_matrix(model):
    """Non-Hermitian coefficient matrix over the modes the drive can reach.

    Uncoupled modes are dropped: without MNP and dipole only the CW mode
    remains (1x1); with the MNP alone the CW/CCW pair (2x2).
    """
    r = model.rates
    modes = _active_modes(model)
    n = len(modes)
    M = np.zeros((n, n), dtype=complex)
    h = r.h if model.include_mnp else 0.0
    k_mnp = r.kappa_mnp if model.include_mnp else 0.0
    diag = h - 0.5j * (r.kappa_bare + k_mnp)
    cross = h - 0.5j * k_mnp
    M[0, 0] = diag
    if n > 1:
        M[1, 1] = diag
        M[0, 1] = M[1, 0] = cross
    if model.include_dipole:
        G = model.coupling
        M[2, 2] = r.delta_ec - 0.5j * r.gamma_s
        M[0, 2] = M[2, 0] = G
        M[1, 2] = M[2, 1] = G
    return M


def dynamical_matrix_eigenvalues(model):
    """Complex normal-mode frequencies (rad/s), sorted by real part."""
    ev = np.linalg.eigvals(dynamical_matrix(model))
    return ev[np.argsort(ev.real, kind="stable")]


def _solve_cw(model, deltas):
    M = dynamical_matrix(model)
    n = M.shape[0]
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    A = M[None, :, :] - deltas[:, None, None] * np.eye(n)[None, :, :]
    b = np.zeros((deltas.size, n, 1), dtype=complex)
    b[:, 0, 0] = -1j * np.sqrt(model.rates.kappa_1)
    try:
        x = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"steady-state system is singular: {exc}") from exc
    return x[:, 0, 0]


def transmission(model, deltas):
    """Power transmission |1 - sqrt(kappa_1) a_cw|^2 for unit drive, vectorized over detuning."""
    a_cw = _solve_cw(model, deltas)
    T = np.abs(1 - np.sqrt(model.rates.kappa_1) * a_cw) ** 2
    if not np.all(np.isfinite(T)):
        raise NumericalError("non-finite transmission")
    return T


def steady_state_transmission(model, delta):
    return float(transmission(model, delta)[0])


def _parabolic_vertex(x, y):
    (x0, x1, x2), (y0, y1, y2) = x, y
    den = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / den
    b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / den
    if a <= 0:
        return x1, y1
    xv = -b / (2 * a)
    cc = y1 - a * x1**2 - b * x1
    return xv, a * xv**2 + b * xv + cc


def _half_depth_width(x, T, i):
    # full width where the dip crosses halfway between its floor and unity
    level = 0.5 * (1 + T[i])
    edges = []
    for step in (-1, 1):
        j = i
        while 0 <= j + step < T.size and T[j + step] < level:
            if T[j + step] < T[j] and j != i:
                return float("nan")  # ran into a neighbouring dip
            j += step
        k = j + step
        if not 0 <= k < T.size:
            return float("nan")
        edges.append(x[j] + (level - T[j]) * (x[k] - x[j]) / (T[k] - T[j]))
    return edges[1] - edges[0]


def find_dips(x, T, prominence=1e-6):
    """Local minima of T with parabolic refinement over the three bracketing points."""
    idx, _ = find_peaks(-T, prominence=prominence)
    pos, depth, width = [], [], []
    for i in idx:
        xv, yv = _parabolic_vertex(x[i - 1:i + 2], T[i - 1:i + 2])
        pos.append(float(xv))
        depth.append(float(yv))
        width.append(float(_half_depth_width(x, T, i)))
    return pos, depth, width


def sweep_spectrum(model):
    """Evaluate the transmission on the model grid and locate its dips."""
    x = model.delta_grid
    T = transmission(model, x)
    pos, depth, width = find_dips(x, T)
    fwhm = 2 * np.min(np.abs(dynamical_matrix_eigenvalues(model).imag))
    coarse = bool(fwhm / np.max(np.diff(x)) < 5)
    if coarse:
        warnings.warn("spectrum grid has fewer than 5 points per linewidth", stacklevel=2)
    return SpectrumTrace(x, T, pos, depth, width, coarse)
