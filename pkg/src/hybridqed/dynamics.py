"""
Collective-spin dynamics of N emitters in the dispersive regime.

States live in the symmetric (Dicke) subspace, basis |j, m> with j = N/2 and
m = -j ... j stored at index m + j. Index 0 is all emitters in |g>, index N
all in |e>. The effective Hamiltonian is one-axis twisting,
chi (J_z - J_z^2), which is diagonal in this basis.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, SingularityError


def spin_ops(n_spins):
    """(J_x, J_y, J_z) as dense (N+1)x(N+1) matrices in the Dicke basis."""
    j = n_spins / 2
    m = np.arange(n_spins + 1) - j
    jp = np.diag(np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1)), -1)
    jx = 0.5 * (jp + jp.T)
    jy = -0.5j * (jp - jp.T)
    return jx.astype(complex), jy, np.diag(m).astype(complex)


@dataclass(frozen=True)
class DickeState:
    n_spins: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if int(self.n_spins) != self.n_spins or self.n_spins < 1:
            raise DomainError("n_spins must be a positive integer")
        if amp.shape != (self.n_spins + 1,):
            raise DomainError(f"need {self.n_spins + 1} amplitudes, got shape {amp.shape}")
        if not np.all(np.isfinite(amp)):
            raise DomainError("amplitudes must be finite")
        if abs(np.vdot(amp, amp).real - 1) > 1e-12:
            raise DomainError("state is not normalized")

    @classmethod
    def ground(cls, n_spins):
        amp = np.zeros(n_spins + 1, dtype=complex)
        amp[0] = 1
        return cls(n_spins, amp)

    @classmethod
    def excited(cls, n_spins):
        amp = np.zeros(n_spins + 1, dtype=complex)
        amp[-1] = 1
        return cls(n_spins, amp)

    @classmethod
    def from_vector(cls, n_spins, vec):
        vec = np.asarray(vec, dtype=complex)
        return cls(n_spins, vec / np.linalg.norm(vec))

    @property
    def m(self):
        return np.arange(self.n_spins + 1) - self.n_spins / 2

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def expect(self, op):
        return np.vdot(self.amplitudes, op @ self.amplitudes)

    def overlap(self, other):
        return np.vdot(self.amplitudes, other.amplitudes)


def noon_state(n_spins, phase=0.0):
    """(|g...g> + e^{i phase} |e...e>) / sqrt(2)."""
    amp = np.zeros(n_spins + 1, dtype=complex)
    amp[0] = 1 / np.sqrt(2)
    amp[-1] = np.exp(1j * phase) / np.sqrt(2)
    return DickeState(n_spins, amp)


@dataclass(frozen=True)
class TwistingModel:
    """Dispersive one-axis twisting obtained by eliminating the cavity."""

    G_cm: float
    delta_ec: float
    n_spins: int
    h: float = 0.0

    def __post_init__(self):
        if self.delta_ec - self.n_spins * self.h == 0:
            raise SingularityError("delta_ec = N h: twisting rate diverges")

    @property
    def chi(self):
        return chi_rate(self.G_cm, self.delta_ec, self.n_spins, self.h)

    @property
    def dispersive(self):
        """True when |delta_ec| >= 10 G_cm, where the elimination is trustworthy."""
        return bool(abs(self.delta_ec) >= 10 * self.G_cm)

    @classmethod
    def from_params(cls, params, n_spins, delta_ec=None):
        d = params.delta_ec if delta_ec is None else delta_ec
        return cls(params.G_cm, d, n_spins, params.h)


def chi_rate(G_cm, delta_ec, n_spins, h):
    """Twisting strength 2 G_cm^2 / (delta_ec - N h)."""
    den = delta_ec - n_spins * h
    if den == 0:
        raise SingularityError("delta_ec = N h: twisting rate diverges")
    return 2 * G_cm**2 / den


def evolve_twisting(state, chi, t):
    """Exact evolution under chi (J_z - J_z^2) for time t."""
    m = state.m
    return DickeState(state.n_spins, state.amplitudes * np.exp(-1j * chi * t * (m - m**2)))


def rotation_matrix(n_spins, axis, angle):
    """exp(-i angle J_n) with J_n = J_x, J_y, or cos(phi) J_x + sin(phi) J_y for numeric axis phi."""
    jx, jy, _ = spin_ops(n_spins)
    if axis == "x":
        jn = jx
    elif axis == "y":
        jn = jy
    elif isinstance(axis, (int, float, np.floating)) and not isinstance(axis, bool):
        jn = np.cos(axis) * jx + np.sin(axis) * jy
    else:
        raise DomainError(f"axis must be 'x', 'y' or an azimuth in rad, got {axis!r}")
    w, v = np.linalg.eigh(jn)
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


def collective_rotation(state, axis, angle):
    u = rotation_matrix(state.n_spins, axis, angle)
    out = u @ state.amplitudes
    return DickeState(state.n_spins, out / np.linalg.norm(out))


def coherent_x(n_spins):
    """All spins along +x, the product state 2^{-N/2} (|g> + |e>)^N.

    With exp(-i angle J_y), reaching +x from |g...g> (the -z pole) takes
    angle = -pi/2.
    """
    return collective_rotation(DickeState.ground(n_spins), "y", -np.pi / 2)


@dataclass
class NoonResult:
    n_spins: int
    fidelity: float
    phase: float
    twist: float
    state: DickeState


def noon_fidelity(state):
    """Overlap with the closest NOON state, maximized over its relative phase."""
    a = state.amplitudes
    return 0.5 * (abs(a[0]) + abs(a[-1])) ** 2


def noon_protocol(n_spins, chi=1.0, duration=None, resolution=1e-3, initial=None):
    """Pulse - twist - pulse NOON preparation.

    A pi/2 pulse about y makes the product superposition (|g> + |e>)^N, the twisting runs
    for chi t = pi/2 (or ``duration`` if given), and a second pi/2 pulse
    about the azimuth phi is applied. phi is scanned on [0, 2 pi) at
    ``resolution`` and refined; the fidelity is also maximized over the
    relative phase of the NOON target. Returns (fidelity, phi).
    """
    res = run_noon(n_spins, chi, duration, resolution, initial)
    return res.fidelity, res.phase


def run_noon(n_spins, chi=1.0, duration=None, resolution=1e-3, initial=None):
    if n_spins < 2:
        raise DomainError("NOON protocol needs N >= 2")
    if duration is None:
        duration = np.pi / (2 * abs(chi)) if chi != 0 else 0.0
    start = DickeState.ground(n_spins) if initial is None else initial
    psi = collective_rotation(start, "y", -np.pi / 2)
    psi = evolve_twisting(psi, chi, duration)

    # R_phi = e^{-i phi Jz} U_x e^{+i phi Jz}; the outer diagonal factor only
    # dephases amplitudes, so |c_0| and |c_N| need just U_x e^{i phi Jz} psi
    m = psi.m
    ux = rotation_matrix(n_spins, "x", np.pi / 2)
    rows = ux[[0, -1], :] * psi.amplitudes[None, :]

    def fid(phi):
        ph = np.exp(1j * np.outer(np.atleast_1d(phi), m))
        c = ph @ rows.T
        return 0.5 * (np.abs(c[:, 0]) + np.abs(c[:, 1])) ** 2

    grid = np.arange(0.0, 2 * np.pi, resolution)
    vals = fid(grid)
    i = int(np.argmax(vals))
    phi, best = float(grid[i]), float(vals[i])
    r = minimize_scalar(lambda p: -fid(p)[0], bounds=(phi - resolution, phi + resolution),
                        method="bounded", options={"xatol": 1e-10})
    if -r.fun > best:
        phi, best = float(r.x) % (2 * np.pi), float(-r.fun)
    final = collective_rotation(psi, phi, np.pi / 2)
    return NoonResult(n_spins, noon_fidelity(final), phi, chi * duration, final)


def mean_spin(state):
    jx, jy, jz = spin_ops(state.n_spins)
    return np.array([state.expect(j).real for j in (jx, jy, jz)])


def squeezing_parameter(state):
    """Kitagawa-Ueda xi^2 = 4 min var(J_perp) / N over directions normal to <J>."""
    N = state.n_spins
    ops = spin_ops(N)
    mean = np.array([state.expect(j).real for j in ops])
    norm = np.linalg.norm(mean)
    if norm < 1e-12:
        raise DomainError("mean spin vanishes; squeezing parameter undefined")
    n0 = mean / norm
    trial = np.array([1.0, 0, 0]) if abs(n0[0]) < 0.9 else np.array([0, 1.0, 0])
    e1 = np.cross(n0, trial)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n0, e1)
    a = sum(c * o for c, o in zip(e1, ops))
    b = sum(c * o for c, o in zip(e2, ops))
    ma, mb = state.expect(a).real, state.expect(b).real
    cov = np.array([
        [state.expect(a @ a).real - ma**2, 0.5 * state.expect(a @ b + b @ a).real - ma * mb],
        [0.0, state.expect(b @ b).real - mb**2],
    ])
    cov[1, 0] = cov[0, 1]
    return float(4 * np.linalg.eigvalsh(cov)[0] / N)


def optimal_squeezing(n_spins, chi=1.0, points=2000):
    """Minimum xi^2 over chi t in (0, pi/2] starting from the x coherent state.

    Returns (xi2_min, t_opt).
    """
    css = coherent_x(n_spins)

    def xi2(ct):
        try:
            return squeezing_parameter(evolve_twisting(css, 1.0, ct))
        except DomainError:
            return np.inf

    grid = np.linspace(np.pi / 2 / points, np.pi / 2, points)
    vals = np.array([xi2(ct) for ct in grid])
    i = int(np.argmin(vals))
    ct, best = float(grid[i]), float(vals[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, points - 1)]
    r = minimize_scalar(xi2, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    if r.fun < best:
        ct, best = float(r.x), float(r.fun)
    return best, ct / abs(chi)
