"""
Cooperativity-enhancement maps over sphere size, gap and cavity-plasmon detuning.

Detuning is applied by retuning the cavity (w_c = w_sp + delta_sp) at a fixed
metal, so every w_c-dependent quantity, beta included, is re-evaluated at
each point. Detuning axes are expressed in units of the metal damping gamma_m.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .config_io import D_MIN, R_M_MAX, SystemConfig, default_config, derive_all
from .errors import ConfigError, DomainError

DETUNING_WINDOW = (-6.0, 4.0)


@dataclass(frozen=True)
class SweepSpec:
    """Axis ranges as (min, max, steps); lengths in m, detuning in units of gamma_m."""

    r_m_range: tuple = (1e-9, 40e-9, 40)
    d_range: tuple = (1e-9, 20e-9, 39)
    delta_sp_range: tuple = (DETUNING_WINDOW[0], DETUNING_WINDOW[1], 201)
    fixed: SystemConfig = field(default_factory=default_config)

    def __post_init__(self):
        for name in ("r_m_range", "d_range", "delta_sp_range"):
            lo, hi, steps = getattr(self, name)
            if int(steps) != steps or steps < 2:
                raise ConfigError("steps must be an integer >= 2", field=name)
            if not lo < hi:
                raise ConfigError("min must be smaller than max", field=name)
        lo, hi, _ = self.r_m_range
        if lo <= 0 or hi > R_M_MAX * (1 + 1e-12):
            raise ConfigError(f"r_m must lie in (0, {R_M_MAX * 1e9:g} nm]", field="r_m_range")
        if self.d_range[0] < D_MIN * (1 - 1e-12):
            raise ConfigError(f"d must be >= {D_MIN * 1e9:g} nm", field="d_range")

    @staticmethod
    def axis(rng):
        lo, hi, steps = rng
        return np.linspace(lo, hi, int(steps))


@dataclass
class SweepResult:
    axes: dict
    values: np.ndarray
    argmax: dict

    @classmethod
    def build(cls, axes, values):
        values = np.asarray(values, dtype=float)
        idx = np.unravel_index(int(np.argmax(values)), values.shape)
        arg = {name: float(ax[i]) for (name, ax), i in zip(axes.items(), idx)}
        arg["value"] = float(values[idx])
        return cls(axes, values, arg)


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def enhancement(config):
    """C_cm / C_c for one scenario."""
    return derive_all(config).enhancement


def detuned(config, delta_sp_units):
    """Retune the cavity to delta_sp = x gamma_m, refusing non-positive frequencies."""
    dsp = delta_sp_units * config.metal.gamma_m
    if config.omega_sp + dsp <= 0:
        raise DomainError(f"delta_sp = {delta_sp_units:g} gamma_m pushes w_c below zero")
    return config.with_delta_sp(dsp)


def sweep_rm_d(spec, workers=None):
    """Enhancement on the (r_m, d) grid at the detuning of ``spec.fixed``; rows are r_m."""
    r_m = spec.axis(spec.r_m_range)
    d = spec.axis(spec.d_range)
    base = spec.fixed

    def row(rm):
        return [enhancement(base.with_geometry(r_m=rm, d=dd)) for dd in d]

    values = np.array(_map(row, r_m, workers))
    return SweepResult.build({"r_m": r_m, "d": d}, values)


def sweep_detuning(spec, r_m_list, workers=None):
    """One enhancement curve over delta_sp / gamma_m per sphere radius."""
    x = spec.axis(spec.delta_sp_range)
    results = []
    for rm in r_m_list:
        base = spec.fixed.with_geometry(r_m=rm)
        vals = _map(lambda u: enhancement(detuned(base, u)), x, workers)
        results.append(SweepResult.build({"delta_sp_over_gamma_m": x}, vals))
    return results


def optimize_detuning(config, r_m=None, window=DETUNING_WINDOW, points=101, xtol=1e-4):
    """Detuning maximizing the enhancement: coarse grid then golden-section refinement.

    Returns (delta_sp in rad/s, enhancement at that detuning).
    """
    base = config if r_m is None else config.with_geometry(r_m=r_m)
    f = lambda u: enhancement(detuned(base, u))  # noqa: E731
    x = np.linspace(window[0], window[1], max(int(points), 101))
    y = np.array([f(u) for u in x])
    i = int(np.argmax(y))
    best_x, best_y = float(x[i]), float(y[i])
    if 0 < i < x.size - 1:
        res = minimize_scalar(lambda u: -f(u), bracket=(x[i - 1], x[i], x[i + 1]),
                              method="golden", tol=xtol)
        u = float(res.x)
        if window[0] <= u <= window[1] and -res.fun >= best_y:
            best_x, best_y = u, float(-res.fun)
    else:
        # maximum on the window edge: bounded search in the edge cell
        j = 1 if i == 0 else x.size - 2
        lo, hi = sorted((float(x[i]), float(x[j])))
        res = minimize_scalar(lambda u: -f(u), bounds=(lo, hi), method="bounded",
                              options={"xatol": xtol * max(abs(lo), abs(hi), 1.0)})
        if -res.fun > best_y:
            best_x, best_y = float(res.x), float(-res.fun)
    return best_x * base.metal.gamma_m, best_y


def regime_curves(config, r_m=None, grid=None):
    """C_cm with its loss-dominated (C_I) and taper-dominated (C_II) limits vs detuning."""
    base = config if r_m is None else config.with_geometry(r_m=r_m)
    x = np.linspace(*DETUNING_WINDOW, 201) if grid is None else np.asarray(grid, dtype=float)
    params = [derive_all(detuned(base, u)) for u in x]
    return {
        "delta_sp_over_gamma_m": x,
        "C_cm": np.array([p.C_cm for p in params]),
        "C_I": np.array([p.C_I for p in params]),
        "C_II": np.array([p.C_II for p in params]),
    }
