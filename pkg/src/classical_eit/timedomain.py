"""Fixed-step RK4 integration of the coupled equations and quadrature demodulation.

This is the independent check on the closed-form response: it never
evaluates the steady-state formula, only the equations of motion.  The drive
is real, ``(F/m) cos(w t + phi_s)``, and the complex amplitude is recovered by
projecting the settled driven coordinate onto ``cos(w t)`` and ``sin(w t)``
over a whole number of periods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numba
import numpy as np

from .errors import (
    DivergenceError,
    IntegrationConfigError,
    NotSteadyError,
    WindowTooShortError,
)
from .model import CircuitParams, CoupledPair, MechanicalParams, Params, coupled_equations

RESOLUTION_LIMIT = 0.1
RESIDUAL_LIMIT = 1e-2


@dataclass(frozen=True)
class OscState:
    """Picture-native state: (x1, v1, x2, v2) are q1, i1, q2, i2 for circuits."""

    t: float = 0.0
    x1: float = 0.0
    v1: float = 0.0
    x2: float = 0.0
    v2: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.t, self.x1, self.v1, self.x2, self.v2)):
            raise DivergenceError("state has non-finite components", t=self.t)


@dataclass(frozen=True, eq=False)
class Trajectory:
    t: np.ndarray
    x1: np.ndarray
    v1: np.ndarray
    x2: np.ndarray
    v2: np.ndarray
    picture: str
    drive_omega: float
    dt: float

    def __len__(self):
        return len(self.t)

    def state(self, i: int) -> OscState:
        return OscState(float(self.t[i]), float(self.x1[i]), float(self.v1[i]),
                        float(self.x2[i]), float(self.v2[i]))

    @property
    def driven(self) -> np.ndarray:
        return self.x2 if self.picture == "electrical" else self.x1


@dataclass(frozen=True)
class IntegrationConfig:
    dt: float
    t_end: float
    transient_periods: float
    demod_periods: int = 10

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise IntegrationConfigError(f"dt must be > 0, got {self.dt!r}")
        if not (self.t_end > 0 and math.isfinite(self.t_end)):
            raise IntegrationConfigError(f"t_end must be > 0, got {self.t_end!r}")
        if self.transient_periods < 0:
            raise IntegrationConfigError("transient_periods must be >= 0")
        if int(self.demod_periods) != self.demod_periods or self.demod_periods < 1:
            raise IntegrationConfigError("demod_periods must be an integer >= 1")

    @classmethod
    def for_drive(cls, params: Params, drive_omega: float, steps_per_period: int = 1024,
                  demod_periods: int = 10, transient_periods: Optional[float] = None,
                  settle_tol: float = 1e-10) -> "IntegrationConfig":
        """Step size commensurate with the drive period; transient from :func:`settling_time`."""
        period = 2 * math.pi / drive_omega
        if transient_periods is None:
            transient_periods = math.ceil(settling_time(params, settle_tol) / period)
        total = int(math.ceil(transient_periods)) + demod_periods
        return cls(dt=period / steps_per_period, t_end=total * period,
                   transient_periods=transient_periods, demod_periods=demod_periods)

    def steps_per_period(self, drive_omega: float) -> Optional[int]:
        ratio = 2 * math.pi / drive_omega / self.dt
        n = round(ratio)
        return n if n > 0 and abs(ratio - n) <= 1e-9 * ratio else None


def _state_matrix(pair: CoupledPair):
    if pair.pump_clamped:
        a = np.array([[0.0, 1.0], [-pair.omega_d_sq, -pair.gamma_d]])
        return a, np.array([0.0, 1.0]), np.array([1.0, 0.0])
    a = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [-pair.omega_d_sq, -pair.gamma_d, pair.kappa_d, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [pair.kappa_p, 0.0, -pair.omega_p_sq, -pair.gamma_p],
    ])
    return a, np.array([0.0, 1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0, 0.0])


def settling_time(params: Params, tol: float = 1e-10) -> float:
    """Time for drive-excited transients (from rest) to fall by ``tol`` in the driven coordinate.

    Each eigenmode of the homogeneous system is weighted by its residue
    (how strongly the drive excites it times how visible it is in the driven
    coordinate); modes with negligible residue, such as an uncoupled pump,
    are ignored.
    """
    a, b, c = _state_matrix(coupled_equations(params))
    lam, vec = np.linalg.eig(a)
    residue = np.abs((c @ vec) * np.linalg.solve(vec, b))
    scale = residue.max()
    t = 0.0
    for lam_i, r in zip(lam, residue):
        if r <= 1e-9 * scale:
            continue
        rate = -lam_i.real
        if rate <= 0:
            raise IntegrationConfigError(
                "system has an undamped mode excited by the drive; "
                "give transient_periods explicitly"
            )
        t = max(t, math.log(r / (tol * scale)) / rate)
    return t


def heuristic_transient_periods(params: Params, drive_omega: float) -> float:
    """Blind default: max(20 / slowest positive damping, 50 periods), in periods."""
    pair = coupled_equations(params)
    rates = [g for g in (pair.gamma_d, pair.gamma_p) if g > 0]
    period = 2 * math.pi / drive_omega
    if not rates:
        return 50.0
    return max(20.0 / min(rates) / period, 50.0)


@numba.njit(cache=True)
def _rk4(coef, cos_tab, half_steps, dt, n_steps, y0, record_start):
    wd2, wp2, gd, gp, kd, kp, acc = coef[0], coef[1], coef[2], coef[3], coef[4], coef[5], coef[6]
    x1, v1, x2, v2 = y0[0], y0[1], y0[2], y0[3]
    n_rec = n_steps + 1 - record_start
    out = np.empty((n_rec, 4))
    if record_start == 0:
        out[0, 0] = x1
        out[0, 1] = v1
        out[0, 2] = x2
        out[0, 3] = v2
    h2 = 0.5 * dt
    h6 = dt / 6.0
    for n in range(n_steps):
        j = (2 * n) % half_steps
        f0 = acc * cos_tab[j]
        fh = acc * cos_tab[(j + 1) % half_steps]
        f1 = acc * cos_tab[(j + 2) % half_steps]

        a1 = v1
        b1 = f0 - gd * v1 - wd2 * x1 + kd * x2
        c1 = v2
        d1 = -gp * v2 - wp2 * x2 + kp * x1

        X1 = x1 + h2 * a1
        V1 = v1 + h2 * b1
        X2 = x2 + h2 * c1
        V2 = v2 + h2 * d1
        a2 = V1
        b2 = fh - gd * V1 - wd2 * X1 + kd * X2
        c2 = V2
        d2 = -gp * V2 - wp2 * X2 + kp * X1

        X1 = x1 + h2 * a2
        V1 = v1 + h2 * b2
        X2 = x2 + h2 * c2
        V2 = v2 + h2 * d2
        a3 = V1
        b3 = fh - gd * V1 - wd2 * X1 + kd * X2
        c3 = V2
        d3 = -gp * V2 - wp2 * X2 + kp * X1

        X1 = x1 + dt * a3
        V1 = v1 + dt * b3
        X2 = x2 + dt * c3
        V2 = v2 + dt * d3
        a4 = V1
        b4 = f1 - gd * V1 - wd2 * X1 + kd * X2
        c4 = V2
        d4 = -gp * V2 - wp2 * X2 + kp * X1

        x1 += h6 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        v1 += h6 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        x2 += h6 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        v2 += h6 * (d1 + 2.0 * d2 + 2.0 * d3 + d4)

        if not math.isfinite(x1 + v1 + x2 + v2):
            return out, n + 1
        k = n + 1 - record_start
        if k >= 0:
            out[k, 0] = x1
            out[k, 1] = v1
            out[k, 2] = x2
            out[k, 3] = v2
    return out, -1


def integrate(params: Params, drive_omega: float, cfg: IntegrationConfig,
              initial: Optional[OscState] = None, record_from: float = 0.0) -> Trajectory:
    """Classic fourth-order Runge-Kutta from ``initial`` (default: rest) to ``cfg.t_end``.

    Every step from ``record_from`` onwards is kept.  States use the
    picture's own indices; internally the driven coordinate is always first.
    """
    if not drive_omega > 0:
        raise IntegrationConfigError("drive_omega must be > 0")
    pair = coupled_equations(params)
    fastest = max(math.sqrt(pair.omega_d_sq),
                  0.0 if pair.pump_clamped else math.sqrt(pair.omega_p_sq), drive_omega)
    if cfg.dt * fastest >= RESOLUTION_LIMIT:
        raise IntegrationConfigError(
            f"dt * max(w, w_s) = {cfg.dt * fastest:.3g} >= {RESOLUTION_LIMIT}: step too coarse"
        )
    initial = initial or OscState()
    n_steps = int(round((cfg.t_end - initial.t) / cfg.dt))
    if n_steps < 1:
        raise IntegrationConfigError("t_end must lie at least one step after the initial time")
    idx = (record_from - initial.t) / cfg.dt
    nearest = round(idx)
    idx = nearest if abs(idx - nearest) < 1e-6 else math.ceil(idx)
    record_start = min(max(int(idx), 0), n_steps)

    electrical = isinstance(params, CircuitParams)
    if electrical:
        y0 = np.array([initial.x2, initial.v2, initial.x1, initial.v1])
    else:
        y0 = np.array([initial.x1, initial.v1, initial.x2, initial.v2])

    if pair.pump_clamped:
        if y0[2] != 0 or y0[3] != 0:
            raise IntegrationConfigError("pump is clamped; its initial state must be zero")
        coef = np.array([pair.omega_d_sq, 0.0, pair.gamma_d, 0.0, 0.0, 0.0, pair.drive])
    else:
        coef = np.array([pair.omega_d_sq, pair.omega_p_sq, pair.gamma_d, pair.gamma_p,
                         pair.kappa_d, pair.kappa_p, pair.drive])

    # half-step drive samples; periodic table when dt divides the period
    spp = cfg.steps_per_period(drive_omega)
    if spp is not None and initial.t == 0.0:
        half = 2 * spp
        cos_tab = np.cos(np.pi * np.arange(half) / spp + pair.phase)
    else:
        half = 2 * n_steps + 2
        t_half = initial.t + 0.5 * cfg.dt * np.arange(half)
        cos_tab = np.cos(drive_omega * t_half + pair.phase)

    out, failed = _rk4(coef, cos_tab, half, cfg.dt, n_steps, y0, record_start)
    if failed >= 0:
        raise DivergenceError(
            f"integration produced a non-finite state at t={initial.t + failed * cfg.dt!r}",
            t=initial.t + failed * cfg.dt,
        )
    t = initial.t + cfg.dt * np.arange(record_start, n_steps + 1)
    d, dv, p, pv = out.T
    if electrical:
        return Trajectory(t, p.copy(), pv.copy(), d.copy(), dv.copy(), "electrical",
                          drive_omega, cfg.dt)
    return Trajectory(t, d.copy(), dv.copy(), p.copy(), pv.copy(), "mechanical",
                      drive_omega, cfg.dt)


@dataclass(frozen=True)
class ComplexResponse:
    omega_s: float
    value: complex
    residual: float = 0.0


def demodulate(t: np.ndarray, x: np.ndarray, drive_omega: float) -> ComplexResponse:
    """Project ``x`` on cos/sin over the samples given (assumed to span whole periods).

    Returns ``N`` with ``x(t) ~ Re(N exp(-i w t))``; the endpoint is dropped so
    equally spaced samples over whole periods integrate trig terms exactly.
    """
    tt, xx = t[:-1], x[:-1]
    c = np.cos(drive_omega * tt)
    s = np.sin(drive_omega * tt)
    re = 2.0 * np.mean(xx * c)
    im = 2.0 * np.mean(xx * s)
    fit = re * c + im * s
    amp = math.hypot(re, im)
    rms = math.sqrt(np.mean((xx - fit) ** 2))
    residual = rms / amp if amp > 0 else (0.0 if rms == 0 else math.inf)
    return ComplexResponse(drive_omega, complex(re, im), residual)


def steady_state_amplitude(traj: Trajectory, drive_omega: float, cfg: IntegrationConfig,
                           residual_limit: float = RESIDUAL_LIMIT) -> ComplexResponse:
    """Complex amplitude of the driven coordinate over the last ``demod_periods`` periods."""
    period = 2 * math.pi / drive_omega
    needed = (cfg.transient_periods + cfg.demod_periods) * period
    t_last = float(traj.t[-1])
    if t_last < needed * (1 - 1e-12):
        raise WindowTooShortError(
            f"trajectory ends at t={t_last!r}, needs {needed!r} "
            f"({cfg.transient_periods} transient + {cfg.demod_periods} demodulation periods)"
        )
    spp = cfg.steps_per_period(drive_omega)
    if spp is None:
        raise WindowTooShortError("dt must divide the drive period for exact demodulation")
    n = spp * cfg.demod_periods + 1
    if len(traj) < n:
        raise WindowTooShortError(
            f"only {len(traj)} samples recorded, demodulation needs {n}"
        )
    res = demodulate(traj.t[-n:], traj.driven[-n:], drive_omega)
    if res.residual > residual_limit:
        raise NotSteadyError(
            f"demodulation residual {res.residual:.3g} exceeds {residual_limit}: "
            f"trajectory has not settled"
        )
    return res


def demodulated_response(params: Params, omegas, steps_per_period: int = 1024,
                         demod_periods: int = 10, settle_tol: float = 1e-10) -> np.ndarray:
    """Oracle amplitude at each drive frequency, integrating from rest."""
    out = np.empty(len(omegas), dtype=complex)
    for i, w in enumerate(omegas):
        cfg = IntegrationConfig.for_drive(params, float(w), steps_per_period,
                                          demod_periods, settle_tol=settle_tol)
        n_keep = steps_per_period * demod_periods
        traj = integrate(params, float(w), cfg, record_from=cfg.t_end - n_keep * cfg.dt)
        out[i] = steady_state_amplitude(traj, float(w), cfg).value
    return out


def energy(params: Params, state: OscState) -> float:
    """Stored energy (kinetic + potential, or magnetic + electric)."""
    if isinstance(params, MechanicalParams):
        p = params
        return 0.5 * (p.m1 * state.v1**2 + p.m2 * state.v2**2 + p.k1 * state.x1**2
                      + p.k2 * state.x2**2 + p.K * (state.x1 - state.x2) ** 2)
    c = params
    return 0.5 * (c.L1 * state.v1**2 + c.L2 * state.v2**2 + state.x1**2 / c.C1
                  + state.x2**2 / c.C2 + (state.x1 - state.x2) ** 2 / c.C)
