"""Closed-form steady-state response.

Complex amplitudes use the ``exp(-i w t)`` convention: a steady displacement
is ``Re(N exp(-i w t))``.  All functions accept a scalar or an array of drive
frequencies and return the same shape.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterDomainError, SingularityError
from .model import CircuitParams, CoupledPair, Params, coupled_equations

DENOMINATOR_FLOOR = 1e-300


def _check_omega(omega_s):
    w = np.asarray(omega_s, dtype=float)
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ParameterDomainError("drive frequency omega_s must be finite and > 0")
    return w


def _shape_like(omega_s, value):
    return value[()] if np.ndim(omega_s) == 0 else value


def amplitude_terms(pair: CoupledPair, w: np.ndarray):
    """Numerator and denominator of the driven-coordinate amplitude.

    N = numerator / denominator, with the drive phase folded into the
    numerator.  Exposed so sweeps can flag singular points instead of raising.
    """
    d_driven = pair.omega_d_sq - w * w - 1j * pair.gamma_d * w
    rot = np.exp(-1j * pair.phase)
    if pair.pump_clamped or pair.coupling_sq == 0:
        # pump factor cancels exactly; dividing it out keeps Im(N) accurate
        return np.full_like(d_driven, pair.drive * rot), d_driven
    d_pump = pair.omega_p_sq - w * w - 1j * pair.gamma_p * w
    return pair.drive * rot * d_pump, d_driven * d_pump - pair.coupling_sq


def _raise_if_singular(w, den, floor):
    bad = np.abs(den) < floor
    if np.any(bad):
        where = float(np.atleast_1d(w)[np.argmax(np.atleast_1d(bad))])
        raise SingularityError(
            f"response denominator vanishes at omega_s={where!r}: undamped system "
            f"driven exactly at a normal mode",
            omega=where,
        )


def probe_amplitude(params: Params, omega_s, floor: float = DENOMINATOR_FLOOR):
    """Complex steady-state amplitude of the driven coordinate.

    For equal masses this is
    ``(w^2 - ws^2 - i g2 ws) F / (m [(w^2 - ws^2 - i g1 ws)(w^2 - ws^2 - i g2 ws) - Omega_r^4])``.
    Its real part is the dispersive response.  In the electrical picture the
    driven coordinate is the mesh-2 charge.
    """
    w = _check_omega(omega_s)
    num, den = amplitude_terms(coupled_equations(params), w)
    _raise_if_singular(w, den, floor)
    return _shape_like(omega_s, num / den)


def probe_power(params: Params, omega_s, floor: float = DENOMINATOR_FLOOR):
    """Complex absorbed power per drive period, ``-2 pi i ws F N``.

    Uses the product of complex force and complex velocity (no conjugate), so
    only ``Re`` is the physical absorption shape.  The amplitude is taken
    relative to the drive phase, which makes the result independent of
    ``phi_s``.
    """
    w = _check_omega(omega_s)
    pair = coupled_equations(params)
    num, den = amplitude_terms(pair, w)
    _raise_if_singular(w, den, floor)
    n = num / den * np.exp(1j * pair.phase)
    return _shape_like(omega_s, -2j * np.pi * w * pair.force * n)


def lorentzian_power(params: Params, omega_s):
    """Uncoupled single-oscillator absorbed power, the Omega_r = 0 limit of probe_power."""
    w = _check_omega(omega_s)
    pair = coupled_equations(params)
    g = pair.gamma_d
    val = (
        2 * np.pi * pair.force**2 * g * w * w
        / (pair.mass * ((pair.omega_d_sq - w * w) ** 2 + (g * w) ** 2))
    )
    return _shape_like(omega_s, val)


# -- electrical picture ----------------------------------------------------


def _reactances(c: CircuitParams, w):
    x1 = w * c.L1 - 1.0 / (w * c.c_e1)
    x2 = w * c.L2 - 1.0 / (w * c.c_e2)
    return x1, x2


def pump_resonance_mask(c: CircuitParams, omega_s):
    """True where R1 = 0 and the pump-mesh reactance cancels to round-off.

    There the closed-switch formula is 0 / inf and the limit 0 is returned.
    """
    w = _check_omega(omega_s)
    if c.R1 != 0:
        return _shape_like(omega_s, np.zeros_like(w, dtype=bool))
    x1, _ = _reactances(c, w)
    tol = 8 * np.finfo(float).eps * (w * c.L1 + 1.0 / (w * c.c_e1))
    return _shape_like(omega_s, np.abs(x1) <= tol)


def closed_switch_terms(c: CircuitParams, omega_s):
    """Effective series resistance p1 and reactance p2 seen by the source.

    Returns ``(p1, p2, limit_mask)``; at ``limit_mask`` points p2 is infinite
    and is reported as ``inf``.
    """
    w = _check_omega(omega_s)
    x1, x2 = _reactances(c, w)
    limit = np.atleast_1d(pump_resonance_mask(c, w))
    coup = 1.0 / (w * c.C) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        z1sq = c.R1**2 + x1**2
        p1 = c.R2 + c.R1 * coup / z1sq
        p2 = x2 - coup * x1 / z1sq
    p1 = np.where(limit, c.R2, p1)
    p2 = np.where(limit, np.inf, p2)
    return p1, p2, limit


def circuit_power_closed(c: CircuitParams, omega_s):
    """Power delivered by the source with the pump mesh connected.

    ``P2 = p1 / (p1^2 + p2^2) |A_s|^2`` with ``P2 = Re(V I*)``.  Returns the
    limit 0 at the R1 = 0 pump resonance (see :func:`pump_resonance_mask`).
    """
    return _shape_like(omega_s, np.real(circuit_complex_power(c, omega_s, closed=True)))


def circuit_power_open(c: CircuitParams, omega_s):
    """Power into the lone R2 L2 C_e2 mesh: ``R2 |A_s|^2 / (R2^2 + X2^2)``."""
    return _shape_like(omega_s, np.real(circuit_complex_power(c, omega_s, closed=False)))


def circuit_power(c: CircuitParams, omega_s):
    """Closed or open formula according to ``c.switch_closed``."""
    if c.switch_closed:
        return circuit_power_closed(c, omega_s)
    return circuit_power_open(c, omega_s)


def circuit_complex_power(c: CircuitParams, omega_s, closed=None):
    """Complex power ``V I*``; real part is P2, imaginary part the reactive power."""
    if closed is None:
        closed = c.switch_closed
    w = np.atleast_1d(_check_omega(omega_s))
    a2 = c.A_s**2
    if closed:
        p1, p2, limit = closed_switch_terms(c, w)
        with np.errstate(invalid="ignore"):
            mag = p1 * p1 + p2 * p2
            s = a2 * (p1 + 1j * p2) / mag
        s = np.where(limit, 0j, s)
    else:
        _, x2 = _reactances(c, w)
        mag = c.R2**2 + x2 * x2
        resonant = np.abs(x2) <= 8 * np.finfo(float).eps * (w * c.L2 + 1.0 / (w * c.c_e2))
        if c.R2 == 0 and np.any(resonant):
            where = float(w[np.argmax(resonant)])
            raise SingularityError(
                f"R2 = 0 and the driven mesh is resonant at omega_s={where!r}",
                omega=where,
            )
        s = a2 * (c.R2 + 1j * x2) / mag
    if closed and np.any(~np.isfinite(s)):
        where = float(w[np.argmax(~np.isfinite(s))])
        raise SingularityError(
            f"closed-switch power is undefined at omega_s={where!r} "
            f"(lossless circuit driven at a normal mode)",
            omega=where,
        )
    return s[0] if np.ndim(omega_s) == 0 else s
