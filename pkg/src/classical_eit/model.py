"""Parameters of the two coupled oscillators, in both physical pictures.

The mechanical picture has a driven particle (index 1) tied to a wall by
``k1`` and to a second, undriven "pump" particle (index 2) by the coupling
spring ``K``.  The electrical picture is two meshes sharing the coupling
capacitor ``C``; the source sits in mesh 2 and mesh 1 is the pump.  Because
the driven index differs between the pictures, everything that crosses
pictures is keyed by *role* (driven / pump), never by index.

Mapping (role based, ``s`` = henry per unit mass)::

    driven mass m1   <->  L2 / s        pump mass m2   <->  L1 / s
    k1               <->  1 / (s C2)    k2             <->  1 / (s C1)
    K                <->  1 / (s C)     phi_s          <->  phi_s
    gamma1           <->  R2 / L2       gamma2         <->  R1 / L1
    F                <->  A_s / s       pump_clamped   <->  not switch_closed

With this choice both pictures give numerically identical equations of
motion, so every angular frequency is preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    MappingDomainError,
    NonDegenerateError,
    OverdampedModeError,
    ParameterDomainError,
)

DEGENERACY_RTOL = 1e-9


def _finite(name, value):
    if not math.isfinite(value):
        raise ParameterDomainError(f"{name} must be finite, got {value!r}")


def _positive(name, value, allow_inf=False):
    if math.isnan(value) or (math.isinf(value) and not allow_inf):
        raise ParameterDomainError(f"{name} must be finite, got {value!r}")
    if not value > 0:
        raise ParameterDomainError(f"{name} must be > 0, got {value!r}")


def _non_negative(name, value):
    _finite(name, value)
    if value < 0:
        raise ParameterDomainError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class MechanicalParams:
    """Two masses on springs; particle 1 is driven by ``F cos(w t + phi_s)``.

    ``pump_clamped`` holds particle 2 fixed at equilibrium, which is the
    mechanical counterpart of the open switch.
    """

    m1: float
    m2: float
    k1: float
    k2: float
    K: float
    gamma1: float
    gamma2: float
    F: float
    phi_s: float = 0.0
    pump_clamped: bool = False

    picture = "mechanical"

    def __post_init__(self):
        _positive("m1", self.m1)
        _positive("m2", self.m2)
        for name in ("k1", "k2", "K", "gamma1", "gamma2", "F"):
            _non_negative(name, getattr(self, name))
        _finite("phi_s", self.phi_s)
        if not self.k1 + self.K > 0:
            raise ParameterDomainError(
                "k1 + K must be > 0 (driven oscillator needs a restoring force)"
            )


@dataclass(frozen=True)
class CircuitParams:
    """Two RLC meshes sharing the coupling capacitor ``C``.

    Mesh 2 holds the source ``A_s cos(w t + phi_s)``; mesh 1 is the pump and
    is only connected while ``switch_closed``.  ``C = inf`` is accepted and
    means the coupling capacitor is a short (no coupling).
    """

    R1: float
    R2: float
    L1: float
    L2: float
    C1: float
    C2: float
    C: float
    A_s: float
    switch_closed: bool = True
    phi_s: float = 0.0

    picture = "electrical"

    def __post_init__(self):
        _non_negative("R1", self.R1)
        _non_negative("R2", self.R2)
        _positive("L1", self.L1)
        _positive("L2", self.L2)
        _positive("C1", self.C1)
        _positive("C2", self.C2)
        _positive("C", self.C, allow_inf=True)
        _non_negative("A_s", self.A_s)
        _finite("phi_s", self.phi_s)

    @property
    def c_e1(self) -> float:
        return series_capacitance(self.C, self.C1)

    @property
    def c_e2(self) -> float:
        return series_capacitance(self.C, self.C2)


Params = Union[MechanicalParams, CircuitParams]


def series_capacitance(a: float, b: float) -> float:
    """Series combination ``a b / (a + b)``, written so ``a = inf`` gives ``b``."""
    return 1.0 / (1.0 / a + 1.0 / b)


@dataclass(frozen=True)
class DerivedFrequencies:
    omega_driven_sq: float
    omega_pump_sq: float
    omega_r_sq: float
    c_e1: Optional[float] = None
    c_e2: Optional[float] = None

    @property
    def omega_driven(self) -> float:
        return math.sqrt(self.omega_driven_sq)

    @property
    def omega_pump(self) -> float:
        return math.sqrt(self.omega_pump_sq)

    @property
    def omega_r(self) -> float:
        return math.sqrt(self.omega_r_sq)


@dataclass(frozen=True)
class NormalModes:
    omega_minus: float
    omega_plus: float

    @property
    def splitting(self) -> float:
        return self.omega_plus - self.omega_minus


@dataclass(frozen=True)
class CoupledPair:
    """Role-based coefficients of the equations of motion.

    driven:  x_d'' + gamma_d x_d' + w_d^2 x_d - kappa_d x_p = drive cos(w t + phase)
    pump:    x_p'' + gamma_p x_p' + w_p^2 x_p - kappa_p x_d = 0

    ``force`` is the drive amplitude in the picture's own units (F or A_s)
    and ``mass`` the driven inertia (m1 or L2); ``drive = force / mass``.
    """

    omega_d_sq: float
    omega_p_sq: float
    gamma_d: float
    gamma_p: float
    kappa_d: float
    kappa_p: float
    force: float
    mass: float
    phase: float
    pump_clamped: bool

    @property
    def drive(self) -> float:
        return self.force / self.mass

    @property
    def coupling_sq(self) -> float:
        """Omega_r^4, the product of the two cross-coupling coefficients."""
        return 0.0 if self.pump_clamped else self.kappa_d * self.kappa_p


def coupled_equations(params: Params) -> CoupledPair:
    if isinstance(params, MechanicalParams):
        p = params
        return CoupledPair(
            omega_d_sq=(p.k1 + p.K) / p.m1,
            omega_p_sq=(p.k2 + p.K) / p.m2,
            gamma_d=p.gamma1,
            gamma_p=p.gamma2,
            kappa_d=p.K / p.m1,
            kappa_p=p.K / p.m2,
            force=p.F,
            mass=p.m1,
            phase=p.phi_s,
            pump_clamped=p.pump_clamped,
        )
    if isinstance(params, CircuitParams):
        c = params
        return CoupledPair(
            omega_d_sq=1.0 / (c.L2 * c.c_e2),
            omega_p_sq=1.0 / (c.L1 * c.c_e1),
            gamma_d=c.R2 / c.L2,
            gamma_p=c.R1 / c.L1,
            kappa_d=1.0 / (c.L2 * c.C),
            kappa_p=1.0 / (c.L1 * c.C),
            force=c.A_s,
            mass=c.L2,
            phase=c.phi_s,
            pump_clamped=not c.switch_closed,
        )
    raise TypeError(f"expected MechanicalParams or CircuitParams, got {type(params)!r}")


def derive_frequencies(params: Params) -> DerivedFrequencies:
    """Squared natural and coupling frequencies, keyed by role.

    ``omega_r_sq`` is ``K / sqrt(m1 m2)`` (``1 / (C sqrt(L1 L2))``), which
    reduces to ``K/m`` and ``1/(L2 C)`` for equal masses / inductances.
    """
    pair = coupled_equations(params)
    kw = {}
    if isinstance(params, CircuitParams):
        kw = dict(c_e1=params.c_e1, c_e2=params.c_e2)
    return DerivedFrequencies(
        omega_driven_sq=pair.omega_d_sq,
        omega_pump_sq=pair.omega_p_sq,
        omega_r_sq=math.sqrt(pair.kappa_d * pair.kappa_p),
        **kw,
    )


def normal_modes(d: DerivedFrequencies) -> NormalModes:
    """Undamped normal modes, w_pm^2 = w^2 -/+ Omega_r^2 (equal-frequency case only)."""
    w2, wp2 = d.omega_driven_sq, d.omega_pump_sq
    if abs(w2 - wp2) > DEGENERACY_RTOL * max(w2, wp2):
        raise NonDegenerateError(
            f"normal_modes needs equal natural frequencies, got w_driven^2={w2!r}, "
            f"w_pump^2={wp2!r}"
        )
    if w2 <= d.omega_r_sq:
        raise OverdampedModeError(
            f"w^2={w2!r} <= Omega_r^2={d.omega_r_sq!r}: lower mode is not oscillatory"
        )
    return NormalModes(
        omega_minus=math.sqrt(w2 - d.omega_r_sq),
        omega_plus=math.sqrt(w2 + d.omega_r_sq),
    )


def mech_to_circuit(m: MechanicalParams, scale: float = 1.0) -> CircuitParams:
    """Translate by role; ``scale`` is inductance per unit mass."""
    _positive("scale", scale)
    for name in ("k1", "k2"):
        if getattr(m, name) == 0:
            raise MappingDomainError(
                f"{name} = 0 has no finite capacitance counterpart"
            )
    L2 = scale * m.m1
    L1 = scale * m.m2
    return CircuitParams(
        R1=m.gamma2 * L1,
        R2=m.gamma1 * L2,
        L1=L1,
        L2=L2,
        C1=1.0 / (scale * m.k2),
        C2=1.0 / (scale * m.k1),
        C=math.inf if m.K == 0 else 1.0 / (scale * m.K),
        A_s=scale * m.F,
        switch_closed=not m.pump_clamped,
        phi_s=m.phi_s,
    )


def circuit_to_mech(c: CircuitParams, scale: float = 1.0) -> MechanicalParams:
    """Inverse of :func:`mech_to_circuit` for the same ``scale``."""
    _positive("scale", scale)
    return MechanicalParams(
        m1=c.L2 / scale,
        m2=c.L1 / scale,
        k1=1.0 / (scale * c.C2),
        k2=1.0 / (scale * c.C1),
        K=1.0 / (scale * c.C),
        gamma1=c.R2 / c.L2,
        gamma2=c.R1 / c.L1,
        F=c.A_s / scale,
        phi_s=c.phi_s,
        pump_clamped=not c.switch_closed,
    )


def translate(params: Params, scale: float = 1.0) -> Params:
    if isinstance(params, MechanicalParams):
        return mech_to_circuit(params, scale)
    return circuit_to_mech(params, scale)
