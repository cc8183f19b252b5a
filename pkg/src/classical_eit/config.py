"""Line-oriented ``key = value`` configuration files and the built-in presets.

Grammar: UTF-8, one ``key = value`` per line, ``#`` starts a comment, blank
lines ignored, keys case sensitive, numbers in decimal or scientific
notation.  ``grid = start:stop:points`` gives angular frequencies.

Mechanical keys: picture, m1, m2, k1, k2, K, gamma1, gamma2, F, grid,
and optionally phi_s, pump (free|clamped), name.
Electrical keys: picture, R1, R2, L1, L2, C1, C2, C, As, switch (open|closed),
grid, and optionally phi_s, name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Dict, Union

from .errors import ConfigSyntaxError, ParameterDomainError, UnknownKeyError
from .model import CircuitParams, MechanicalParams
from .spectrum import FrequencyGrid

_NUMBER = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$|^[+-]?inf$")
_KEY = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

MECH_REQUIRED = ("picture", "m1", "m2", "k1", "k2", "K", "gamma1", "gamma2", "F", "grid")
MECH_OPTIONAL = ("phi_s", "pump", "name")
ELEC_REQUIRED = ("picture", "R1", "R2", "L1", "L2", "C1", "C2", "C", "As", "switch", "grid")
ELEC_OPTIONAL = ("phi_s", "name")


@dataclass(frozen=True)
class Preset:
    name: str
    picture: str
    params: Union[MechanicalParams, CircuitParams]
    grid: FrequencyGrid
    notes: str = ""


def _number(key, text, line):
    if not _NUMBER.match(text):
        raise ConfigSyntaxError(f"{key}: expected a number, got {text!r}", line)
    return float(text)


def _tokenize(text):
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigSyntaxError(f"expected 'key = value', got {body!r}", lineno)
        key, value = (part.strip() for part in body.split("=", 1))
        if not _KEY.match(key):
            raise ConfigSyntaxError(f"invalid key {key!r}", lineno)
        if not value:
            raise ConfigSyntaxError(f"{key}: missing value", lineno)
        if key in entries:
            raise ConfigSyntaxError(f"duplicate key {key!r}", lineno)
        entries[key] = (value, lineno)
    return entries


def parse_config(text: str, name: str = "config") -> Preset:
    """Parse and fully validate a configuration document."""
    entries = _tokenize(text)
    if "picture" not in entries:
        raise ConfigSyntaxError("missing required key: picture")
    picture, pline = entries["picture"]
    if picture == "mechanical":
        required, optional = MECH_REQUIRED, MECH_OPTIONAL
    elif picture == "electrical":
        required, optional = ELEC_REQUIRED, ELEC_OPTIONAL
    else:
        raise ConfigSyntaxError(
            f"picture must be 'mechanical' or 'electrical', got {picture!r}", pline
        )
    for key, (_, lineno) in entries.items():
        if key not in required and key not in optional:
            raise UnknownKeyError(f"unknown key {key!r} for {picture} picture", lineno)
    for key in required:
        if key not in entries:
            raise ConfigSyntaxError(f"missing required key: {key}")

    def num(key, default=None):
        if key not in entries:
            return default
        value, lineno = entries[key]
        return _number(key, value, lineno)

    def choice(key, options, default):
        if key not in entries:
            return default
        value, lineno = entries[key]
        if value not in options:
            raise ConfigSyntaxError(f"{key} must be one of {sorted(options)}, got {value!r}", lineno)
        return value

    gvalue, gline = entries["grid"]
    try:
        grid = FrequencyGrid.parse(gvalue)
    except ParameterDomainError as exc:
        raise ParameterDomainError(f"grid (line {gline}): {exc}") from None

    if picture == "mechanical":
        params = MechanicalParams(
            m1=num("m1"), m2=num("m2"), k1=num("k1"), k2=num("k2"), K=num("K"),
            gamma1=num("gamma1"), gamma2=num("gamma2"), F=num("F"),
            phi_s=num("phi_s", 0.0),
            pump_clamped=choice("pump", {"free", "clamped"}, "free") == "clamped",
        )
    else:
        params = CircuitParams(
            R1=num("R1"), R2=num("R2"), L1=num("L1"), L2=num("L2"),
            C1=num("C1"), C2=num("C2"), C=num("C"), A_s=num("As"),
            switch_closed=choice("switch", {"open", "closed"}, None) == "closed",
            phi_s=num("phi_s", 0.0),
        )
    if "name" in entries:
        name = entries["name"][0]
    return Preset(name=name, picture=picture, params=params, grid=grid)


def dump_config(preset: Preset) -> str:
    """Serialise a preset so that ``parse_config(dump_config(p))`` reproduces it."""
    lines = [f"# {line}" if line else "#" for line in preset.notes.splitlines()]
    p = preset.params
    lines += [f"name = {preset.name}", f"picture = {preset.picture}"]
    if isinstance(p, MechanicalParams):
        for key in ("m1", "m2", "k1", "k2", "K", "gamma1", "gamma2", "F", "phi_s"):
            lines.append(f"{key} = {getattr(p, key)!r}")
        lines.append(f"pump = {'clamped' if p.pump_clamped else 'free'}")
    else:
        for key, attr in (("R1", "R1"), ("R2", "R2"), ("L1", "L1"), ("L2", "L2"),
                          ("C1", "C1"), ("C2", "C2"), ("C", "C"), ("As", "A_s"),
                          ("phi_s", "phi_s")):
            lines.append(f"{key} = {getattr(p, attr)!r}")
        lines.append(f"switch = {'closed' if p.switch_closed else 'open'}")
    lines.append(f"grid = {preset.grid}")
    return "\n".join(lines) + "\n"


# -- built-in presets --------------------------------------------------------

FIG3_COUPLINGS = {"a": 0.0, "b": 0.1, "c": 0.2, "d": 0.3, "e": 0.4, "f": 0.5}
FIG3_GRID = FrequencyGrid(1.5, 2.5, 2001)
FIG3_OMEGA = 2.0
FIG3_DRIVEN_DAMPING = 0.4e-1
FIG3_PUMP_DAMPING = 0.1e-6
FIG3_DRIVE = 0.1

TABLE2 = dict(R1=0.0, R2=51.7, L1=1000e-6, L2=1000e-6, C1=0.1e-6, C2=0.1e-6)
FIG6_COUPLING = {"a": 0.196e-6, "b": 0.150e-6, "c": 0.096e-6, "d": 0.050e-6}
FIG6_NOMINAL_KHZ = {"a": 20.0, "b": 19.5, "c": 21.5, "d": 26.5}
FIG6_GRID = FrequencyGrid(6.0e4, 2.8e5, 2001)


def fig3_params(omega_r: float, literal: bool = False) -> MechanicalParams:
    """Unit masses, F/m = 0.1, natural frequency fixed at 2.0 whatever the coupling."""
    g_driven, g_pump = FIG3_DRIVEN_DAMPING, FIG3_PUMP_DAMPING
    if literal:
        g_driven, g_pump = g_pump, g_driven
    k = FIG3_OMEGA**2 - omega_r**2
    return MechanicalParams(m1=1.0, m2=1.0, k1=k, k2=k, K=omega_r**2,
                            gamma1=g_driven, gamma2=g_pump, F=FIG3_DRIVE)


def fig6_params(C: float, switch_closed: bool = True, A_s: float = 1.0) -> CircuitParams:
    return CircuitParams(C=C, A_s=A_s, switch_closed=switch_closed, **TABLE2)


def _build_presets() -> Dict[str, Preset]:
    out = {}
    for tag, omega_r in FIG3_COUPLINGS.items():
        out[f"fig3{tag}"] = Preset(
            f"fig3{tag}", "mechanical", fig3_params(omega_r), FIG3_GRID,
            notes=(f"Coupling Omega_r = {omega_r}, w = 2.0, F/m = 0.1.\n"
                   "Damping: 0.4e-1 on the driven particle, 0.1e-6 on the pump "
                   "(exchanged in fig3*-literal)."),
        )
        out[f"fig3{tag}-literal"] = Preset(
            f"fig3{tag}-literal", "mechanical", fig3_params(omega_r, literal=True), FIG3_GRID,
            notes=(f"Coupling Omega_r = {omega_r}, w = 2.0, F/m = 0.1.\n"
                   "Damping exchanged: gamma1 = 0.1e-6, gamma2 = 0.4e-1."),
        )
    for tag, C in FIG6_COUPLING.items():
        for closed, suffix in ((True, ""), (False, "-open")):
            out[f"fig6{tag}{suffix}"] = Preset(
                f"fig6{tag}{suffix}", "electrical", fig6_params(C, closed), FIG6_GRID,
                notes=(f"RLC pair, C = {C * 1e6:.3f} uF, "
                       f"switch {'closed' if closed else 'open'}, A_s = 1 V.\n"
                       f"Nominal resonance {FIG6_NOMINAL_KHZ[tag]} kHz."),
            )
    return out


PRESETS = _build_presets()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigSyntaxError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None


def with_switch(preset: Preset, closed: bool) -> Preset:
    """Same preset with the pump connected (closed) or disconnected (open)."""
    p = preset.params
    if isinstance(p, CircuitParams):
        return replace(preset, params=replace(p, switch_closed=closed))
    return replace(preset, params=replace(p, pump_clamped=not closed))
