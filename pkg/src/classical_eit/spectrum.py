"""Frequency sweeps and extraction of transparency / doublet features."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ContractError, ParameterDomainError, SingularityError, WrappedPhaseError
from .model import CircuitParams, Params, coupled_equations
from .response import (
    DENOMINATOR_FLOOR,
    amplitude_terms,
    circuit_complex_power,
    probe_amplitude,
    pump_resonance_mask,
)

PHASE_JUMP_FACTOR = 5.0


class Observable(str, enum.Enum):
    ABSORPTION = "absorption"
    DISPERSION = "dispersion"
    PHASE = "phase"
    CIRCUIT_POWER_OPEN = "circuit_power_open"
    CIRCUIT_POWER_CLOSED = "circuit_power_closed"

    @classmethod
    def parse(cls, text: str) -> "Observable":
        aliases = {"power-open": cls.CIRCUIT_POWER_OPEN, "power-closed": cls.CIRCUIT_POWER_CLOSED}
        if text in aliases:
            return aliases[text]
        try:
            return cls(text.replace("-", "_"))
        except ValueError:
            raise ContractError(f"unknown observable {text!r}") from None


@dataclass(frozen=True)
class FrequencyGrid:
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ParameterDomainError("grid bounds must be finite")
        if not 0 < self.start < self.stop:
            raise ParameterDomainError(
                f"grid needs 0 < start < stop, got {self.start!r}:{self.stop!r}"
            )
        if int(self.points) != self.points or self.points < 2:
            raise ParameterDomainError(f"grid points must be an integer >= 2, got {self.points!r}")

    @classmethod
    def parse(cls, text: str) -> "FrequencyGrid":
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterDomainError(f"grid must be start:stop:points, got {text!r}")
        try:
            start, stop = float(parts[0]), float(parts[1])
            points = int(parts[2])
        except ValueError:
            raise ParameterDomainError(f"grid must be start:stop:points, got {text!r}") from None
        return cls(start, stop, points)

    def __str__(self):
        return f"{self.start!r}:{self.stop!r}:{self.points}"

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.points - 1)

    def omegas(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sampled observable.  Singular points are NaN in ``values`` and listed in ``holes``."""

    grid: FrequencyGrid
    observable: Observable
    values: np.ndarray
    complex_values: Optional[np.ndarray] = None
    holes: tuple = ()
    advisories: tuple = ()
    picture: str = "mechanical"

    @property
    def omegas(self) -> np.ndarray:
        return self.grid.omegas()


@dataclass(frozen=True)
class Dip:
    omega: float
    value: float
    depth_ratio: float
    fwhm: Optional[float]


@dataclass(frozen=True)
class PhaseJumps:
    count: int
    omegas: tuple
    signs: tuple


@dataclass(frozen=True)
class SpectralFeatures:
    maxima: list = field(default_factory=list)
    minima: list = field(default_factory=list)
    dip: Optional[Dip] = None
    splitting: Optional[float] = None
    dispersion_slope_center: Optional[float] = None
    phase_jump_count: Optional[int] = None
    phase_jumps: Optional[PhaseJumps] = None


# -- sweeping --------------------------------------------------------------


def sweep(params: Params, grid: FrequencyGrid, observable=Observable.ABSORPTION) -> Spectrum:
    """Evaluate one observable on every grid point (vectorised, order independent)."""
    observable = Observable(observable)
    w = grid.omegas()
    advisories = []
    holes = np.zeros(w.shape, dtype=bool)

    if observable in (Observable.CIRCUIT_POWER_OPEN, Observable.CIRCUIT_POWER_CLOSED):
        if not isinstance(params, CircuitParams):
            raise ContractError(f"observable {observable.value} needs electrical parameters")
        closed = observable is Observable.CIRCUIT_POWER_CLOSED
        cvals = _pointwise_circuit(params, w, closed, holes)
        values = cvals.real.copy()
        if closed:
            limit = np.asarray(pump_resonance_mask(params, w))
            for i in np.flatnonzero(limit):
                advisories.append(
                    f"pump-mesh resonance at index {i} (omega_s={w[i]!r}): returned limit 0"
                )
    else:
        pair = coupled_equations(params)
        num, den = amplitude_terms(pair, w)
        holes |= np.abs(den) < DENOMINATOR_FLOOR
        with np.errstate(divide="ignore", invalid="ignore"):
            n = np.where(holes, np.nan, num / np.where(holes, 1.0, den))
        if observable is Observable.ABSORPTION:
            cvals = -2j * np.pi * w * pair.force * n * np.exp(1j * pair.phase)
            values = cvals.real.copy()
        elif observable is Observable.DISPERSION:
            cvals = n
            values = n.real.copy()
        else:
            cvals = n
            values = np.full(w.shape, np.nan)
            ok = ~holes
            values[ok] = np.unwrap(np.angle(n[ok]))

    for i in np.flatnonzero(holes):
        advisories.append(f"singular point at index {i} (omega_s={w[i]!r}): hole")
    values[holes] = np.nan
    return Spectrum(
        grid=grid,
        observable=observable,
        values=values,
        complex_values=cvals,
        holes=tuple(int(i) for i in np.flatnonzero(holes)),
        advisories=tuple(advisories),
        picture=params.picture,
    )


def _pointwise_circuit(c, w, closed, holes):
    try:
        return np.asarray(circuit_complex_power(c, w, closed=closed))
    except SingularityError:
        out = np.empty(w.shape, dtype=complex)
        for i, wi in enumerate(w):
            try:
                out[i] = circuit_complex_power(c, np.array([wi]), closed=closed)[0]
            except SingularityError:
                out[i] = np.nan
                holes[i] = True
        return out


# -- extrema ---------------------------------------------------------------


def _vertex(w, v, i):
    """Quadratic interpolation through samples i-1, i, i+1 (uniform spacing)."""
    y0, y1, y2 = v[i - 1], v[i], v[i + 1]
    h = w[i + 1] - w[i]
    curv = y0 - 2 * y1 + y2
    if curv == 0:
        return float(w[i]), float(y1)
    p = 0.5 * (y0 - y2) / curv
    return float(w[i] + p * h), float(y1 - 0.25 * (y0 - y2) * p)


def find_extrema(s: Spectrum) -> SpectralFeatures:
    """Interior local maxima / minima, the deepest bracketed dip, and the splitting.

    Extrema come from a 3-point comparison refined by a parabola through the
    bracketing samples.  A dip is a minimum with a maximum on each side; its
    depth is relative to the tallest maximum and its FWHM is taken at half
    depth below the straight line joining the two neighbouring maxima.
    """
    if s.holes:
        raise ContractError(f"spectrum has holes at indices {list(s.holes)}")
    v = np.asarray(s.values, dtype=float)
    if v.size < 5:
        raise ContractError("find_extrema needs at least 5 points")
    w = s.omegas

    left, mid, right = v[:-2], v[1:-1], v[2:]
    max_idx = np.flatnonzero((mid > left) & (mid >= right)) + 1
    min_idx = np.flatnonzero((mid < left) & (mid <= right)) + 1
    maxima = [_vertex(w, v, i) for i in max_idx]
    minima = [_vertex(w, v, i) for i in min_idx]

    dip = None
    if len(maxima) >= 2:
        top = max(val for _, val in maxima)
        candidates = [
            (k, i) for k, i in enumerate(min_idx) if max_idx[0] < i < max_idx[-1]
        ]
        if candidates:
            k, i = min(candidates, key=lambda ki: minima[ki[0]][1])
            w_min, v_min = minima[k]
            depth = 1.0 - v_min / top if top != 0 else 0.0
            j_left = max_idx[max_idx < i][-1]
            j_right = max_idx[max_idx > i][0]
            fwhm = _dip_width(w, v, i, j_left, j_right, maxima, max_idx, w_min, v_min)
            dip = Dip(w_min, v_min, float(min(max(depth, 0.0), 1.0)), fwhm)

    splitting = None
    if len(maxima) >= 2:
        a, b = sorted(maxima, key=lambda m: m[1], reverse=True)[:2]
        splitting = abs(a[0] - b[0])
    return SpectralFeatures(maxima=maxima, minima=minima, dip=dip, splitting=splitting)


def _dip_width(w, v, i, j_left, j_right, maxima, max_idx, w_min, v_min):
    wl, vl = maxima[list(max_idx).index(j_left)]
    wr, vr = maxima[list(max_idx).index(j_right)]
    envelope = vl + (vr - vl) * (w_min - wl) / (wr - wl)
    level = v_min + 0.5 * (envelope - v_min)

    def crossing(indices):
        prev = i
        for j in indices:
            if v[j] >= level:
                frac = (level - v[prev]) / (v[j] - v[prev])
                return w[prev] + frac * (w[j] - w[prev])
            prev = j
        return w[indices[-1]]

    lo = crossing(range(i - 1, j_left - 1, -1))
    hi = crossing(range(i + 1, j_right + 1))
    return float(hi - lo)


# -- dispersion and phase ----------------------------------------------------


def dispersion_slope(params: Params, omega_center: float, h: Optional[float] = None,
                     features: Optional[SpectralFeatures] = None) -> float:
    """Central difference of Re(N) at ``omega_center``; positive means normal dispersion.

    Default step: a tenth of the dip FWHM if ``features`` has one, else
    ``1e-6 * omega_center``.
    """
    if h is None:
        if features is not None and features.dip is not None and features.dip.fwhm:
            h = features.dip.fwhm / 10
        else:
            h = 1e-6 * omega_center
    if not h > 0 or not math.isfinite(h):
        raise ParameterDomainError(f"finite-difference step must be > 0, got {h!r}")
    if omega_center - h <= 0:
        raise ParameterDomainError("omega_center - h must stay positive")
    try:
        lo, hi = probe_amplitude(params, np.array([omega_center - h, omega_center + h]))
    except SingularityError as exc:
        raise ParameterDomainError(f"finite-difference stencil hits a singular point: {exc}") from exc
    return float((hi.real - lo.real) / (2 * h))


def phase_features(s: Spectrum, factor: float = PHASE_JUMP_FACTOR) -> PhaseJumps:
    """Count abrupt phase variations in an unwrapped phase spectrum.

    A jump is a run of grid points where ``|dphi/dw|`` exceeds ``factor``
    times its median, split wherever the derivative changes sign.  Each jump
    is located at its steepest point.
    """
    if s.observable is not Observable.PHASE:
        raise ContractError(f"phase_features needs a phase spectrum, got {s.observable.value}")
    if s.holes:
        raise ContractError(f"spectrum has holes at indices {list(s.holes)}")
    phi = np.asarray(s.values, dtype=float)
    if np.any(np.abs(np.diff(phi)) > np.pi):
        raise WrappedPhaseError("phase has 2*pi discontinuities; unwrap it first")
    w = s.omegas
    d = np.gradient(phi, w)
    mag = np.abs(d)
    threshold = factor * np.median(mag)
    above = mag > threshold
    sign = np.sign(d)

    jumps = []
    start = None
    for i in range(len(d) + 1):
        boundary = (
            i == len(d)
            or not above[i]
            or (start is not None and sign[i] != sign[start])
        )
        if start is not None and boundary:
            seg = np.arange(start, i)
            k = seg[np.argmax(mag[seg])]
            jumps.append((float(w[k]), int(sign[k])))
            start = None
        if i < len(d) and above[i] and start is None:
            start = i
    return PhaseJumps(
        count=len(jumps),
        omegas=tuple(j[0] for j in jumps),
        signs=tuple(j[1] for j in jumps),
    )


def analyze(params: Params, grid: FrequencyGrid) -> SpectralFeatures:
    """Absorption (or source power) features plus dispersion slope and phase jumps."""
    if isinstance(params, CircuitParams):
        obs = (Observable.CIRCUIT_POWER_CLOSED if params.switch_closed
               else Observable.CIRCUIT_POWER_OPEN)
    else:
        obs = Observable.ABSORPTION
    feats = find_extrema(sweep(params, grid, obs))

    if feats.dip is not None:
        center = feats.dip.omega
    else:
        center = math.sqrt(coupled_equations(params).omega_d_sq)
    slope = None
    if grid.start < center < grid.stop:
        slope = dispersion_slope(params, center, features=feats)
    jumps = phase_features(sweep(params, grid, Observable.PHASE))
    return SpectralFeatures(
        maxima=feats.maxima,
        minima=feats.minima,
        dip=feats.dip,
        splitting=feats.splitting,
        dispersion_slope_center=slope,
        phase_jump_count=jumps.count,
        phase_jumps=jumps,
    )
