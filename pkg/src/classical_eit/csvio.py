"""CSV output and gnuplot script emission.

Numbers are written with ``%.17g`` (locale independent, exact round trip);
singular grid points become empty fields.  Lines end in LF.
"""

from __future__ import annotations

import csv
import math
import os

import numpy as np

from .spectrum import Observable, Spectrum
from .timedomain import Trajectory

SPECTRUM_COLUMNS = ("omega_s", "re_value", "im_value")
ELECTRICAL_EXTRA = ("f_hz",)
TRAJECTORY_COLUMNS = ("t", "x1", "v1", "x2", "v2")


def _fmt(x) -> str:
    x = float(x)
    return "" if math.isnan(x) else "%.17g" % x


def write_spectrum_csv(s: Spectrum, path) -> int:
    """Columns ``omega_s,re_value,im_value`` (+ ``f_hz`` for circuits).

    ``re_value`` is the plotted observable (for ``phase``, the unwrapped
    phase in radians); ``im_value`` is the imaginary part of the underlying
    complex quantity.  Returns the number of hole rows written.
    """
    w = s.omegas
    cols = SPECTRUM_COLUMNS + (ELECTRICAL_EXTRA if s.picture == "electrical" else ())
    im = s.complex_values.imag if s.complex_values is not None else np.full(w.shape, np.nan)
    holes = set(s.holes)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(cols)
        for i, wi in enumerate(w):
            row = [_fmt(wi)]
            if i in holes:
                row += ["", ""]
            else:
                row += [_fmt(s.values[i]), _fmt(im[i])]
            if s.picture == "electrical":
                row.append(_fmt(wi / (2 * math.pi)))
            out.writerow(row)
    return len(holes)


def write_trajectory_csv(traj: Trajectory, path) -> int:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(TRAJECTORY_COLUMNS)
        for row in zip(traj.t, traj.x1, traj.v1, traj.x2, traj.v2):
            out.writerow([_fmt(v) for v in row])
    return 0


def write_csv(obj, path) -> int:
    if isinstance(obj, Spectrum):
        return write_spectrum_csv(obj, path)
    if isinstance(obj, Trajectory):
        return write_trajectory_csv(obj, path)
    raise TypeError(f"cannot write {type(obj).__name__} as CSV")


def read_csv(path) -> dict:
    """Read any file written here into ``{column: float array}``; empty fields are NaN."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    data = {name: np.empty(len(body)) for name in header}
    for r, row in enumerate(body):
        for name, field in zip(header, row):
            data[name][r] = float(field) if field else math.nan
    return data


_YLABEL = {
    Observable.ABSORPTION: "Re P_s (absorbed power)",
    Observable.DISPERSION: "Re N (dispersive amplitude)",
    Observable.PHASE: "arg N (rad, unwrapped)",
    Observable.CIRCUIT_POWER_OPEN: "P_2 [W], switch open",
    Observable.CIRCUIT_POWER_CLOSED: "P_2 [W], switch closed",
}


def emit_gnuplot(csv_path, script_path, observable=None, picture="mechanical", title="") -> None:
    """Write a gnuplot script that plots ``csv_path``."""
    csv_ref = os.path.relpath(csv_path, os.path.dirname(os.path.abspath(script_path)) or ".")
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title '{title}'" if title else "unset title",
    ]
    if observable is None:
        lines += [
            "set xlabel 't'",
            "set ylabel 'driven coordinate'",
            "col = " + ("4" if picture == "electrical" else "2"),
            f"plot '{csv_ref}' using 1:col with lines",
        ]
    else:
        observable = Observable(observable)
        if picture == "electrical":
            lines += ["set xlabel 'f [kHz]'", f"set ylabel '{_YLABEL[observable]}'",
                      f"plot '{csv_ref}' using ($4/1000):2 with lines title '{observable.value}'"]
        else:
            lines += ["set xlabel 'omega_s'", f"set ylabel '{_YLABEL[observable]}'",
                      f"plot '{csv_ref}' using 1:2 with lines title '{observable.value}'"]
    with open(script_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
