"""Acceptance criteria, one ``criterion`` marker per check.

A per-criterion PASS/FAIL line is printed in the terminal summary.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from classical_eit.cli import main
from classical_eit.config import FIG6_NOMINAL_KHZ, fig3_params, fig6_params, get_preset
from classical_eit.csvio import read_csv, write_csv
from classical_eit.model import (
    circuit_to_mech,
    derive_frequencies,
    mech_to_circuit,
    normal_modes,
)
from classical_eit.response import (
    circuit_power_closed,
    lorentzian_power,
    probe_amplitude,
    probe_power,
    pump_resonance_mask,
)
from classical_eit.spectrum import (
    FrequencyGrid,
    Observable,
    dispersion_slope,
    find_extrema,
    phase_features,
    sweep,
)
from classical_eit.timedomain import IntegrationConfig, demodulated_response, integrate

FIG3_GRID = FrequencyGrid(1.5, 2.5, 2001)
FIG6_CAPACITORS = {"a": 0.196e-6, "b": 0.150e-6, "c": 0.096e-6, "d": 0.050e-6}


# -- 1 -------------------------------------------------------------------------------

C1 = (1, "exact transparency")


@pytest.mark.criterion(*C1)
def test_mechanical_transparency_is_exact():
    t0 = time.perf_counter()
    p = replace(fig3_params(0.1), gamma2=0.0)
    resonant = fig3_params(0.0)
    n_ref = abs(probe_amplitude(resonant, 2.0))
    p_ref = probe_power(resonant, 2.0).real
    assert abs(probe_amplitude(p, 2.0)) <= 1e-12 * n_ref
    assert abs(probe_power(p, 2.0).real) <= 1e-12 * p_ref
    assert time.perf_counter() - t0 < 0.1


@pytest.mark.criterion(*C1)
@pytest.mark.parametrize("tag", sorted(FIG6_CAPACITORS))
def test_electrical_transparency_limit(tag):
    c = fig6_params(FIG6_CAPACITORS[tag])
    w_pump = derive_frequencies(c).omega_pump
    assert pump_resonance_mask(c, w_pump)
    assert circuit_power_closed(c, w_pump) == 0.0


# -- 2 -------------------------------------------------------------------------------

C2 = (2, "absorption regimes of the coupled oscillators")


@pytest.mark.criterion(*C2)
def test_fig3_regimes():
    t0 = time.perf_counter()
    single = find_extrema(sweep(fig3_params(0.0), FIG3_GRID))
    dip = find_extrema(sweep(fig3_params(0.1), FIG3_GRID))
    doublet = find_extrema(sweep(fig3_params(0.5), FIG3_GRID))
    elapsed = time.perf_counter() - t0

    assert len(single.maxima) == 1
    assert single.maxima[0][0] == pytest.approx(2.0, abs=FIG3_GRID.step)

    assert dip.dip is not None
    assert dip.dip.omega == pytest.approx(2.0, abs=FIG3_GRID.step)
    assert dip.dip.depth_ratio >= 0.99

    # omega_pm^2 = omega^2 +- Omega_r^2
    expected = math.sqrt(4.0 + 0.25) - math.sqrt(4.0 - 0.25)
    assert expected == pytest.approx(0.12506113970512178, rel=1e-12)
    assert len(doublet.maxima) == 2
    assert doublet.splitting == pytest.approx(expected, rel=0.02)
    assert elapsed < 1.0


# -- 3 -------------------------------------------------------------------------------

C3 = (3, "time-domain oracle agrees with the closed form")
ORACLE_STEPS = 1536


@pytest.mark.criterion(*C3)
@pytest.mark.slow
def test_oracle_matches_closed_form():
    omegas = 2.0 + np.linspace(-0.5, 0.5, 21)
    t0 = time.perf_counter()
    worst = {}
    for omega_r in (0.0, 0.1, 0.5):
        p = fig3_params(omega_r)
        numeric = demodulated_response(p, omegas, ORACLE_STEPS)
        exact = probe_amplitude(p, omegas)
        worst[omega_r] = float(np.max(np.abs(numeric - exact) / np.abs(exact)))
    elapsed = time.perf_counter() - t0
    for omega_r, err in worst.items():
        assert err <= 1e-3, f"Omega_r={omega_r}: {err:.3g}"
    assert elapsed < 60.0


@pytest.mark.criterion(*C3)
def test_oracle_fourth_order_convergence():
    p = fig3_params(0.0)
    w = 2.05
    exact = probe_amplitude(p, w)
    errs = [abs(demodulated_response(p, [w], spp, settle_tol=1e-14)[0] - exact)
            for spp in (64, 128, 256)]
    assert errs[0] / errs[1] == pytest.approx(16.0, abs=4.0)
    assert errs[1] / errs[2] == pytest.approx(16.0, abs=4.0)


# -- 4 -------------------------------------------------------------------------------

C4 = (4, "RLC resonances and the EIT to Autler-Townes evolution")


@pytest.mark.criterion(*C4)
@pytest.mark.parametrize("tag", sorted(FIG6_CAPACITORS))
def test_open_switch_resonance_frequency(tag):
    c = fig6_params(FIG6_CAPACITORS[tag], switch_closed=False)
    f_formula = 1 / (2 * math.pi * math.sqrt(c.L2 * c.c_e2))
    s = sweep(c, FrequencyGrid(6e4, 2.8e5, 220001), Observable.CIRCUIT_POWER_OPEN)
    f_peak = find_extrema(s).maxima[0][0] / (2 * math.pi)
    assert f_peak == pytest.approx(f_formula, rel=1e-6)
    nominal = FIG6_NOMINAL_KHZ[tag] * 1e3
    assert abs(f_formula - nominal) / nominal <= 0.05, (
        f"computed {f_formula / 1e3:.2f} kHz vs nominal {nominal / 1e3:.1f} kHz"
    )


@pytest.mark.criterion(*C4)
def test_closed_switch_dip_evolves_into_doublet():
    grid = FrequencyGrid(6e4, 2.8e5, 20001)
    ratios = []
    for tag in sorted(FIG6_CAPACITORS):
        c = fig6_params(FIG6_CAPACITORS[tag])
        f = find_extrema(sweep(c, grid, Observable.CIRCUIT_POWER_CLOSED))
        assert len(f.maxima) == 2
        assert f.dip.depth_ratio >= 0.99
        modes = normal_modes(derive_frequencies(c))
        assert f.splitting == pytest.approx(modes.splitting, rel=0.02)
        # doublet resolved once the splitting exceeds the bare linewidth R2 / L2
        ratios.append(f.splitting / (c.R2 / c.L2))
    assert np.all(np.diff(ratios) > 0)
    assert ratios[0] < 1.0 < ratios[-1]


# -- 5 -------------------------------------------------------------------------------

C5 = (5, "mechanical and electrical pictures give the same extrema")


def _locations(f):
    return [w for w, _ in f.maxima], [w for w, _ in f.minima]


@pytest.mark.criterion(*C5)
@pytest.mark.parametrize("tag", sorted(FIG6_CAPACITORS))
def test_circuit_presets_map_to_mechanics(tag):
    c = fig6_params(FIG6_CAPACITORS[tag])
    m = circuit_to_mech(c)
    grid = FrequencyGrid(6e4, 2.8e5, 10001)
    fe = find_extrema(sweep(c, grid, Observable.CIRCUIT_POWER_CLOSED))
    fm = find_extrema(sweep(m, grid, Observable.ABSORPTION))
    for a, b in zip(_locations(fe), _locations(fm)):
        assert len(a) == len(b) > 0
        np.testing.assert_allclose(a, b, atol=grid.step, rtol=0)


@pytest.mark.criterion(*C5)
@pytest.mark.parametrize("omega_r", [0.1, 0.2, 0.3, 0.4, 0.5])
def test_mechanical_presets_map_to_circuits(omega_r):
    p = fig3_params(omega_r)
    grid = FrequencyGrid(1.5, 2.5, 10001)
    fm = find_extrema(sweep(p, grid, Observable.ABSORPTION))
    fe = find_extrema(sweep(mech_to_circuit(p), grid, Observable.CIRCUIT_POWER_CLOSED))
    for a, b in zip(_locations(fm), _locations(fe)):
        assert len(a) == len(b) > 0
        np.testing.assert_allclose(a, b, atol=grid.step, rtol=0)


# -- 6 -------------------------------------------------------------------------------

C6 = (6, "normal dispersion and phase jumps in the window")


@pytest.mark.criterion(*C6)
def test_normal_dispersion_in_window():
    t0 = time.perf_counter()
    p = fig3_params(0.1)
    centre = dispersion_slope(p, 2.0)
    assert centre > 0
    for delta in (-0.3, 0.3):
        assert centre >= 10 * abs(dispersion_slope(p, 2.0 + delta))
    assert time.perf_counter() - t0 < 0.1


@pytest.mark.criterion(*C6)
def test_three_phase_jumps():
    t0 = time.perf_counter()
    j = phase_features(sweep(fig3_params(0.1), FIG3_GRID, Observable.PHASE))
    assert j.count == 3
    assert j.signs[1] == -j.signs[0] == -j.signs[2]
    assert time.perf_counter() - t0 < 0.1


# -- 7 -------------------------------------------------------------------------------

C7 = (7, "property suites")


@pytest.mark.criterion(*C7)
def test_lorentzian_identity():
    p = fig3_params(0.0)
    w = np.linspace(1.5, 2.5, 1001)
    np.testing.assert_allclose(probe_power(p, w).real, lorentzian_power(p, w), rtol=1e-12)


@pytest.mark.criterion(*C7)
@pytest.mark.parametrize("omega_r", [0.0, 0.1, 0.5])
def test_power_amplitude_identity(omega_r):
    p = replace(fig3_params(omega_r), phi_s=0.3)
    w = np.linspace(1.5, 2.5, 1001)
    expected = -2j * np.pi * w * p.F * probe_amplitude(p, w) * np.exp(1j * p.phi_s)
    np.testing.assert_allclose(probe_power(p, w), expected, rtol=1e-12)


@pytest.mark.criterion(*C7)
def test_oracle_linear_in_drive():
    p = fig3_params(0.1)
    w = 2.02
    period = 2 * math.pi / w
    cfg = IntegrationConfig(dt=period / 256, t_end=200 * period, transient_periods=0)
    a = integrate(p, w, cfg)
    b = integrate(replace(p, F=7.5 * p.F), w, cfg)
    scale = np.max(np.abs(b.x1))
    assert np.max(np.abs(7.5 * a.x1 - b.x1)) <= 1e-9 * scale


@pytest.mark.criterion(*C7)
@pytest.mark.parametrize("observable", list(Observable)[:3])
def test_csv_round_trip(tmp_path, observable):
    s = sweep(fig3_params(0.3), FIG3_GRID, observable)
    write_csv(s, tmp_path / "s.csv")
    back = read_csv(tmp_path / "s.csv")
    assert np.max(np.abs(back["re_value"] - s.values)) == 0
    assert np.array_equal(back["omega_s"], s.omegas)


@pytest.mark.criterion(*C7)
def test_reruns_are_byte_identical(tmp_path, capsys):
    outputs = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        assert main(["spectrum", "--preset", "fig6d", "--output", str(path)]) == 0
        outputs.append(path.read_bytes())
        path = tmp_path / f"traj{i}.csv"
        assert main(["timedomain", "--preset", "fig3c", "--t-end", "50",
                     "--output", str(path)]) == 0
        outputs.append(path.read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[2]
    assert outputs[1] == outputs[3]
    assert get_preset("fig6d").params == fig6_params(0.050e-6)
