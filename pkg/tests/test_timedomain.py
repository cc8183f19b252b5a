import math
from dataclasses import replace

import numpy as np
import pytest

from classical_eit.config import fig3_params
from classical_eit.errors import (
    DivergenceError,
    IntegrationConfigError,
    NotSteadyError,
    WindowTooShortError,
)
from classical_eit.model import MechanicalParams, mech_to_circuit
from classical_eit.response import probe_amplitude
from classical_eit.timedomain import (
    IntegrationConfig,
    OscState,
    demodulate,
    demodulated_response,
    energy,
    heuristic_transient_periods,
    integrate,
    settling_time,
    steady_state_amplitude,
)


def fixed_cfg(omega, periods, spp=256):
    period = 2 * math.pi / omega
    return IntegrationConfig(dt=period / spp, t_end=periods * period, transient_periods=0,
                             demod_periods=1)


def test_rest_without_drive_stays_at_rest(fig3b):
    traj = integrate(replace(fig3b, F=0.0), 2.0, fixed_cfg(2.0, 5))
    for arr in (traj.x1, traj.v1, traj.x2, traj.v2):
        assert not np.any(arr)


def test_free_decay_energy_after_ten_damping_times(lorentz):
    p = replace(lorentz, F=0.0)
    start = OscState(x1=1.0)
    cfg = IntegrationConfig(dt=0.01, t_end=10 / p.gamma1, transient_periods=0)
    traj = integrate(p, 2.0, cfg, initial=start)
    e = np.array([energy(p, traj.state(i)) for i in range(0, len(traj), 50)])
    ratio = e[-1] / energy(p, start)
    # amplitude ~ exp(-g t / 2), energy ~ exp(-g t) up to an O(g / w) ripple
    assert math.exp(-10) * 0.95 < ratio < math.exp(-10) * 1.05
    assert np.all(np.diff(e) <= 1e-12 * e[0])


def test_resonant_envelope_matches_steady_amplitude(lorentz):
    n = demodulated_response(lorentz, [2.0], steps_per_period=256)[0]
    expected = lorentz.F / (lorentz.m1 * lorentz.gamma1 * 2.0)
    assert abs(n) == pytest.approx(expected, rel=1e-3)
    assert expected == pytest.approx(1.25)


def test_demodulation_recovers_synthetic_quadratures():
    w = 2.0
    t = np.linspace(0, 10 * 2 * math.pi / w, 10 * 1024 + 1)
    res = demodulate(t, 3 * np.cos(w * t) + 4 * np.sin(w * t), w)
    assert res.value == pytest.approx(3 + 4j, abs=1e-12)
    assert abs(res.value) == pytest.approx(5.0, abs=1e-6)
    assert res.residual < 1e-12


def test_transparency_in_time_domain(fig3b):
    n = demodulated_response(fig3b, [2.0], steps_per_period=512)[0]
    assert abs(n) < 1e-3 * 1.25


def test_response_is_linear_in_drive(fig3b):
    cfg = fixed_cfg(2.03, 40)
    a = integrate(fig3b, 2.03, cfg)
    b = integrate(replace(fig3b, F=3 * fig3b.F), 2.03, cfg)
    scale = np.max(np.abs(b.x1))
    assert np.max(np.abs(3 * a.x1 - b.x1)) <= 1e-9 * scale
    assert np.max(np.abs(3 * a.x2 - b.x2)) <= 1e-9 * scale


@pytest.mark.parametrize("scale", [1.0, 1e-3])
def test_mechanical_and_circuit_trajectories_coincide(fig3b, scale):
    cfg = fixed_cfg(1.98, 40)
    m = integrate(fig3b, 1.98, cfg)
    c = integrate(mech_to_circuit(fig3b, scale), 1.98, cfg)
    assert c.picture == "electrical"
    ref = np.max(np.abs(m.x1))
    assert np.max(np.abs(c.driven - m.driven)) <= 1e-6 * ref
    assert np.max(np.abs(c.x1 - m.x2)) <= 1e-6 * ref


def test_fourth_order_convergence(lorentz):
    w = 2.05
    exact = probe_amplitude(lorentz, w)
    errs = [abs(demodulated_response(lorentz, [w], spp, settle_tol=1e-14)[0] - exact)
            for spp in (64, 128)]
    assert errs[0] / errs[1] == pytest.approx(16.0, abs=4.0)


def test_settling_time_ignores_uncoupled_pump(lorentz):
    # pump has gamma ~ 1e-7 but is invisible to the driven coordinate
    t = settling_time(lorentz, 1e-10)
    assert t == pytest.approx(2 * math.log(1e10) / lorentz.gamma1, rel=0.05)


def test_heuristic_transient_has_floor():
    p = MechanicalParams(1, 1, 4, 4, 0, 100.0, 100.0, 1)
    assert heuristic_transient_periods(p, 2.0) == 50.0


# -- errors -------------------------------------------------------------------


def test_coarse_step_rejected(fig3b):
    with pytest.raises(IntegrationConfigError, match="too coarse"):
        integrate(fig3b, 2.0, fixed_cfg(2.0, 5, spp=10))


def test_window_too_short(lorentz):
    cfg = IntegrationConfig.for_drive(lorentz, 2.0, 128)
    short = IntegrationConfig(cfg.dt, cfg.t_end / 2, 0, cfg.demod_periods)
    traj = integrate(lorentz, 2.0, short)
    with pytest.raises(WindowTooShortError):
        steady_state_amplitude(traj, 2.0, cfg)


def test_unsettled_trajectory_rejected(lorentz):
    cfg = IntegrationConfig.for_drive(lorentz, 2.0, 128, transient_periods=0)
    traj = integrate(lorentz, 2.0, cfg)
    with pytest.raises(NotSteadyError):
        steady_state_amplitude(traj, 2.0, cfg)


def test_overflow_reports_divergence(lorentz):
    with pytest.raises(DivergenceError):
        integrate(lorentz, 2.0, fixed_cfg(2.0, 2), initial=OscState(x1=1e308, v1=1e308))


def test_undamped_mode_has_no_settling_time():
    p = MechanicalParams(1, 1, 4, 4, 0.1, 0.0, 0.0, 1)
    with pytest.raises(IntegrationConfigError, match="undamped"):
        settling_time(p)


def test_invalid_config_rejected():
    with pytest.raises(IntegrationConfigError):
        IntegrationConfig(dt=0.0, t_end=1.0, transient_periods=0)
    with pytest.raises(IntegrationConfigError):
        IntegrationConfig(dt=0.1, t_end=1.0, transient_periods=0, demod_periods=0)
