import collections

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from classical_eit.config import fig3_params, fig6_params
from classical_eit.model import MechanicalParams

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria = {}
_outcomes = collections.defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid in _criteria and (report.when == "call" or report.outcome != "passed"):
        _outcomes[_criteria[report.nodeid]].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), results in sorted(_outcomes.items()):
        ok = all(r == "passed" for r in results)
        n_ok = sum(r == "passed" for r in results)
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({n_ok}/{len(results)} checks)"
        )


@pytest.fixture
def fig3b():
    return fig3_params(0.1)


@pytest.fixture
def lorentz():
    return fig3_params(0.0)


@pytest.fixture
def table2_closed():
    return fig6_params(0.196e-6)


positive = st.floats(min_value=1e-2, max_value=1e2, allow_nan=False, allow_infinity=False)
damping = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def mechanical_params(draw, k_min=1e-2):
    return MechanicalParams(
        m1=draw(positive), m2=draw(positive),
        k1=draw(st.floats(min_value=k_min, max_value=1e2)),
        k2=draw(st.floats(min_value=k_min, max_value=1e2)),
        K=draw(st.just(0.0) | st.floats(min_value=1e-6, max_value=1e2)),
        gamma1=draw(damping), gamma2=draw(damping),
        F=draw(st.floats(min_value=0.0, max_value=10.0)),
        phi_s=draw(st.floats(min_value=-3.14, max_value=3.14)),
        pump_clamped=draw(st.booleans()),
    )


@st.composite
def degenerate_mechanical(draw):
    """Equal masses and springs, damped driven oscillator, w^2 > Omega_r^2."""
    m = draw(positive)
    k = draw(st.floats(min_value=1e-2, max_value=1e2))
    K = draw(st.floats(min_value=0.0, max_value=1e2))
    return MechanicalParams(m1=m, m2=m, k1=k, k2=k, K=K,
                            gamma1=draw(st.floats(min_value=1e-3, max_value=1.0)),
                            gamma2=draw(damping), F=draw(st.floats(min_value=1e-3, max_value=10.0)))
