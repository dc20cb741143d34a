import pytest

from standbypm import config
from standbypm.distributions import Exponential

from .helpers import model


@pytest.fixture
def trivial():
    """Exponential(1) main, lambda 1, repair rate 1, maintenance rate 3."""
    return model(Exponential(1.0))


@pytest.fixture
def bfr():
    return config.load(config.scenario_path("bfr_weibull_min")).model


@pytest.fixture
def ubfr():
    return config.load(config.scenario_path("ubfr_exp_max")).model


@pytest.fixture
def ubfr_window():
    return config.load(config.scenario_path("ubfr_finite_window")).model


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
