import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cartan_hartogs.catalog import EXCEPTIONAL, type_i, type_ii, type_iii, type_iv

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def small_specs():
    """A compact cross-section of every family, exceptional domains included."""
    return [
        type_i(1, 1), type_i(1, 3), type_i(2, 2), type_i(2, 3), type_i(3, 4),
        type_ii(4), type_ii(5), type_ii(7),
        type_iii(2), type_iii(3), type_iii(5),
        type_iv(5), type_iv(8),
        *EXCEPTIONAL,
    ]


spec_strategy = st.sampled_from(small_specs())
positive_rationals = st.fractions(min_value=Fraction(1, 12), max_value=5, max_denominator=12)


@pytest.fixture(scope="session")
def specs():
    return small_specs()


# one summary line per acceptance criterion, collected from test outcomes

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            number, title = value
            state = "PASS" if report.passed else "FAIL"
            _ACCEPTANCE[number] = (title, state, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, state, duration = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {state}  {title}  ({duration:.2f}s)")
