import os

import pytest
from hypothesis import HealthCheck, settings

from maxclass.groups import all_specs

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SPECS_3_6 = list(all_specs(3, 6))
SPECS_3_5 = list(all_specs(3, 5))


def spec_id(spec):
    return spec.name


@pytest.fixture(params=SPECS_3_5, ids=spec_id)
def spec35(request):
    return request.param


@pytest.fixture(params=SPECS_3_6, ids=spec_id)
def spec36(request):
    return request.param


# --- acceptance summary --------------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    num = int(name.split("_")[2])
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed"
        _criteria[num] = _criteria.get(num, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        status = "PASS" if _criteria[num] else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status}")
