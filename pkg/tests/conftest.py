import pytest

from tatelab.algebra import preset_ring
from tatelab.scalars import FieldConfig


@pytest.fixture(scope="session")
def cfg():
    return FieldConfig()


@pytest.fixture(scope="session")
def cfg_p():
    return FieldConfig(32003)


@pytest.fixture(scope="session")
def R(cfg):
    return preset_ring(cfg)


@pytest.fixture(scope="session")
def Rp(cfg_p):
    return preset_ring(cfg_p)


# -- acceptance summary: one line per criterion ----------------------------------

_CRITERIA: list = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or (rep.when == "setup" and not rep.passed)):
        return
    if hasattr(rep, "wasxfail"):
        status = "XFAIL" if rep.skipped else "XPASS"
    else:
        status = {"passed": "PASS", "failed": "FAIL"}.get(rep.outcome, rep.outcome.upper())
    detail = dict(item.user_properties).get("detail", "")
    _CRITERIA.append((mark.args[0], mark.args[1], status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, title, status, detail in _CRITERIA:
        terminalreporter.write_line(f"{status:5s} [{label}] {title}" + (f" | {detail}" if detail else ""))
