import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tttsvd.compression import hosvd_factors, svd_factorization  # noqa: E402
from tttsvd.evaluation import build_exact  # noqa: E402


@pytest.fixture(scope="session")
def exact():
    return build_exact()


@pytest.fixture(scope="session")
def svd_f(exact):
    return svd_factorization(exact)


@pytest.fixture(scope="session")
def hosvd_f(exact):
    return hosvd_factors(exact)


_criteria = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    detail = dict(report.user_properties).get("detail", "")
    name = report.nodeid.split("::")[-1].replace("test_criterion_", "")
    _criteria.append((name, "PASS" if report.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in _criteria:
        terminalreporter.write_line(f"{status}  {name:<22} {detail}")
