import pytest

from plateau import kernels
from plateau.boolfun import anf_to_function, from_truth_table, parse_anf

PAPER_ANF = "x1*x2 + x1*x3 + x2*x3"
FIGURE_ANF = "x1*x2 + x3*x4 + x1*x4*x5 + x2*x3*x5 + x3*x4*x5"


@pytest.fixture
def majority():
    return anf_to_function(parse_anf(PAPER_ANF, 3))


@pytest.fixture
def figure_function():
    return anf_to_function(parse_anf(FIGURE_ANF, 5))


@pytest.fixture
def zero3():
    return from_truth_table("00000000")


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return kernels.get_backend(request.param)


# --- acceptance summary -----------------------------------------------------

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, [title, True, 0.0])
    if report.failed:
        entry[1] = False
    if report.when == "call":
        entry[2] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        title, ok, seconds = _criteria[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.1f}s)"
        )
