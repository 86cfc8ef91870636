import pytest

from ffiter import validate_table
from ffiter.generators import staircase_function

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def paper_table():
    # 0->5, 1->6, 2->3, 3->5, 4->2, 5->2, 6->1
    return validate_table([5, 6, 3, 5, 2, 2, 1])


@pytest.fixture
def staircase10():
    return staircase_function(10)[0]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager factory that records one PASS/FAIL line per acceptance criterion."""
    import contextlib

    @contextlib.contextmanager
    def record(label):
        try:
            yield
        except BaseException as exc:
            line = f"FAIL  {label}  ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
            ACCEPTANCE_LINES.append(line)
            print(line)
            raise
        line = f"PASS  {label}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record
