import pytest

_LINES = []


class Criterion:
    """Collects the outcome line of one acceptance criterion."""

    def __init__(self, number):
        self.number = number

    def report(self, ok: bool, text: str):
        line = f"[criterion {self.number:>2}] {'PASS' if ok else 'FAIL'}  {text}"
        print(line)
        _LINES.append(line)
        return ok


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("acceptance")
    return Criterion(marker.args[0] if marker and marker.args else "?")


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
