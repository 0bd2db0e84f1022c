import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_lines: list[str] = []


def pytest_runtest_logreport(report):
    if report.when == "call":
        for key, value in report.user_properties:
            if key == "acceptance":
                _lines.append(value)


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_lines):
            terminalreporter.write_line(line)
