"""Shared helpers: acceptance-criterion reporting with a summary block."""

_criterion_lines = {}


def record_criterion(num: int, label: str, passed: bool, detail: str = ""):
    line = f"{'PASS' if passed else 'FAIL'} criterion {num:2d}: {label}"
    if detail:
        line += f"  [{detail}]"
    _criterion_lines[num] = line
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for num in sorted(_criterion_lines):
            terminalreporter.write_line(_criterion_lines[num])
