import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE: dict = {}


def record(criterion: str, ok, detail: str = "") -> bool:
    status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    line = f"{status} criterion {criterion}" + (f": {detail}" if detail else "")
    ACCEPTANCE[criterion] = line
    print(line)
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE[key])
