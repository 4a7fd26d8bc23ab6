import numpy as np
import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(criterion): exit criterion of the build")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                lines.append((props["criterion"], outcome.upper(), props.get("detail", "")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for crit, verdict, detail in sorted(lines, key=lambda t: int(t[0].split()[0])):
        terminalreporter.write_line(f"[{'PASS' if verdict == 'PASSED' else 'FAIL'}] {crit}  {detail}")
