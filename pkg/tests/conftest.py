from importlib import resources

import pytest

from litmuskit import FinalStateSpec, LitmusConfig, Load, MemoryModel, Program, Store
from litmuskit.litmus_io import parse_litmus, parse_param

DATA = resources.files("litmuskit") / "data"

_acceptance: list[tuple[str, str, str]] = []


def corpus_paths():
    return sorted((DATA / "litmus").iterdir(), key=lambda p: p.name)


def load_litmus(name):
    return parse_litmus((DATA / "litmus" / f"{name}.litmus").read_text())


def load_param(name):
    return parse_param((DATA / "params" / f"{name}.json").read_text())


@pytest.fixture
def sb000a():
    """SB000a: x is stored by both cores, then each reads it into EAX."""
    config = LitmusConfig(n_cores=2, n_registers=1, n_variables=1, n_values=3, max_ops_per_core=2)
    program = Program([[Store(0, 1), Load(0, 0)], [Store(0, 2), Load(0, 0)]])
    return config, program


@pytest.fixture(params=list(MemoryModel), ids=lambda m: m.value)
def mcm(request):
    return request.param


def spec(registers=None, variables=None):
    return FinalStateSpec(registers or {}, variables or {})


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.longrepr and str(report.longrepr).splitlines()[-1] or ""))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _acceptance:
        line = f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}"
        if outcome != "passed":
            line += f"  ({detail})"
        terminalreporter.write_line(line)
    for line in ACCEPTANCE_NOTES:
        terminalreporter.write_line(f"      {line}")


ACCEPTANCE_NOTES: list[str] = []
