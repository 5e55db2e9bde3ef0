import numpy as np
import pytest

from obstacle_dg.dg_space import DGFunction, Mesh1D


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def unit_mesh():
    return Mesh1D(0.0, 1.0, 1)


def random_dg(rng, n=8, k=2, a=-1.0, b=1.0):
    return DGFunction(Mesh1D(a, b, n), k, rng.standard_normal((n, k + 1)))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the acceptance summary."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
