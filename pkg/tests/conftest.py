import numpy as np
import pytest

from slocc.algebra import SpatialWavefunction, Statistics

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []

BOTH = [Statistics.BOSON, Statistics.FERMION]


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(params=BOTH, ids=["boson", "fermion"])
def stats(request):
    return request.param


def modes_0802():
    """psi = sqrt(.8)|L> + sqrt(.2)|R>, psi' = sqrt(.2)|L> + sqrt(.8)|R>."""
    return (SpatialWavefunction({"L": np.sqrt(0.8), "R": np.sqrt(0.2)}),
            SpatialWavefunction({"L": np.sqrt(0.2), "R": np.sqrt(0.8)}))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
