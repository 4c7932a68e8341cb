import numpy as np
import pytest

from genbounds import LearningModel, make_discrete, mean_kernel, truncated_square_loss

# one line per release-gate criterion; emitted after capture ends so the
# PASS/FAIL verdicts always land in the terminal output
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fair_bit():
    return make_discrete([0.0, 1.0], [0.5, 0.5])


@pytest.fixture
def coin_mean_n2():
    """Uniform {-1, 1}, empirical mean, n=2; truncation at c=10 never active."""
    data = make_discrete([-1.0, 1.0], [0.5, 0.5])
    return LearningModel(data=data, n=2, kernel=mean_kernel(), loss=truncated_square_loss(10.0))


def random_pair(rng: np.random.Generator, k: int | None = None):
    """One random (p, q) pair on a shared support, q positive everywhere."""
    if k is None:
        k = int(rng.integers(2, 7))
    atoms = np.sort(rng.uniform(-2.0, 2.0, size=k))
    while len(set(atoms.tolist())) < k:
        atoms = np.sort(rng.uniform(-2.0, 2.0, size=k))
    p = rng.dirichlet(np.ones(k))
    q = rng.dirichlet(np.ones(k))
    return (
        make_discrete(atoms.tolist(), p.tolist()),
        make_discrete(atoms.tolist(), q.tolist()),
    )
