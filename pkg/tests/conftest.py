from pathlib import Path

import numpy as np
import pytest

from freesupport import check_measure

DATA = Path(__file__).parent / "data"

# named laws use the default discretization; the two mixed specs are exact inputs
CORPUS = {
    "semicircle": "semicircle",
    "bernoulli": "bernoulli",
    "free_poisson:0.5": "free_poisson:0.5",
    "mixed": str(DATA / "mixed.json"),
    "mixed_two_atoms": str(DATA / "mixed_two_atoms.json"),
}

ACCEPTANCE_LINES = []


def brute_force(A, B, n=100_000):
    """Dense sampling oracle; error is at most one grid spacing per direction."""
    lo = min(A.lows.min(), B.lows.min())
    hi = max(A.highs.max(), B.highs.max())
    grid = np.linspace(lo, hi, n)
    spacing = grid[1] - grid[0]

    def sample(U):
        pts = grid[U.contains(grid)]
        return np.sort(np.concatenate([pts, U.lows, U.highs]))

    def directed(P, Q):
        idx = np.clip(np.searchsorted(Q, P), 1, len(Q) - 1)
        return float(np.max(np.minimum(np.abs(P - Q[idx - 1]), np.abs(P - Q[idx]))))

    a, b = sample(A), sample(B)
    return max(directed(a, b), directed(b, a)), spacing


@pytest.fixture(scope="session")
def corpus():
    return {name: check_measure(src) for name, src in CORPUS.items()}


@pytest.fixture(scope="session")
def semicircle(corpus):
    return corpus["semicircle"]


@pytest.fixture(scope="session")
def bernoulli(corpus):
    return corpus["bernoulli"]


@pytest.fixture(scope="session")
def free_poisson(corpus):
    return corpus["free_poisson:0.5"]


@pytest.fixture(scope="session")
def mixed(corpus):
    return corpus["mixed"]


@pytest.fixture(scope="session")
def mixed_two_atoms(corpus):
    return corpus["mixed_two_atoms"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
