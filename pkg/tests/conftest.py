import numpy as np
import pytest

import incentive_dynamics as idn

BARY3 = [1 / 3, 1 / 3, 1 / 3]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_game(rng):
    if rng.uniform() < 0.5:
        n = int(rng.integers(2, 6))
        return idn.Game.symmetric(rng.normal(size=(n, n)))
    n1, n2 = (int(v) for v in rng.integers(2, 5, size=2))
    return idn.Game.bimatrix(rng.normal(size=(n1, n2)), rng.normal(size=(n1, n2)))


def random_interior(rng, sizes, floor=1e-3):
    # Dirichlet draws kept away from the faces
    xs = []
    for n in sizes:
        w = rng.dirichlet(np.ones(n))
        xs.append((w + floor) / (1 + n * floor))
    return idn.StateProfile(tuple(xs))


def rps_surplus(a, b, x):
    """(a - b)(1/3 - s) with s the sum of pairwise products; the ESS gap for RPS."""
    x = np.asarray(x)
    s = x[0] * x[1] + x[1] * x[2] + x[2] * x[0]
    return (a - b) * (1 / 3 - s)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1][1:])):
        terminalreporter.write_line(line)
