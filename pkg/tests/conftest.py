import math
from pathlib import Path

import hypothesis
import numpy as np
import pytest

from kalpha.data import ReliabilityMatrix
from kalpha.datasets import nominal_example

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile("default")

DATA = Path(__file__).parent / "data"

# Lines appended by test_acceptance.py, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def nominal():
    return nominal_example()


@pytest.fixture
def data_dir():
    return DATA


def brute_alpha(rows, dist):
    """Pair-counting oracle in plain loops: (D_o, D_e, alpha).

    ``rows`` holds None for missing; ``dist`` is a two-argument callable.
    Kept deliberately naive and separate from the package code path.
    """
    num, n_o, pool = 0.0, 0, []
    for row in rows:
        p = [v for v in row if v is not None and not (isinstance(v, float) and math.isnan(v))]
        pool.extend(p)
        if len(p) < 2:
            continue
        n_o += len(p)
        s = 0.0
        for j in range(len(p)):
            for k in range(len(p)):
                if j != k:
                    s += dist(p[j], p[k])
        num += s / (len(p) - 1)
    d_o = num / n_o
    n = len(pool)
    tot = 0.0
    for a in range(n):
        for b in range(n):
            if a != b:
                tot += dist(pool[a], pool[b])
    d_e = tot / (n * (n - 1))
    return d_o, d_e, 1 - d_o / d_e


def random_matrix(gen, n_u, n_c, missing=0.0, unit_sd=1.0, noise_sd=1.0, keep_pairable=True):
    """Gaussian unit effect plus noise, with optional MCAR holes."""
    y = gen.normal(0, unit_sd, (n_u, 1)) + gen.normal(0, noise_sd, (n_u, n_c))
    if missing:
        holes = gen.random((n_u, n_c)) < missing
        y[holes] = np.nan
        if keep_pairable and not ((~np.isnan(y)).sum(axis=1) >= 2).any():
            y[0, :2] = gen.normal(size=2)
    return ReliabilityMatrix(y)
