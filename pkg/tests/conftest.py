import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from houghton.elements import HoughtonElement, SymInf, from_z, random_element

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**64 - 1)


def elements(n, tags=()):
    return seeds.map(lambda s: random_element(n, random.Random(s), tags))


def finitary(n, max_window=16):
    return seeds.map(lambda s: random_element(n, random.Random(s), (SymInf(),), max_window=max_window))


def random_gamma(rng, n=2):
    """gamma fixing z < -m with gamma(-m) = -k, 1 <= k < m."""
    m = rng.randint(2, 6)
    k = rng.randint(1, m - 1)
    zs = list(range(-m, rng.randint(0, 5) + 1))
    img = zs[:]
    rng.shuffle(img)
    src = img.index(-k)
    img[0], img[src] = img[src], img[0]
    g = HoughtonElement.from_images(n, (0,) * n, {from_z(a): from_z(b) for a, b in zip(zs, img) if a != b})
    return g, m, k


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
