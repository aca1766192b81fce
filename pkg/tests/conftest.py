import pytest

from barrier_cover import Instance
from barrier_cover.cli import generate_instance


def line_instance(barriers, xs, r):
    return Instance.create(barriers, [(x, 0.0) for x in xs], r)


@pytest.fixture
def two_barrier_inst():
    """The running example: two sensors, two barriers, optimum 1."""
    return line_instance([[0, 2], [4, 6]], [1, 4], 1.0)


def random_line(seed, n_max=8, m_max=5, r=1.0):
    n = 1 + seed % n_max
    m = 1 + (seed // n_max) % m_max
    spread = 5.0 + 3.1 * (seed % 6)
    return generate_instance(n, m, r, spread, seed * 7 + 3, "line")


def random_plane(seed, n_max=6, m_max=4, r=1.0):
    n = 1 + seed % n_max
    m = 1 + (seed // n_max) % m_max
    spread = 5.0 + 2.7 * (seed % 7)
    return generate_instance(n, m, r, spread, seed * 13 + 1, "plane")
