from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gridfloer.grid import GridDiagram, load_grid, trace_components

DATA = Path(__file__).resolve().parent.parent / "data"


def data_grid(name: str) -> GridDiagram:
    return load_grid(DATA / f"{name}.grid")


def random_grid(rng: random.Random, n: int, knot: bool = False) -> GridDiagram:
    """Uniform pair of permutations with no X and O sharing a cell."""
    while True:
        xs = list(range(n))
        os_ = list(range(n))
        rng.shuffle(xs)
        rng.shuffle(os_)
        if any(a == b for a, b in zip(xs, os_)):
            continue
        g = GridDiagram(n, tuple(xs), tuple(os_))
        if knot and trace_components(g).component_count != 1:
            continue
        return g


@st.composite
def grids(draw, min_n: int = 2, max_n: int = 6, knot: bool = False):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_grid(random.Random(seed), n, knot)


@pytest.fixture(scope="session")
def unknot():
    return data_grid("unknot")


@pytest.fixture(scope="session")
def trefoil():
    return data_grid("trefoil")


@pytest.fixture(scope="session")
def five_two():
    return data_grid("5_2")


@pytest.fixture(scope="session")
def hopf():
    return data_grid("hopf")
