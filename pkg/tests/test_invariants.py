from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import data_grid, grids
from gridfloer.grid import cyclic_permute, mirror, transpose
from gridfloer.invariants import (ComputeConfig, LinkInputError, alexander_polynomial, compute_hfk, is_fibered,
                                  seifert_genus, symmetry_check)
from gridfloer.oracle import alexander_by_determinant
from gridfloer.poly import Laurent

TREFOIL = {(1, 2): 1, (0, 1): 1, (-1, 0): 1}
FIVE_TWO = {(1, 2): 2, (0, 1): 3, (-1, 0): 2}


def test_unknot(unknot):
    r = compute_hfk(unknot)
    assert r.table.as_plain() == {(0, 0): 1}
    assert alexander_polynomial(r) == 1 and seifert_genus(r) == 0 and is_fibered(r)


def test_trefoil_and_its_mirror(trefoil):
    r = compute_hfk(trefoil)
    assert r.table.as_plain() == TREFOIL
    m = compute_hfk(data_grid("trefoil_mirror"))
    assert m.table.as_plain() == {(1, 0): 1, (0, -1): 1, (-1, -2): 1}
    assert compute_hfk(mirror(trefoil)).table == m.table


@pytest.mark.parametrize("name", ["5_2", "5_2_alt"])
def test_five_two(name):
    r = compute_hfk(data_grid(name))
    assert r.table.as_plain() == FIVE_TWO
    assert r.alexander_poly == Laurent.from_coefficients({1: 2, 0: -3, -1: 2})
    assert (r.genus, r.fibered, r.symmetric) == (1, False, True)


def test_hopf_link(hopf):
    r = compute_hfk(hopf)
    assert r.table.total_rank() == 4 and r.symmetric
    assert r.genus is None
    with pytest.raises(LinkInputError):
        seifert_genus(r)
    with pytest.raises(LinkInputError):
        is_fibered(r)


def test_symmetry_fast_path_and_windows(five_two):
    full = compute_hfk(five_two)
    fast = compute_hfk(five_two, ComputeConfig(use_symmetry=True))
    assert fast.table == full.table
    assert fast.stats["generators"] < full.stats["generators"]
    top = compute_hfk(five_two, ComputeConfig(window=(2, 2)))
    assert top.table == full.table.restrict(2, 2)
    assert (top.genus, top.fibered, top.complete) == (1, False, False)


def test_config_validation():
    with pytest.raises(ValueError):
        ComputeConfig(threads=0)
    with pytest.raises(ValueError):
        ComputeConfig(window=(2, 0))


@settings(max_examples=30, deadline=None)
@given(grids(2, 6, knot=True))
def test_random_knots(g):
    r = compute_hfk(g)
    assert symmetry_check(r)
    assert r.alexander_poly == alexander_by_determinant(g)
    assert r.alexander_poly.at_one() == 1
    assert r.table.total_rank() % 2 == 1


@settings(max_examples=15, deadline=None)
@given(grids(3, 6, knot=True), st.integers(0, 5), st.integers(0, 5))
def test_genus_and_fiberedness_are_move_invariant(g, i, j):
    r = compute_hfk(g)
    moved = cyclic_permute(cyclic_permute(g, "row", i), "column", j)
    for h in (moved, transpose(g)):
        s = compute_hfk(h)
        assert (s.genus, s.fibered) == (r.genus, r.fibered)
    assert compute_hfk(moved).table == r.table
