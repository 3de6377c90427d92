from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import grids
from gridfloer.mos import build_mos_complex
from gridfloer.ovals import (OvalError, build_arrangement, default_omission, enumerate_short_generators,
                             outside_marker, short_census, valid_omissions)


def test_unknot_arrangement(unknot):
    arr = build_arrangement(unknot)
    assert arr.omit == (1, 1) and arr.size == 1
    assert sorted(p.point for p in arr.intersections) == [(2, 6), (6, 6)]
    assert short_census(arr) == {((0,), 0): 1, ((-2,), -1): 1}
    assert str(short_census(arr).euler()) == "1 - t^(-1)"


def test_explicit_omission_must_leave_a_marker_outside(five_two):
    with pytest.raises(OvalError):
        build_arrangement(five_two, omit=(3, 3))
    with pytest.raises(OvalError):
        build_arrangement(five_two, omit=(9, 0))


def test_default_and_fallback(five_two, trefoil):
    assert default_omission(five_two) == (6, 6)
    arr = build_arrangement(five_two)
    assert arr.omit == (6, 6) and outside_marker(arr)
    arr = build_arrangement(trefoil)
    assert arr.omit in valid_omissions(trefoil)


def test_ovals_have_the_expected_shape(five_two):
    for length in ("short", "long"):
        arr = build_arrangement(five_two, omit=(0, 4), length=length)
        assert len(arr.horizontal) == len(arr.vertical) == 6
        assert len({p.point for p in arr.intersections}) == len(arr.intersections)
        # Ovals meet in 0, 2 or 4 points, never in a cap.
        pairs = {}
        for p in arr.intersections:
            pairs.setdefault((p.h_index, p.v_index), []).append(p)
        assert all(len(v) in (2, 4) for v in pairs.values())


def test_long_ovals_meet_everywhere(trefoil):
    arr = build_arrangement(trefoil, length="long")
    assert len(arr.intersections) == 4 * 4 * 4


def test_short_generators_are_matchings(five_two):
    arr = build_arrangement(five_two, omit=(0, 4))
    for x in enumerate_short_generators(arr):
        assert sorted(x.v_indices) == list(range(arr.size))


@settings(max_examples=40, deadline=None)
@given(grids(2, 6), st.sampled_from(["vertical-inside", "horizontal-inside"]), st.integers(0, 100))
def test_census_euler_equals_mos_euler(g, corner, pick):
    omissions = valid_omissions(g, corner=corner)
    assert omissions
    arr = build_arrangement(g, omissions[pick % len(omissions)], corner=corner)
    assert short_census(arr).euler() == build_mos_complex(g).census().euler()


def test_windowed_census_is_a_restriction(five_two):
    arr = build_arrangement(five_two, omit=(0, 4))
    full = short_census(arr)
    assert short_census(arr, window=[(0, 100)]) == full.restrict(0, 100)
