from __future__ import annotations

import itertools
import random

from hypothesis import given, settings, strategies as st

from conftest import grids
from gridfloer.gradings import alexander_by_pairing, alexander_grading, count_I, maslov_grading, pair_J
from gridfloer.grid import trace_components
from gridfloer.mos import MosTables


def brute_I(a, b):
    return sum(1 for p in a for q in b if p[0] < q[0] and p[1] < q[1])


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=12),
       st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=12))
def test_count_I_matches_brute_force(a, b):
    assert count_I(a, b) == brute_I(a, b)
    assert pair_J(a, b) == brute_I(a, b) + brute_I(b, a)


def test_unknot_gradings(unknot):
    tables = MosTables.build(unknot)
    grades = sorted((tables.alexander(s), tables.maslov(s)) for s in itertools.permutations(range(2)))
    # Doubled Alexander: (0,0) and (-1,-1).
    assert grades == [((-2,), -1), ((0,), 0)]


@settings(max_examples=40, deadline=None)
@given(grids(2, 6), st.integers(0, 10 ** 6))
def test_fast_gradings_match_generic_formulas(g, seed):
    tables = MosTables.build(g)
    trace = trace_components(g)
    o = g.o_points()
    sigma = list(range(g.n))
    random.Random(seed).shuffle(sigma)
    pts = [(2 * c, 2 * r) for c, r in enumerate(sigma)]
    assert tables.maslov(sigma) == maslov_grading(pts, o, shift=1)
    assert tables.alexander(sigma) == alexander_grading(pts, g, trace)
    assert alexander_by_pairing(pts, g, trace) == alexander_grading(pts, g, trace)


@settings(max_examples=25, deadline=None)
@given(grids(2, 6))
def test_maslov_with_x_markers_gives_the_other_grading(g):
    # For a knot, A = (M_O - M_X) / 2 - (n - 1) / 2, M_X using X markers in place of O.
    trace = trace_components(g)
    if trace.component_count != 1:
        return
    tables = MosTables.build(g)
    xm = g.x_points()
    for sigma in itertools.islice(itertools.permutations(range(g.n)), 60):
        pts = [(2 * c, 2 * r) for c, r in enumerate(sigma)]
        m_o = tables.maslov(sigma)
        m_x = maslov_grading(pts, xm, shift=1)
        assert m_o - m_x - (g.n - 1) == tables.alexander(sigma)[0]
