from __future__ import annotations

import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import grids
from gridfloer.mos import GeneratorBudgetError, MosTables, build_mos_complex, enumerate_generators
from gridfloer.reduction import verify_d_squared


def brute_arrows(g):
    """Empty torus rectangles by direct cell scans, counted mod 2."""
    n = g.n
    markers = {(c, g.xs[c]) for c in range(n)} | {(c, g.os[c]) for c in range(n)}
    arrows = Counter()
    for sigma in itertools.permutations(range(n)):
        for c1 in range(n):
            for c2 in range(n):
                if c1 == c2:
                    continue
                w = (c2 - c1) % n
                h = (sigma[c2] - sigma[c1]) % n
                if h == 0:
                    continue
                cells = {((c1 + i) % n, (sigma[c1] + j) % n) for i in range(w) for j in range(h)}
                if cells & markers:
                    continue
                inside = any(0 < (c - c1) % n < w and 0 < (sigma[c] - sigma[c1]) % n < h for c in range(n))
                if inside:
                    continue
                y = list(sigma)
                y[c1], y[c2] = sigma[c2], sigma[c1]
                arrows[(bytes(sigma), bytes(y))] += 1
    return {k for k, v in arrows.items() if v % 2}


@settings(max_examples=50, deadline=None)
@given(grids(2, 5))
def test_rectangles_match_brute_force(g):
    c = build_mos_complex(g, check_gradings=True)
    got = {(c.keys[a], c.keys[b]) for a, b in c.arrows()}
    assert got == brute_arrows(g)


@settings(max_examples=30, deadline=None)
@given(grids(2, 6))
def test_d_squared_and_counts(g):
    c = build_mos_complex(g)
    assert len(c) == math.factorial(g.n)
    assert verify_d_squared(c)


@settings(max_examples=25, deadline=None)
@given(grids(3, 6, knot=True), st.integers(-6, 6), st.integers(0, 4))
def test_window_equals_filtered_enumeration(g, lo, width):
    window = [(lo, lo + width)]
    full = [x for x in enumerate_generators(g) if lo <= x.alexander[0] <= lo + width]
    assert list(enumerate_generators(g, window)) == full


def test_window_complex_is_a_direct_summand(five_two):
    full = build_mos_complex(five_two)
    part = build_mos_complex(five_two, window=[(0, 100)])
    keep = [i for i, (a, _) in full.grading.items() if a[0] >= 0]
    sub = full.subcomplex(keep)
    assert sorted(sub.keys[a] + sub.keys[b] for a, b in sub.arrows()) == \
        sorted(part.keys[a] + part.keys[b] for a, b in part.arrows())


def test_threads_match_sequential(trefoil):
    seq = build_mos_complex(trefoil)
    par = build_mos_complex(trefoil, threads=3)
    assert [seq.keys[i] for i in sorted(seq.keys)] == [par.keys[i] for i in sorted(par.keys)]
    assert seq.arrows() == par.arrows()


def test_unknot_complex(unknot):
    c = build_mos_complex(unknot)
    assert len(c) == 2 and c.arrow_count() == 0


def test_budget_guard(five_two):
    with pytest.raises(GeneratorBudgetError) as info:
        build_mos_complex(five_two, max_generators=1000)
    assert info.value.attempted == 5040
    with pytest.raises(GeneratorBudgetError):
        list(enumerate_generators(five_two, window=[(-100, 100)], max_generators=10))


def test_extreme_alexander_bounds(five_two):
    tables = MosTables.build(five_two)
    lo, hi = tables.search().extreme()
    values = [x.alexander[0] for x in enumerate_generators(five_two)]
    assert (lo[0] + tables.offset[0], hi[0] + tables.offset[0]) == (min(values), max(values))
