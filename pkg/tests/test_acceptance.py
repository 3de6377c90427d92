"""Acceptance gate: one test per criterion, tolerances pinned at the top.

Expected tables are frozen literals.  The Alexander polynomials below were
produced by the winding-determinant oracle before any homology code ran.
"""

from __future__ import annotations

import random
import time

from conftest import data_grid, random_grid
from gridfloer import domains as D
from gridfloer.grid import trace_components, transpose
from gridfloer.invariants import ComputeConfig, compute_hfk
from gridfloer.mos import MosTables, build_mos_complex, empty_rectangles
from gridfloer.oracle import alexander_by_determinant, expected_euler
from gridfloer.ovals import build_arrangement, short_census
from gridfloer.poly import Laurent, PoincarePolynomial
from gridfloer.reduction import (divide_v_factors, homology_by_rank, random_complex, reduce_to_homology,
                                 verify_d_squared)

UNKNOT_SECONDS = 0.1
TREFOIL_SECONDS = 1.0
FIVE_TWO_SECONDS = 10.0
PROPERTY_SECONDS = 300.0
SCALE_SECONDS = 600.0
SCALE_BUDGET = 10 ** 7
SCALE_THREADS = 8

DELTA = {
    "unknot": Laurent.from_coefficients({0: 1}),
    "trefoil": Laurent.from_coefficients({1: 1, 0: -1, -1: 1}),
    "trefoil_mirror": Laurent.from_coefficients({1: 1, 0: -1, -1: 1}),
    "5_2": Laurent.from_coefficients({1: 2, 0: -3, -1: 2}),
    "5_2_alt": Laurent.from_coefficients({1: 2, 0: -3, -1: 2}),
    "5_2_n10": Laurent.from_coefficients({1: 2, 0: -3, -1: 2}),
}
FIVE_TWO_TABLE = {(1, 2): 2, (0, 1): 3, (-1, 0): 2}
CENSUS_OMISSION = (0, 4)     # 0-based (row, column); "--omit 1,5" on the command line


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def test_criterion_1_unknot():
    g = data_grid("unknot")
    r, seconds = timed(lambda: compute_hfk(g))
    assert r.table.as_plain() == {(0, 0): 1}
    assert r.alexander_poly == DELTA["unknot"]
    assert (r.genus, r.fibered) == (0, True)
    assert seconds < UNKNOT_SECONDS


def test_criterion_2_trefoil():
    g = data_grid("trefoil")
    assert alexander_by_determinant(g) == DELTA["trefoil"]
    r, seconds = timed(lambda: compute_hfk(g))
    assert r.stats["generators"] == 120
    assert r.table.total_rank() == 3
    assert (r.genus, r.fibered, r.symmetric) == (1, True, True)
    assert seconds < TREFOIL_SECONDS


def test_criterion_3_five_two():
    g = data_grid("5_2")
    assert alexander_by_determinant(g) == DELTA["5_2"]
    r, seconds = timed(lambda: compute_hfk(g, ComputeConfig(threads=1)))
    # The input diagram itself matches; its transpose matches as well.
    assert r.table.as_plain() == FIVE_TWO_TABLE
    assert compute_hfk(transpose(g)).table.as_plain() == FIVE_TWO_TABLE
    assert r.alexander_poly == DELTA["5_2"]
    assert (r.genus, r.fibered) == (1, False)
    assert seconds < FIVE_TWO_SECONDS


def test_criterion_4_short_census_of_five_two():
    g = data_grid("5_2")
    census = short_census(build_arrangement(g, omit=CENSUS_OMISSION))
    upper = census.restrict(0, 10 ** 6)
    assert census.at_alexander((2,)) == {2: 2}
    assert sum(census.at_alexander((0,)).values()) == 15
    tilde = reduce_to_homology(build_mos_complex(g, window=[(0, 10 ** 6)]))
    assert tilde == upper


def test_criterion_5_euler_identity():
    names = ["unknot", "trefoil", "trefoil_mirror", "5_2", "5_2_alt", "5_2_n10"]
    rng = random.Random(2024)
    diagrams = [(name, data_grid(name)) for name in names]
    diagrams += [(f"random-{k}", random_grid(rng, rng.randrange(2, 7), knot=True)) for k in range(20)]
    for name, g in diagrams:
        delta = DELTA.get(name) or alexander_by_determinant(g)
        expected = expected_euler(delta, g.n)
        census = short_census(build_arrangement(g)).euler()
        assert census == expected, name
        if g.n <= 7:
            assert build_mos_complex(g).census().euler() == expected, name


def test_criterion_6_property_suite():
    start = time.perf_counter()
    rng = random.Random(6)
    for k in range(100):
        g = random_grid(rng, rng.randrange(2, 7))
        c = build_mos_complex(g)
        assert verify_d_squared(c)
        h = reduce_to_homology(c)
        assert h == homology_by_rank(c)
        for _ in range(20):
            assert reduce_to_homology(c, rng) == h
        table = divide_v_factors(h, trace_components(g))
        if trace_components(g).component_count == 1:
            assert table == table.symmetry_image()
    for k in range(100):
        c, expected = random_complex(rng, rng.randrange(1, 201))
        h = reduce_to_homology(c)
        assert h == homology_by_rank(c) == expected
        for _ in range(20):
            assert reduce_to_homology(c, rng) == expected
    assert time.perf_counter() - start < PROPERTY_SECONDS


def test_criterion_7_domain_layer():
    rng = random.Random(7)
    diagrams = [data_grid(n) for n in ("unknot", "trefoil", "trefoil_mirror")]
    diagrams += [random_grid(rng, rng.randrange(2, 6)) for _ in range(12)]
    for g in diagrams:
        decomp = D.torus_regions(g)
        tables = MosTables.build(g)
        for key in build_mos_complex(g).keys.values():
            sigma = tuple(key)
            x = D.mos_points(sigma)
            for y, rect in empty_rectangles(sigma, tables):
                yp = D.mos_points(y)
                found = D.domains_between(x, yp, decomp, cap=1, in_d_only=True)
                assert any(D.in_class_D(d) and D.maslov_index(d) == 4 for d in found)
                assert D.maslov_index(D.rectangle_domain(decomp, rect.cells(), x, yp)) == 4
    for name in ("trefoil", "5_2"):
        for length in ("short", "long"):
            decomp = D.decompose_regions(build_arrangement(data_grid(name), length=length))
            for r in range(decomp.count):
                d = D.region_domain(decomp, r)
                if len(d.source) == len(d.target) == 1:
                    assert D.maslov_index(d) == 4
    pairs = 0
    while pairs < 50:
        g = random_grid(rng, rng.randrange(3, 6))
        decomp = D.torus_regions(g)
        tables = MosTables.build(g)
        sigma = list(range(g.n))
        rng.shuffle(sigma)
        first = empty_rectangles(sigma, tables)
        if not first:
            continue
        y, r1 = rng.choice(first)
        second = empty_rectangles(y, tables)
        if not second:
            continue
        z, r2 = rng.choice(second)
        d1 = D.rectangle_domain(decomp, r1.cells(), D.mos_points(sigma), D.mos_points(y))
        d2 = D.rectangle_domain(decomp, r2.cells(), D.mos_points(y), D.mos_points(z))
        assert D.maslov_index(d1 + d2) == D.maslov_index(d1) + D.maslov_index(d2) == 8
        pairs += 1


def test_criterion_8_windowed_scale():
    g = data_grid("5_2_n10")
    assert g.n == 10
    # Top two Alexander gradings of the stabilised 5_2: A = 1 and A = 0.
    cfg = ComputeConfig(window=(0, 2), threads=SCALE_THREADS, max_generators=SCALE_BUDGET)
    r, seconds = timed(lambda: compute_hfk(g, cfg))
    assert r.stats["generators"] < SCALE_BUDGET
    assert r.table == PoincarePolynomial({((2,), 2): 2, ((0,), 1): 3})
    assert (r.genus, r.fibered) == (1, False)
    assert seconds < SCALE_SECONDS
