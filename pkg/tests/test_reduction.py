from __future__ import annotations

import io
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import grids
from gridfloer.mos import build_mos_complex
from gridfloer.reduction import (BigradedComplex, ComplexError, cancel_pair, d_squared_defects, gf2_rank,
                                 grading_violations, homology_by_rank, random_complex, read_complex,
                                 reduce_to_homology, verify_d_squared, write_complex)


def test_zero_differential_gives_the_census():
    c = BigradedComplex([((0,), 0), ((-2,), -1)])
    assert reduce_to_homology(c) == c.census() == homology_by_rank(c)


def test_single_arrow_cancels():
    c = BigradedComplex([((0,), 1), ((0,), 0), ((0,), 0)], arrows=[(0, 1)])
    assert reduce_to_homology(c) == {((0,), 0): 1}


def test_zigzag_mid_reduction():
    # a -> b, a -> c, d -> c : cancelling a/b rewires d -> ... nothing, then d/c.
    c = BigradedComplex([((0,), 1), ((0,), 0), ((0,), 0), ((0,), 1)], arrows=[(0, 1), (0, 2), (3, 2)])
    assert reduce_to_homology(c).total_rank() == 0
    after = cancel_pair(c, 0, 1)
    assert len(after) == 2 and after.arrows() == [(3, 2)]


def test_cancel_pair_checks_its_input():
    c = BigradedComplex([((0,), 1), ((0,), 0)])
    with pytest.raises(ComplexError):
        cancel_pair(c, 0, 1)


def test_gf2_rank():
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
    assert gf2_rank([]) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 200))
def test_synthetic_complexes(seed, size):
    rng = random.Random(seed)
    c, expected = random_complex(rng, size)
    assert verify_d_squared(c) and not grading_violations(c)
    assert reduce_to_homology(c) == expected == homology_by_rank(c)
    assert reduce_to_homology(c, random.Random(seed + 1)) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 120))
def test_cancel_pair_keeps_euler_and_drops_two(seed, size):
    c, _ = random_complex(random.Random(seed), size)
    arrows = c.arrows()
    if not arrows:
        return
    x, y = arrows[0]
    after = cancel_pair(c, x, y)
    assert len(after) == len(c) - 2
    assert after.census().euler() == c.census().euler()
    assert verify_d_squared(after)


def test_d_squared_defects_detect_a_broken_square():
    c = BigradedComplex([((0,), 2), ((0,), 1), ((0,), 0)], arrows=[(0, 1), (1, 2)])
    assert d_squared_defects(c) == [(0, 2)]
    assert not verify_d_squared(c)


@settings(max_examples=20, deadline=None)
@given(grids(2, 5))
def test_interchange_roundtrip(g):
    c = build_mos_complex(g)
    buf = io.StringIO()
    write_complex(c, buf)
    back = read_complex(io.StringIO(buf.getvalue()))
    assert back.grading == c.grading and back.arrows() == c.arrows()


@pytest.mark.parametrize("text, where", [
    ("gen 0 A=0 M=0\ngen 0 A=0 M=1\n", "line 2"),
    ("gen 0 A=0 M=0\narrow 0 1\n", "line 2"),
    ("gen 0 A=x M=0\n", "line 1"),
    ("node 0\n", "line 1"),
])
def test_interchange_errors_carry_line_numbers(text, where):
    with pytest.raises(ComplexError, match=where):
        read_complex(io.StringIO(text))
