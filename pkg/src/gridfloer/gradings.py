"""Pair counts and the Maslov/Alexander gradings of planar point sets.

Half-integers are kept doubled: :func:`pair_J` returns ``2 J`` and
Alexander vectors hold ``2 A_i`` per component.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import groupby
from typing import Iterable, Sequence

from .grid import GridDiagram, LinkTrace, corner_sum, winding_at, winding_field

Point = tuple[int, int]


class GradingError(ArithmeticError):
    """A grading formula produced a non-integral value."""


class _Fenwick:
    def __init__(self, size: int):
        self.tree = [0] * (size + 1)

    def add(self, i: int) -> None:
        i += 1
        while i < len(self.tree):
            self.tree[i] += 1
            i += i & -i

    def prefix(self, i: int) -> int:
        """Number of inserted indices < i."""
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & -i
        return total


def count_I(a: Iterable[Point], b: Iterable[Point]) -> int:
    """Number of pairs (p, q) in a x b with p strictly south-west of q."""
    a, b = list(a), list(b)
    if not a or not b:
        return 0
    ys = sorted({p[1] for p in a})
    tree = _Fenwick(len(ys))
    events = sorted([(p[0], 1, p[1]) for p in a] + [(q[0], 0, q[1]) for q in b])
    total = 0
    # Within one x value queries (kind 0) run before inserts (kind 1), so
    # equal x never counts.
    for _, group in groupby(events, key=lambda e: e[0]):
        for _, kind, y in group:
            if kind == 0:
                total += tree.prefix(bisect_left(ys, y))
            else:
                tree.add(bisect_left(ys, y))
    return total


def pair_J(a: Sequence[Point], b: Sequence[Point]) -> int:
    """Doubled J(a, b) = I(a, b) + I(b, a)."""
    return count_I(a, b) + count_I(b, a)


def maslov_grading(x: Sequence[Point], o: Sequence[Point], shift: int = 0) -> int:
    """J(x,x) - 2 J(x,O) + J(O,O) + shift."""
    doubled = pair_J(x, x) - 2 * pair_J(x, o) + pair_J(o, o)
    if doubled % 2:
        raise GradingError(f"Maslov grading {doubled}/2 is not an integer")
    return doubled // 2 + shift


def alexander_offset(g: GridDiagram, t: LinkTrace) -> tuple[int, ...]:
    """Doubled constant part: -(1/8) corner sum - (n_i - 1)/2, per component."""
    corners = corner_sum(g, winding_field(g, t))
    out = []
    for i, s in enumerate(corners):
        if s % 4:
            raise GradingError(f"corner sum {s} of component {i} is not divisible by 4")
        out.append(-(s // 4) - (t.complexities[i] - 1))
    return tuple(out)


def point_weights(g: GridDiagram, t: LinkTrace, points: Iterable[Point], scale: int) -> list[tuple[int, ...]]:
    """Doubled per-point Alexander contribution 2 a(p), with a = -winding."""
    return [tuple(-2 * w for w in winding_at(g, t, p, scale)) for p in points]


def alexander_grading(x: Sequence[Point], g: GridDiagram, t: LinkTrace, scale: int = 2,
                      offset: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """Doubled Alexander vector of the point set ``x`` (given at ``scale``)."""
    if offset is None:
        offset = alexander_offset(g, t)
    total = list(offset)
    for w in point_weights(g, t, x, scale):
        for i, wi in enumerate(w):
            total[i] += wi
    return tuple(total)


def alexander_by_pairing(x: Sequence[Point], g: GridDiagram, t: LinkTrace, scale: int = 2) -> tuple[int, ...]:
    """Doubled Alexander vector from J(x - (X+O)/2, X_i - O_i) - (n_i - 1)/2.

    Independent of winding numbers; used to cross-check
    :func:`alexander_grading`.
    """
    xs, os_ = g.x_points(scale), g.o_points(scale)
    out = []
    for i in range(t.component_count):
        xi = [p for c, p in enumerate(xs) if t.column_component[c] == i]
        oi = [p for c, p in enumerate(os_) if t.column_component[c] == i]
        # 4 * (J(x, Xi - Oi) - J((X + O)/2, Xi - Oi)) in doubled-J units.
        quad = 2 * (pair_J(x, xi) - pair_J(x, oi))
        quad -= pair_J(xs, xi) - pair_J(xs, oi) + pair_J(os_, xi) - pair_J(os_, oi)
        quad -= 2 * (t.complexities[i] - 1)
        if quad % 2:
            raise GradingError("pairing Alexander grading is not a half-integer")
        out.append(quad // 2)
    return tuple(out)
