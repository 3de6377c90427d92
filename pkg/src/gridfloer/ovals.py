"""Thin ovals around grid segments and the planar generator set they define.

Coordinates use ``SCALE = 8`` units per grid cell: segment lines sit at
``8k + 4`` and every oval is an axis-aligned rectangle of half-width 2.
At a corner of the link the two ovals meeting there get caps of lengths 1
and 3, so one oval pokes into the other without leaving it and the pair
meets in two points, both on a long edge of one oval and a long edge of
the other.  No cap ever meets a cap, so near every intersection point the
horizontal oval runs horizontally and the vertical one vertically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .gradings import alexander_offset, maslov_grading, point_weights
from .grid import GridDiagram, LinkTrace, trace_components
from .poly import PoincarePolynomial
from .raster import Raster
from .search import MatchingSearch

SCALE = 8
HALF_WIDTH = 2
SHORT_CAP = 1
LONG_CAP = 3

Point = tuple[int, int]


class OvalError(ValueError):
    pass


@dataclass(frozen=True)
class Oval:
    kind: str            # "h" or "v"
    line: int            # row for horizontal ovals, column for vertical ones
    rect: tuple[int, int, int, int]

    def contains(self, p: Point) -> bool:
        x0, y0, x1, y1 = self.rect
        return x0 < p[0] < x1 and y0 < p[1] < y1


@dataclass(frozen=True)
class OvalIntersection:
    h_index: int
    v_index: int
    point: Point
    kind: str            # "crossing" or "corner"


@dataclass(frozen=True)
class ShortGenerator:
    points: tuple[Point, ...]          # one per horizontal oval, in oval order
    v_indices: tuple[int, ...]
    alexander: tuple[int, ...]
    maslov: int


@dataclass
class OvalArrangement:
    g: GridDiagram
    trace: LinkTrace
    omit: tuple[int, int]              # (row, column) left without an oval
    length: str
    corner: str
    horizontal: list[Oval]
    vertical: list[Oval]
    intersections: list[OvalIntersection]

    @property
    def size(self) -> int:
        return len(self.horizontal)

    def o_points(self) -> list[Point]:
        return self.g.o_points(SCALE)

    def x_points(self) -> list[Point]:
        return self.g.x_points(SCALE)

    def raster(self) -> Raster:
        n = self.g.n
        r = Raster(SCALE * n + 2, SCALE * n + 2, origin=(-1, -1))
        for k, o in enumerate(self.horizontal + self.vertical):
            r.add_rectangle(k, *o.rect)
        return r

    def by_horizontal(self) -> list[list[OvalIntersection]]:
        out: list[list[OvalIntersection]] = [[] for _ in self.horizontal]
        for p in self.intersections:
            out[p.h_index].append(p)
        return out


def _oval_rects(g: GridDiagram, omit: tuple[int, int], length: str, corner: str):
    n = g.n
    if corner == "vertical-inside":
        cap_h, cap_v = LONG_CAP, SHORT_CAP
    elif corner == "horizontal-inside":
        cap_h, cap_v = SHORT_CAP, LONG_CAP
    else:
        raise ValueError(f"unknown corner rule {corner!r}")
    xs_inv, os_inv = g.xs_inv, g.os_inv
    w = HALF_WIDTH
    horizontal, vertical = [], []
    for r in range(n):
        if r == omit[0]:
            continue
        y = SCALE * r + 4
        if length == "long":
            x0, x1 = 1, SCALE * n - 1
        else:
            a, b = sorted((xs_inv[r], os_inv[r]))
            x0, x1 = SCALE * a + 4 - cap_h, SCALE * b + 4 + cap_h
        horizontal.append(Oval("h", r, (x0, y - w, x1, y + w)))
    for c in range(n):
        if c == omit[1]:
            continue
        x = SCALE * c + 4
        if length == "long":
            y0, y1 = 1, SCALE * n - 1
        else:
            p, q = sorted((g.xs[c], g.os[c]))
            y0, y1 = SCALE * p + 4 - cap_v, SCALE * q + 4 + cap_v
        vertical.append(Oval("v", c, (x - w, y0, x + w, y1)))
    if length not in ("short", "long"):
        raise ValueError(f"unknown oval length {length!r}")
    return horizontal, vertical


def _intersect(h: Oval, v: Oval) -> list[Point]:
    hx0, hy0, hx1, hy1 = h.rect
    vx0, vy0, vx1, vy1 = v.rect
    pts = []
    for y in (hy0, hy1):
        for x in (vx0, vx1):
            if hx0 < x < hx1 and vy0 < y < vy1:
                pts.append((x, y))
            elif (hx0 <= x <= hx1 and vy0 <= y <= vy1) and (x in (hx0, hx1) or y in (vy0, vy1)):
                raise OvalError(f"ovals {h.line}/{v.line} touch at {(x, y)}")
    for x in (hx0, hx1):
        for y in (vy0, vy1):
            if vx0 <= x <= vx1 and hy0 <= y <= hy1:
                raise OvalError(f"caps of ovals {h.line}/{v.line} meet at {(x, y)}")
    return sorted(pts)


def outside_marker(arr: OvalArrangement) -> bool:
    """Does the unbounded region contain an X or an O?"""
    r = arr.raster()
    lab = r.labels()
    outer = r.unbounded_region()
    for x, y in arr.o_points() + arr.x_points():
        if lab[r.cell_at(x, y)] == outer:
            return True
    return False


def _assemble(g: GridDiagram, omit, length, corner) -> OvalArrangement:
    horizontal, vertical = _oval_rects(g, omit, length, corner)
    inter = []
    for hi, h in enumerate(horizontal):
        for vi, v in enumerate(vertical):
            pts = _intersect(h, v)
            if len(pts) not in (0, 2, 4):
                raise OvalError(f"ovals {h.line}/{v.line} meet in {len(pts)} points")
            kind = "crossing" if len(pts) == 4 else "corner"
            inter.extend(OvalIntersection(hi, vi, p, kind) for p in pts)
    return OvalArrangement(g, trace_components(g), omit, length, corner, horizontal, vertical, inter)


def default_omission(g: GridDiagram) -> tuple[int, int]:
    """Row of the topmost O and column of the rightmost O."""
    return g.n - 1, g.n - 1


def build_arrangement(g: GridDiagram, omit: tuple[int, int] | None = None, length: str = "short",
                      corner: str = "vertical-inside") -> OvalArrangement:
    """Ovals around all rows but ``omit[0]`` and all columns but ``omit[1]``.

    Without ``omit`` the default pair is tried first and, if its unbounded
    region holds no marker, the lexicographically first valid pair is used.
    """
    n = g.n
    if n < 2:
        raise OvalError("oval arrangements need n >= 2")
    if omit is not None:
        r0, c0 = omit
        if not (0 <= r0 < n and 0 <= c0 < n):
            raise OvalError(f"omission {omit} is outside the grid")
        arr = _assemble(g, (r0, c0), length, corner)
        if not outside_marker(arr):
            raise OvalError(f"omitting row {r0} and column {c0} leaves no marker outside")
        return arr
    candidates = [default_omission(g)] + [(r, c) for r in range(n) for c in range(n)]
    for r0, c0 in candidates:
        # A marker escapes every oval only if both of its segments are bare.
        if g.xs[c0] != r0 and g.os[c0] != r0:
            continue
        arr = _assemble(g, (r0, c0), length, corner)
        if outside_marker(arr):
            return arr
    raise OvalError("no omission pair leaves a marker in the unbounded region")


def valid_omissions(g: GridDiagram, length: str = "short", corner: str = "vertical-inside") -> list[tuple[int, int]]:
    out = []
    for c0 in range(g.n):
        for r0 in (g.xs[c0], g.os[c0]):
            arr = _assemble(g, (r0, c0), length, corner)
            if outside_marker(arr):
                out.append((r0, c0))
    return sorted(out)


class _ShortTables:
    def __init__(self, arr: OvalArrangement):
        self.arr = arr
        self.by_h = arr.by_horizontal()
        weights = point_weights(arr.g, arr.trace, [p.point for p in arr.intersections], SCALE)
        self.weight = {p.point: w for p, w in zip(arr.intersections, weights)}
        self.offset = alexander_offset(arr.g, arr.trace)
        self.o = arr.o_points()
        self.search = MatchingSearch(
            [[(p.v_index, self.weight[p.point]) for p in opts] for opts in self.by_h],
            arr.trace.component_count,
        )

    def generator(self, choice: Sequence[int]) -> ShortGenerator:
        picked = [self.by_h[k][i] for k, i in enumerate(choice)]
        pts = tuple(p.point for p in picked)
        alex = list(self.offset)
        for p in pts:
            for i, v in enumerate(self.weight[p]):
                alex[i] += v
        return ShortGenerator(pts, tuple(p.v_index for p in picked), tuple(alex),
                              maslov_grading(pts, self.o, shift=0))


def enumerate_short_generators(arr: OvalArrangement, window=None, stats: dict | None = None) -> Iterator[ShortGenerator]:
    """Perfect matchings of horizontal to vertical ovals through intersection points.

    ``window`` is one ``(lo, hi)`` pair of doubled Alexander gradings per
    component.
    """
    tab = _ShortTables(arr)
    shifted = None
    if window is not None:
        shifted = [(lo - off, hi - off) for (lo, hi), off in zip(window, tab.offset)]
    count = 0
    try:
        for choice, _ in tab.search.run(shifted):
            count += 1
            yield tab.generator(choice)
    finally:
        if stats is not None:
            stats["nodes"] = tab.search.nodes
            stats["generators"] = count


def short_census(arr: OvalArrangement, window=None) -> PoincarePolynomial:
    """Generator counts per (doubled Alexander, Maslov); ``.euler()`` gives the polynomial."""
    return PoincarePolynomial(((x.alexander, x.maslov), 1) for x in enumerate_short_generators(arr, window))
