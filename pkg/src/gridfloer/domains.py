"""Domains in curve arrangements: Euler measure, Maslov index, cuts, decompositions.

Regions come from a :class:`~gridfloer.raster.Raster` flood fill.  Two
arrangements are supported: the planar oval arrangement (regions on the
sphere, so the unbounded region gains the point at infinity) and the torus
grid of the MOS complex, where every cell is a region.

Euler measure is region additive: a region with Euler characteristic chi
and k corners (intersection points on its boundary) contributes
``chi - k/4``.  Corner multiplicities are quadrant averages.  Everything
is kept quadrupled so the arithmetic stays integral.

A domain ``D`` from ``x`` to ``y`` satisfies, at every intersection point
``p`` with quadrant multiplicities NE, NW, SW, SE::

    (NE + SW) - (NW + SE) = [p in x] - [p in y]

which says that its boundary runs from ``x`` to ``y`` along horizontal
curves and back along vertical ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .grid import GridDiagram
from .ovals import OvalArrangement
from .raster import Raster
from .search import MatchingSearch

Point = tuple[int, int]
QUADRANT_SIGN = (1, -1, 1, -1)  # NE, NW, SW, SE


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    point: Point
    h_curve: int
    v_curve: int
    quadrants: tuple[int, int, int, int]   # region ids NE, NW, SW, SE


class RegionDecomposition:
    """Regions of a rasterised arrangement with their corner and marker data."""

    def __init__(self, raster: Raster, vertices: Sequence[tuple[Point, int, int]],
                 markers: Sequence[tuple[Point, str]], h_curves: Sequence[int], v_curves: Sequence[int]):
        self.raster = raster
        self.labels = raster.labels()
        self.count = raster.region_count()
        self.periodic = raster.periodic
        self.h_curves = list(h_curves)
        self.v_curves = list(v_curves)
        self.outer = raster.unbounded_region()
        self.vertices: list[Vertex] = []
        self.vertex_at: dict[Point, int] = {}
        for p, h, v in vertices:
            quads = tuple(self.region_of_cell(c) for c in self._quadrant_cells(p))
            self.vertex_at[p] = len(self.vertices)
            self.vertices.append(Vertex(p, h, v, quads))
        self.markers = [(p, kind, self.region_of_cell(self._cell_ne(p))) for p, kind in markers]
        self.marker_regions = frozenset(r for _, _, r in self.markers)
        self.chi = self._euler_characteristics()
        corners = [0] * self.count
        for v in self.vertices:
            for r in v.quadrants:
                corners[r] += 1
        self.corners = corners
        self.euler4 = [4 * c - k for c, k in zip(self.chi, corners)]
        self.adjacent = self._adjacency()
        self.curve_edges = self._curve_edges()

    # -- raster helpers ------------------------------------------------------
    def rel(self, p: Point) -> tuple[int, int]:
        return p[0] - self.raster.ox, p[1] - self.raster.oy

    def _cell_ne(self, p: Point):
        i, j = self.rel(p)
        return self.raster.cell_index(i, j)

    def _quadrant_cells(self, p: Point):
        i, j = self.rel(p)
        return self.raster.quadrant_cells(i, j)

    def region_of_cell(self, cell: int | None) -> int:
        if cell is None:
            if self.outer is None:
                raise DomainError("cell outside a periodic raster")
            return self.outer
        return self.labels[cell]

    def region_at(self, i: int, j: int) -> int:
        """Region of the cell with lower-left vertex (i, j), raster-relative."""
        return self.region_of_cell(self.raster.cell_index(i, j))

    def _euler_characteristics(self) -> list[int]:
        r = self.raster
        w, h = r.width, r.height
        chi = [0] * self.count
        for lab in self.labels:
            chi[lab] += 1
        for j in range(h):
            for i in range(w):
                lab = self.labels[j * w + i]
                # Edge to the east neighbour and to the north neighbour.
                if (r.periodic or i + 1 < w) and r.v_curve(i + 1, j) < 0:
                    chi[lab] -= 1
                if (r.periodic or j + 1 < h) and r.h_curve(i, j + 1) < 0:
                    chi[lab] -= 1
                # Vertex at the north-east corner of this cell.
                vi, vj = i + 1, j + 1
                if not r.periodic and (vi >= w or vj >= h):
                    continue
                if (r.h_curve(vi - 1, vj) < 0 and r.h_curve(vi, vj) < 0
                        and r.v_curve(vi, vj - 1) < 0 and r.v_curve(vi, vj) < 0):
                    chi[lab] += 1
        if self.outer is not None:
            chi[self.outer] += 1
        return chi

    def _adjacency(self) -> list[set[int]]:
        r = self.raster
        adj: list[set[int]] = [set() for _ in range(self.count)]
        for j in range(r.height):
            for i in range(r.width):
                a = self.labels[j * r.width + i]
                for di, dj in ((1, 0), (0, 1)):
                    nb = r.cell_index(i + di, j + dj)
                    if nb is None:
                        continue
                    b = self.labels[nb]
                    if a != b:
                        adj[a].add(b)
                        adj[b].add(a)
        return adj

    def _curve_edges(self) -> dict[int, frozenset]:
        r = self.raster
        edges: dict[int, set] = {}
        for j in range(r.height + (0 if r.periodic else 1)):
            for i in range(r.width):
                k = r.h_curve(i, j)
                if k >= 0:
                    edges.setdefault(k, set()).add(("h", i, j))
        for j in range(r.height):
            for i in range(r.width + (0 if r.periodic else 1)):
                k = r.v_curve(i, j)
                if k >= 0:
                    edges.setdefault(k, set()).add(("v", i, j))
        return {k: frozenset(v) for k, v in edges.items()}

    # -- constraint data --------------------------------------------------------
    def corner_rows(self) -> list[dict[int, int]]:
        """Per vertex, the net quadrant coefficients over regions."""
        rows = []
        for v in self.vertices:
            row: dict[int, int] = {}
            for r, s in zip(v.quadrants, QUADRANT_SIGN):
                row[r] = row.get(r, 0) + s
            rows.append({r: c for r, c in row.items() if c})
        return rows


def decompose_regions(arr: OvalArrangement) -> RegionDecomposition:
    """Regions of a planar oval arrangement; curve ids are horizontal ovals first."""
    raster = arr.raster()
    k = len(arr.horizontal)
    vertices = [(p.point, p.h_index, k + p.v_index) for p in arr.intersections]
    markers = [(p, "O") for p in arr.o_points()] + [(p, "X") for p in arr.x_points()]
    return RegionDecomposition(raster, vertices, markers, range(k), range(k, 2 * k))


def torus_regions(g: GridDiagram) -> RegionDecomposition:
    """The n x n torus grid: circle j is the row line y = j, circle n + i the column line x = i."""
    n = g.n
    raster = Raster(n, n, periodic=True)
    for j in range(n):
        raster.add_hsegment(j, 0, n, j)
    for i in range(n):
        raster.add_vsegment(n + i, i, 0, n)
    vertices = [((i, j), j, n + i) for i in range(n) for j in range(n)]
    # A marker is a cell; its lower-left vertex names that cell.
    markers = [((c, g.os[c]), "O") for c in range(n)] + [((c, g.xs[c]), "X") for c in range(n)]
    return RegionDecomposition(raster, vertices, markers, range(n), range(n, 2 * n))


def mos_points(sigma: Sequence[int]) -> frozenset:
    """Torus-grid vertices of a MOS generator."""
    return frozenset((c, r) for c, r in enumerate(sigma))


@dataclass(frozen=True)
class Domain:
    decomp: RegionDecomposition = field(repr=False, compare=False, hash=False)
    mult: tuple[int, ...]
    source: frozenset
    target: frozenset

    def support(self) -> set[int]:
        return {r for r, m in enumerate(self.mult) if m}

    def corner4(self, p: Point) -> int:
        """Four times the local multiplicity at the vertex ``p``."""
        v = self.decomp.vertices[self.decomp.vertex_at[p]]
        return sum(self.mult[r] for r in v.quadrants)

    def __add__(self, other: "Domain") -> "Domain":
        """Composition: ``self`` runs x -> y and ``other`` y -> z."""
        if self.target != other.source:
            raise DomainError("domains are not composable")
        return Domain(self.decomp, tuple(a + b for a, b in zip(self.mult, other.mult)), self.source, other.target)


def boundary_defects(d: Domain) -> list[Point]:
    """Vertices where the corner condition for source -> target fails."""
    bad = []
    for v, row in zip(d.decomp.vertices, d.decomp.corner_rows()):
        lhs = sum(c * d.mult[r] for r, c in row.items())
        rhs = (v.point in d.source) - (v.point in d.target)
        if lhs != rhs:
            bad.append(v.point)
    return bad


def is_connected(d: Domain) -> bool:
    supp = d.support()
    if not supp:
        return True
    start = min(supp)
    seen = {start}
    queue = deque([start])
    while queue:
        r = queue.popleft()
        for s in d.decomp.adjacent[r]:
            if s in supp and s not in seen:
                seen.add(s)
                queue.append(s)
    return seen == supp


def in_class_D(d: Domain) -> bool:
    """Nonnegative, connected, no marker and no generator corner in the interior."""
    if any(m < 0 for m in d.mult) or not is_connected(d):
        return False
    if any(d.mult[r] for r in d.decomp.marker_regions):
        return False
    for p in d.source | d.target:
        v = d.decomp.vertices[d.decomp.vertex_at[p]]
        if all(d.mult[r] > 0 for r in v.quadrants):
            return False
    return True


def euler_measure(d: Domain) -> int:
    """Quadrupled Euler measure."""
    return sum(m * e for m, e in zip(d.mult, d.decomp.euler4))


def maslov_index(d: Domain) -> int:
    """Quadrupled index e(D) + n_x(D) + n_y(D)."""
    return euler_measure(d) + sum(d.corner4(p) for p in d.source) + sum(d.corner4(p) for p in d.target)


def marker_count(d: Domain, kind: str) -> int:
    return sum(d.mult[r] for _, k, r in d.decomp.markers if k == kind)


def domain_from_multiplicities(decomp: RegionDecomposition, mult: Sequence[int]) -> Domain:
    """Read source and target corners off the corner condition of ``mult``."""
    source, target = set(), set()
    for v, row in zip(decomp.vertices, decomp.corner_rows()):
        s = sum(c * mult[r] for r, c in row.items())
        if s == 1:
            source.add(v.point)
        elif s == -1:
            target.add(v.point)
        elif s:
            raise DomainError(f"corner value {s} at {v.point}")
    return Domain(decomp, tuple(mult), frozenset(source), frozenset(target))


def region_domain(decomp: RegionDecomposition, region: int) -> Domain:
    mult = [0] * decomp.count
    mult[region] = 1
    return domain_from_multiplicities(decomp, mult)


def rectangle_domain(decomp: RegionDecomposition, cells: Iterable[tuple[int, int]],
                     source: Iterable[Point], target: Iterable[Point]) -> Domain:
    mult = [0] * decomp.count
    for i, j in cells:
        mult[decomp.region_at(i, j)] += 1
    return Domain(decomp, tuple(mult), frozenset(source), frozenset(target))


# -- solving the corner system ------------------------------------------------------
def _solve(decomp: RegionDecomposition, rhs: list[int], upper: list[int], limit: int | None):
    """All integer vectors 0 <= m <= upper meeting the corner rows; DFS with propagation."""
    rows = decomp.corner_rows()
    nv = decomp.count
    var_rows: list[list[int]] = [[] for _ in range(nv)]
    for k, row in enumerate(rows):
        for r in row:
            var_rows[r].append(k)
    partial = [0] * len(rows)
    open_count = [len(row) for row in rows]
    for k, row in enumerate(rows):
        if not row and rhs[k]:
            return []
    value: list[int | None] = [None] * nv
    trail: list[int] = []

    def assign(v: int, val: int) -> bool:
        value[v] = val
        trail.append(v)
        ok = True
        for k in var_rows[v]:
            partial[k] += rows[k][v] * val
            open_count[k] -= 1
        for k in var_rows[v]:
            if open_count[k] == 0 and partial[k] != rhs[k]:
                ok = False
        return ok

    def undo(mark: int) -> None:
        while len(trail) > mark:
            v = trail.pop()
            for k in var_rows[v]:
                partial[k] -= rows[k][v] * value[v]
                open_count[k] += 1
            value[v] = None

    def propagate(seed: int) -> bool:
        queue = deque(var_rows[seed])
        while queue:
            k = queue.popleft()
            if open_count[k] != 1:
                continue
            u = next(r for r in rows[k] if value[r] is None)
            coef = rows[k][u]
            need = rhs[k] - partial[k]
            if need % coef:
                return False
            val = need // coef
            if not 0 <= val <= upper[u]:
                return False
            if not assign(u, val):
                return False
            queue.extend(var_rows[u])
        return True

    # Visit regions breadth-first through adjacency so constraints close early.
    order: list[int] = []
    seen = [False] * nv
    for start in range(nv):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            r = queue.popleft()
            order.append(r)
            for s in sorted(decomp.adjacent[r]):
                if not seen[s]:
                    seen[s] = True
                    queue.append(s)

    solutions: list[tuple[int, ...]] = []

    def dfs(pos: int) -> bool:
        while pos < nv and value[order[pos]] is not None:
            pos += 1
        if pos == nv:
            solutions.append(tuple(value))  # type: ignore[arg-type]
            return limit is not None and len(solutions) >= limit
        v = order[pos]
        for val in range(upper[v] + 1):
            mark = len(trail)
            if assign(v, val) and propagate(v):
                if dfs(pos + 1):
                    return True
            undo(mark)
        return False

    dfs(0)
    return solutions


def domains_between(x: Iterable[Point], y: Iterable[Point], decomp: RegionDecomposition, cap: int = 1,
                    in_d_only: bool = False, limit: int | None = None) -> list[Domain]:
    """Connected domains from ``x`` to ``y`` with multiplicities at most ``cap``.

    With ``in_d_only`` marker regions are pinned to zero during the search
    and only members of the class D are returned.
    """
    x, y = frozenset(x), frozenset(y)
    for p in x | y:
        if p not in decomp.vertex_at:
            raise DomainError(f"{p} is not an intersection point")
    rhs = [(v.point in x) - (v.point in y) for v in decomp.vertices]
    upper = [cap] * decomp.count
    if in_d_only:
        for r in decomp.marker_regions:
            upper[r] = 0
    out = []
    for mult in _solve(decomp, rhs, upper, limit):
        d = Domain(decomp, mult, x, y)
        if not is_connected(d):
            continue
        if in_d_only and not in_class_D(d):
            continue
        out.append(d)
    return out


# -- cuts and boundary components ---------------------------------------------------
_DIRS = {"E": (1, 0), "W": (-1, 0), "N": (0, 1), "S": (0, -1)}


def _edge(decomp: RegionDecomposition, i: int, j: int, direction: str):
    """(curve, side-a region, side-b region, key) for the edge leaving (i, j)."""
    r = decomp.raster
    if direction == "E":
        return r.h_curve(i, j), decomp.region_at(i, j), decomp.region_at(i, j - 1), ("h", i, j)
    if direction == "W":
        return r.h_curve(i - 1, j), decomp.region_at(i - 1, j), decomp.region_at(i - 1, j - 1), ("h", i - 1, j)
    if direction == "N":
        return r.v_curve(i, j), decomp.region_at(i - 1, j), decomp.region_at(i, j), ("v", i, j)
    return r.v_curve(i, j - 1), decomp.region_at(i - 1, j - 1), decomp.region_at(i, j - 1), ("v", i, j - 1)


_BACK = {"E": "W", "W": "E", "N": "S", "S": "N"}


@dataclass(frozen=True)
class Cut:
    curve: int
    start: Point
    direction: str
    end: Point
    path: tuple[Point, ...]


@dataclass(frozen=True)
class CutReport:
    cuts: tuple[Cut, ...]
    intersecting: bool


def _quadrant_mults(d: Domain, p: Point) -> tuple[int, int, int, int]:
    v = d.decomp.vertices[d.decomp.vertex_at[p]]
    return tuple(d.mult[r] for r in v.quadrants)  # type: ignore[return-value]


def corner_type(d: Domain, p: Point) -> str:
    """acute, straight, pinch, obtuse, interior or absent, from the covered quadrants."""
    q = [m > 0 for m in _quadrant_mults(d, p)]
    k = sum(q)
    if k == 0:
        return "absent"
    if k == 1:
        return "acute"
    if k == 2:
        return "straight" if q[0] == q[1] or q[1] == q[2] else "pinch"
    return "obtuse" if k == 3 else "interior"


def _norm(decomp: RegionDecomposition, i: int, j: int) -> tuple[int, int]:
    r = decomp.raster
    return (i % r.width, j % r.height) if r.periodic else (i, j)


def _on_boundary(d: Domain, i: int, j: int) -> bool:
    for direction in "ENWS":
        curve, a, b, _ = _edge(d.decomp, i, j, direction)
        if curve >= 0 and d.mult[a] != d.mult[b]:
            return True
    return False


def find_cuts(d: Domain) -> CutReport:
    """Cuts from obtuse (two each) and straight (one each) corners along their curves."""
    decomp = d.decomp
    ox, oy = decomp.raster.ox, decomp.raster.oy
    cuts = []
    for p in sorted(d.source | d.target):
        kind = corner_type(d, p)
        if kind not in ("obtuse", "straight"):
            continue
        i0, j0 = decomp.rel(p)
        for direction in "ENWS":
            curve, a, b, _ = _edge(decomp, i0, j0, direction)
            if curve < 0 or not (d.mult[a] > 0 and d.mult[a] == d.mult[b]):
                continue
            path = [p]
            i, j, heading = i0, j0, direction
            limit = decomp.raster.width * decomp.raster.height * 4
            for _ in range(limit):
                di, dj = _DIRS[heading]
                i, j = _norm(decomp, i + di, j + dj)
                path.append((i + ox, j + oy))
                if (i, j) == _norm(decomp, i0, j0) or _on_boundary(d, i, j):
                    break
                nxt = [h for h in "ENWS" if h != _BACK[heading] and _edge(decomp, i, j, h)[0] == curve]
                if not nxt:
                    break
                heading = nxt[0]
            cuts.append(Cut(curve, p, direction, path[-1], tuple(path)))
    inner = [set(c.path[1:-1]) for c in cuts]
    crossing = any(inner[a] & (inner[b] | {cuts[b].start}) or inner[b] & {cuts[a].start}
                   for a in range(len(cuts)) for b in range(a + 1, len(cuts)))
    return CutReport(tuple(cuts), crossing)


@dataclass(frozen=True)
class BoundaryComponent:
    vertices: frozenset
    edges: frozenset
    outer: bool
    special: bool
    bad: bool
    obtuse: int
    straight: int
    acute: int


def classify_boundary(d: Domain) -> list[BoundaryComponent]:
    """Boundary components of ``d`` (edges where the multiplicity jumps)."""
    decomp = d.decomp
    r = decomp.raster
    ox, oy = r.ox, r.oy
    edges = []
    for k, keys in decomp.curve_edges.items():
        for key in keys:
            kind, i, j = key
            if kind == "h":
                a, b = decomp.region_at(i, j), decomp.region_at(i, j - 1)
                ends = ((i, j), _norm(decomp, i + 1, j))
            else:
                a, b = decomp.region_at(i - 1, j), decomp.region_at(i, j)
                ends = ((i, j), _norm(decomp, i, j + 1))
            if d.mult[a] != d.mult[b]:
                edges.append((key, ends))
    graph: dict[tuple[int, int], list[int]] = {}
    for idx, (_, (u, v)) in enumerate(edges):
        graph.setdefault(u, []).append(idx)
        graph.setdefault(v, []).append(idx)
    comp_of = [-1] * len(edges)
    comps = []
    for start in range(len(edges)):
        if comp_of[start] >= 0:
            continue
        cid = len(comps)
        comp_of[start] = cid
        queue = deque([start])
        verts, ekeys = set(), set()
        while queue:
            e = queue.popleft()
            key, (u, v) = edges[e]
            ekeys.add(key)
            for w in (u, v):
                verts.add(w)
                for f in graph[w]:
                    if comp_of[f] < 0:
                        comp_of[f] = cid
                        queue.append(f)
        comps.append((frozenset(verts), frozenset(ekeys)))
    if not comps:
        return []
    outer_vertex = min(v for verts, _ in comps for v in verts)
    corners = {decomp.rel(p): (p, corner_type(d, p)) for p in d.source | d.target}
    common = {decomp.rel(p) for p in d.source & d.target}
    curve_sets = set(decomp.curve_edges.values())
    out = []
    for verts, ekeys in comps:
        kinds = [corners[v][1] for v in verts if v in corners]
        outer = outer_vertex in verts
        obtuse = kinds.count("obtuse")
        special = ekeys in curve_sets and bool(verts & common)
        out.append(BoundaryComponent(
            frozenset((i + ox, j + oy) for i, j in verts), ekeys, outer, special,
            (not outer) and obtuse == 0, obtuse, kinds.count("straight"), kinds.count("acute"),
        ))
    out.sort(key=lambda c: (not c.outer, min(c.vertices)))
    return out


# -- decomposability -------------------------------------------------------------------
@dataclass(frozen=True)
class Decomposition:
    decomposable: bool | None          # None: search budget exhausted
    first: Domain | None = None
    second: Domain | None = None
    explored: int = 0


def _intermediate_generators(d: Domain, budget: int):
    """Generators agreeing with the source away from the closure of the support."""
    decomp = d.decomp
    supp = d.support()
    x_on_h = {decomp.vertices[decomp.vertex_at[p]].h_curve: p for p in d.source}
    v_index = {v: k for k, v in enumerate(decomp.v_curves)}
    options = []
    for h in decomp.h_curves:
        opts = []
        for vert in decomp.vertices:
            if vert.h_curve != h:
                continue
            touches = any(q in supp for q in vert.quadrants)
            if touches or x_on_h.get(h) == vert.point:
                opts.append((v_index[vert.v_curve], (), vert.point))
        options.append(opts)
    search = MatchingSearch([[(t, w) for t, w, _ in opts] for opts in options], 0)
    produced = 0
    for choice, _ in search.run():
        produced += 1
        if produced > budget:
            yield None
            return
        yield frozenset(options[k][i][2] for k, i in enumerate(choice))


def is_decomposable(d: Domain, budget: int = 10 ** 4) -> Decomposition:
    """Search for ``d = d1 + d2`` through an intermediate generator ``z``.

    Both pieces must be nonzero, nonnegative, connected domains of index 0
    or 1.  ``budget`` caps the number of intermediate generators tried.
    """
    decomp = d.decomp
    explored = 0
    for z in _intermediate_generators(d, budget):
        if z is None:
            return Decomposition(None, explored=explored)
        explored += 1
        if z == d.source or z == d.target:
            continue
        rhs = [(v.point in d.source) - (v.point in z) for v in decomp.vertices]
        for mult in _solve(decomp, rhs, list(d.mult), None):
            if not any(mult) or mult == d.mult:
                continue
            d1 = Domain(decomp, mult, d.source, z)
            d2 = Domain(decomp, tuple(a - b for a, b in zip(d.mult, mult)), z, d.target)
            if maslov_index(d1) not in (0, 4) or maslov_index(d2) not in (0, 4):
                continue
            if is_connected(d1) and is_connected(d2):
                return Decomposition(True, d1, d2, explored)
    return Decomposition(False, explored=explored)

