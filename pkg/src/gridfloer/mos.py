"""The MOS complex: permutations of the grid and empty rectangles on the torus.

A generator picks the lattice point ``(c, sigma[c])`` on every vertical
circle ``c``.  The differential counts (mod 2) rectangles whose lower-left
and upper-right corners lie in ``x``, whose other two corners lie in ``y``
and whose interior meets no marker and no point of ``x``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .gradings import alexander_offset, pair_J
from .grid import GridDiagram, LinkTrace, trace_components, winding_field
from .reduction import BigradedComplex
from .search import MatchingSearch

Window = Sequence[tuple[int, int]]


class GeneratorBudgetError(RuntimeError):
    """Enumeration would exceed the configured generator budget."""

    def __init__(self, attempted: int, budget: int):
        super().__init__(f"generator budget exceeded: {attempted} > {budget}")
        self.attempted = attempted
        self.budget = budget


class GradingMismatch(AssertionError):
    """A rectangle connects generators whose gradings do not differ by (0, 1)."""


@dataclass(frozen=True)
class MosGenerator:
    sigma: tuple[int, ...]
    alexander: tuple[int, ...]
    maslov: int

    @property
    def key(self) -> bytes:
        return bytes(self.sigma)

    def points(self) -> list[tuple[int, int]]:
        return [(2 * c, 2 * r) for c, r in enumerate(self.sigma)]


@dataclass(frozen=True)
class RectangleSpec:
    """Torus rectangle with lower-left corner column/row ``(col, row)``."""

    n: int
    col: int
    row: int
    width: int
    height: int

    @property
    def columns(self) -> tuple[int, int]:
        return self.col, (self.col + self.width) % self.n

    @property
    def rows(self) -> tuple[int, int]:
        return self.row, (self.row + self.height) % self.n

    @property
    def wraps_horizontally(self) -> bool:
        return self.col + self.width > self.n

    @property
    def wraps_vertically(self) -> bool:
        return self.row + self.height > self.n

    def cells(self) -> list[tuple[int, int]]:
        return [((self.col + i) % self.n, (self.row + j) % self.n)
                for i in range(self.width) for j in range(self.height)]


@dataclass
class MosTables:
    """Per-diagram lookup tables shared by enumeration and the differential."""

    g: GridDiagram
    trace: LinkTrace
    weights: list[list[tuple[int, ...]]]          # weights[c][r] = doubled a-vector at (c, r)
    oj: list[list[int]]                           # O's strictly NE plus strictly SW of (c, r)
    offset: tuple[int, ...]
    o_self: int                                   # J(O, O), an integer
    colmask: list[int] = field(default_factory=list)
    cyclic: list[list[int]] = field(default_factory=list)

    @classmethod
    def build(cls, g: GridDiagram) -> "MosTables":
        n = g.n
        t = trace_components(g)
        w = winding_field(g, t)
        weights = [[tuple(2 * comp[c][r] for comp in w.values) for r in range(n)] for c in range(n)]
        oj = [[0] * n for _ in range(n)]
        for c in range(n):
            for r in range(n):
                oj[c][r] = sum(1 for c2, r2 in enumerate(g.os)
                               if (c2 >= c and r2 >= r) or (c2 < c and r2 < r))
        o = g.o_points()
        colmask = [(1 << g.xs[c]) | (1 << g.os[c]) for c in range(n)]
        cyclic = [[sum(1 << ((s + k) % n) for k in range(length)) for length in range(n + 1)] for s in range(n)]
        return cls(g, t, weights, oj, alexander_offset(g, t), pair_J(o, o) // 2, colmask, cyclic)

    def maslov(self, sigma: Sequence[int]) -> int:
        n = len(sigma)
        upward = sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] < sigma[j])
        return upward - sum(self.oj[c][r] for c, r in enumerate(sigma)) + self.o_self + 1

    def alexander(self, sigma: Sequence[int]) -> tuple[int, ...]:
        total = list(self.offset)
        for c, r in enumerate(sigma):
            for i, v in enumerate(self.weights[c][r]):
                total[i] += v
        return tuple(total)

    def generator(self, sigma: Sequence[int]) -> MosGenerator:
        sigma = tuple(sigma)
        return MosGenerator(sigma, self.alexander(sigma), self.maslov(sigma))

    def search(self) -> MatchingSearch:
        n = self.g.n
        return MatchingSearch([[(r, self.weights[c][r]) for r in range(n)] for c in range(n)],
                              self.trace.component_count)

    def shifted_window(self, window: Window | None) -> Window | None:
        if window is None:
            return None
        if len(window) != len(self.offset):
            raise ValueError(f"window has {len(window)} components, link has {len(self.offset)}")
        return [(lo - off, hi - off) for (lo, hi), off in zip(window, self.offset)]


def _chunk_generators(g: GridDiagram, window, prefixes, budget):
    tables = MosTables.build(g)
    search = tables.search()
    shifted = tables.shifted_window(window)
    out = []
    for prefix in prefixes:
        for sigma, _ in search.run(shifted, prefix):
            out.append(tables.generator(sigma))
            if budget is not None and len(out) > budget:
                raise GeneratorBudgetError(len(out), budget)
    return out, search.nodes


def enumerate_generators(g: GridDiagram, window: Window | None = None, threads: int = 1,
                         max_generators: int | None = None, stats: dict | None = None) -> Iterator[MosGenerator]:
    """All MOS generators, or those whose doubled Alexander vector lies in ``window``.

    ``window`` holds one ``(lo, hi)`` pair of doubled gradings per
    component.  Subtrees are pruned with exact completion bounds.
    """
    if threads <= 1:
        tables = MosTables.build(g)
        search = tables.search()
        count = 0
        try:
            for sigma, _ in search.run(tables.shifted_window(window)):
                count += 1
                if max_generators is not None and count > max_generators:
                    raise GeneratorBudgetError(count, max_generators)
                yield tables.generator(sigma)
        finally:
            if stats is not None:
                stats["nodes"] = search.nodes
                stats["generators"] = count
        return

    n = g.n
    prefixes = [(a, b) for a in range(n) for b in range(n) if a != b] if n > 2 else [(a,) for a in range(n)]
    chunks = [prefixes[i::threads] for i in range(threads)]
    count = nodes = 0
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_chunk_generators, g, window, chunk, max_generators) for chunk in chunks if chunk]
        results = [f.result() for f in futures]
    gens = [gen for gens, _ in results for gen in gens]
    nodes = sum(k for _, k in results)
    gens.sort(key=lambda x: x.sigma)
    count = len(gens)
    if stats is not None:
        stats["nodes"] = nodes
        stats["generators"] = count
    if max_generators is not None and count > max_generators:
        raise GeneratorBudgetError(count, max_generators)
    yield from gens


def empty_rectangles(sigma: Sequence[int], tables: MosTables) -> list[tuple[tuple[int, ...], RectangleSpec]]:
    """Pairs ``(y, rectangle)`` for every empty torus rectangle out of ``sigma``.

    For each lower-left column ``s`` the rectangle grows rightwards one
    column at a time while the union of marker rows and generator rows
    seen so far is kept as bitmasks, so each candidate costs O(1).  Once
    the marker union meets the lower-left row every wider rectangle
    contains a marker and the sweep stops.
    """
    n = len(sigma)
    colmask, cyclic = tables.colmask, tables.cyclic
    out = []
    for s in range(n):
        rs = sigma[s]
        bottom = 1 << rs
        marks = colmask[s]
        if marks & bottom:
            continue
        pts = 0
        for w in range(1, n):
            e = (s + w) % n
            re = sigma[e]
            h = (re - rs) % n
            if not (marks & cyclic[rs][h]) and not (pts & cyclic[(rs + 1) % n][h - 1]):
                y = list(sigma)
                y[s], y[e] = re, rs
                out.append((tuple(y), RectangleSpec(n, s, rs, w, h)))
            marks |= colmask[e]
            if marks & bottom:
                break
            pts |= 1 << re
    return out


def _chunk_arrows(g: GridDiagram, sigmas):
    tables = MosTables.build(g)
    return [[bytes(y) for y, _ in empty_rectangles(s, tables)] for s in sigmas]


def build_mos_complex(g: GridDiagram, window: Window | None = None, threads: int = 1,
                      max_generators: int | None = 10 ** 7, stats: dict | None = None,
                      check_gradings: bool = True) -> BigradedComplex:
    """The MOS complex, or its direct summand with Alexander vector in ``window``.

    The differential preserves the Alexander vector, so a window in that
    grading is a subcomplex with no boundary effects to pad against.
    """
    if window is None and max_generators is not None and math.factorial(g.n) > max_generators:
        raise GeneratorBudgetError(math.factorial(g.n), max_generators)
    gens = list(enumerate_generators(g, window, threads, max_generators, stats))
    keys = [x.key for x in gens]
    c = BigradedComplex([(x.alexander, x.maslov) for x in gens], keys=keys)
    index = {k: i for i, k in enumerate(keys)}
    tables = MosTables.build(g)
    if threads <= 1:
        targets = [[bytes(y) for y, _ in empty_rectangles(x.sigma, tables)] for x in gens]
    else:
        sigmas = [x.sigma for x in gens]
        step = max(1, -(-len(sigmas) // (4 * threads)))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(_chunk_arrows, [g] * len(range(0, len(sigmas), step)),
                             [sigmas[i:i + step] for i in range(0, len(sigmas), step)])
            targets = [t for part in parts for t in part]
    for i, ys in enumerate(targets):
        for y in ys:
            j = index.get(y)
            if j is None:
                raise GradingMismatch(f"rectangle from {gens[i].sigma} leaves the window to {tuple(y)}")
            c.toggle(i, j)
    if check_gradings:
        for a, outs in c.out.items():
            ga, ma = c.grading[a]
            for b in outs:
                gb, mb = c.grading[b]
                if ga != gb or ma - mb != 1:
                    raise GradingMismatch(f"arrow {gens[a].sigma} -> {gens[b].sigma} has "
                                          f"gradings {c.grading[a]} -> {c.grading[b]}")
    if stats is not None:
        stats["arrows"] = c.arrow_count()
    return c


def generator_points(sigmas: Iterable[Sequence[int]]) -> list[list[tuple[int, int]]]:
    return [[(2 * c, 2 * r) for c, r in enumerate(s)] for s in sigmas]
