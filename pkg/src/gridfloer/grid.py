"""Grid diagrams: validation, parsing, link components and winding numbers.

Geometry: the grid is [0, n] x [0, n] with rows numbered bottom to top.
Column ``c`` holds an X at row ``xs[c]`` and an O at row ``os[c]``; markers
sit at cell centres.  Horizontal segments run O -> X inside a row, vertical
segments run X -> O inside a column, and verticals pass over horizontals.

Points handed to :func:`winding_at` are integers in units where one grid
cell has side ``scale``; ``scale=2`` is the doubled convention used for
lattice points and markers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence


class GridError(ValueError):
    """Malformed grid text or a grid that violates the marker rules."""


def _is_permutation(seq: Sequence[int], n: int) -> bool:
    return sorted(seq) == list(range(n))


@dataclass(frozen=True)
class GridDiagram:
    n: int
    xs: tuple[int, ...]
    os: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(int(v) for v in self.xs))
        object.__setattr__(self, "os", tuple(int(v) for v in self.os))
        if self.n < 1:
            raise GridError(f"grid size must be positive, got {self.n}")
        if len(self.xs) != self.n or len(self.os) != self.n:
            raise GridError("X and O rows must each list exactly n entries")
        if not _is_permutation(self.xs, self.n):
            raise GridError(f"X rows {list(self.xs)} are not a permutation of 0..{self.n - 1}")
        if not _is_permutation(self.os, self.n):
            raise GridError(f"O rows {list(self.os)} are not a permutation of 0..{self.n - 1}")
        for c, (x, o) in enumerate(zip(self.xs, self.os)):
            if x == o:
                raise GridError(f"column {c} has X and O in the same cell (row {x})")

    @property
    def xs_inv(self) -> tuple[int, ...]:
        """Column of the X in each row."""
        inv = [0] * self.n
        for c, r in enumerate(self.xs):
            inv[r] = c
        return tuple(inv)

    @property
    def os_inv(self) -> tuple[int, ...]:
        """Column of the O in each row."""
        inv = [0] * self.n
        for c, r in enumerate(self.os):
            inv[r] = c
        return tuple(inv)

    def o_points(self, scale: int = 2) -> list[tuple[int, int]]:
        h = scale // 2
        return [(scale * c + h, scale * r + h) for c, r in enumerate(self.os)]

    def x_points(self, scale: int = 2) -> list[tuple[int, int]]:
        h = scale // 2
        return [(scale * c + h, scale * r + h) for c, r in enumerate(self.xs)]

    def to_text(self) -> str:
        return (
            f"n={self.n}\n"
            f"X: {' '.join(str(r + 1) for r in self.xs)}\n"
            f"O: {' '.join(str(r + 1) for r in self.os)}\n"
        )

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "x": [r + 1 for r in self.xs], "o": [r + 1 for r in self.os]})


def parse_grid(text: str) -> GridDiagram:
    """Parse the 1-based text format (``n=..``, ``X: ..``, ``O: ..``) or its JSON twin."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            n, xs, os_ = int(data["n"]), data["x"], data["o"]
        except (ValueError, KeyError, TypeError) as exc:
            raise GridError(f"bad JSON grid: {exc}") from None
        return _from_one_based(n, xs, os_)

    fields: dict[str, str] = {}
    for raw in stripped.replace("/", "\n").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("n") and "=" in line:
            key, _, value = line.partition("=")
            fields["n"] = value.strip()
        elif ":" in line:
            key, _, value = line.partition(":")
            key = key.strip().upper()
            if key not in ("X", "O"):
                raise GridError(f"unknown line {raw!r}")
            fields[key] = value.strip()
        else:
            raise GridError(f"cannot parse line {raw!r}")
    missing = {"n", "X", "O"} - fields.keys()
    if missing:
        raise GridError(f"missing fields: {sorted(missing)}")
    try:
        n = int(fields["n"])
        xs = [int(tok) for tok in fields["X"].split()]
        os_ = [int(tok) for tok in fields["O"].split()]
    except ValueError as exc:
        raise GridError(f"non-integer entry: {exc}") from None
    return _from_one_based(n, xs, os_)


def _from_one_based(n: int, xs: Sequence[int], os_: Sequence[int]) -> GridDiagram:
    if len(xs) != n or len(os_) != n:
        raise GridError(f"expected {n} entries per marker line, got {len(xs)} and {len(os_)}")
    return GridDiagram(n, tuple(r - 1 for r in xs), tuple(r - 1 for r in os_))


def load_grid(path) -> GridDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_grid(fh.read())


@dataclass(frozen=True)
class LinkTrace:
    component_count: int
    column_component: tuple[int, ...]
    row_component: tuple[int, ...]
    complexities: tuple[int, ...]


def trace_components(g: GridDiagram) -> LinkTrace:
    """Split the markers into link components.

    Walking O -> X along a row and then X -> O down/up the column moves
    from column ``c`` to column ``xs_inv[os[c]]``; components are the
    orbits of that map, numbered by their smallest column.
    """
    xs_inv = g.xs_inv
    comp = [-1] * g.n
    sizes: list[int] = []
    for start in range(g.n):
        if comp[start] >= 0:
            continue
        idx = len(sizes)
        c, size = start, 0
        while comp[c] < 0:
            comp[c] = idx
            size += 1
            c = xs_inv[g.os[c]]
        sizes.append(size)
    os_inv = g.os_inv
    rows = tuple(comp[os_inv[r]] for r in range(g.n))
    return LinkTrace(len(sizes), tuple(comp), rows, tuple(sizes))


def winding_at(g: GridDiagram, t: LinkTrace, point: tuple[int, int], scale: int = 2) -> tuple[int, ...]:
    """Winding number of each component's projection around ``point``.

    Counts signed crossings of a ray towards +x with the vertical segments,
    or of a ray towards -y with the horizontal segments when the point sits
    on a row line.  The point must not lie on the projection.
    """
    px, py = point
    h = scale // 2
    on_row = (py - h) % scale == 0 and 0 <= (py - h) // scale < g.n
    on_col = (px - h) % scale == 0 and 0 <= (px - h) // scale < g.n
    wind = [0] * t.component_count
    if not on_row:
        for c in range(g.n):
            lo, hi = sorted((g.xs[c], g.os[c]))
            if not (scale * lo + h < py < scale * hi + h):
                continue
            sx = scale * c + h
            if sx == px:
                raise ValueError(f"point {point} lies on the projection")
            if sx > px:
                wind[t.column_component[c]] += 1 if g.os[c] > g.xs[c] else -1
        return tuple(wind)
    if on_col:
        raise ValueError(f"point {point} lies on a marker or crossing line")
    xs_inv, os_inv = g.xs_inv, g.os_inv
    for r in range(g.n):
        lo, hi = sorted((xs_inv[r], os_inv[r]))
        if not (scale * lo + h < px < scale * hi + h):
            continue
        sy = scale * r + h
        if sy == py:
            raise ValueError(f"point {point} lies on the projection")
        if sy < py:
            # The bottom edge of a counterclockwise loop runs towards +x.
            wind[t.row_component[r]] += 1 if xs_inv[r] > os_inv[r] else -1
    return tuple(wind)


@dataclass(frozen=True)
class WindingField:
    """``values[i][a][b]``: minus the winding of component ``i`` around lattice point (a, b)."""

    n: int
    values: tuple[tuple[tuple[int, ...], ...], ...]

    def at(self, a: int, b: int) -> tuple[int, ...]:
        return tuple(comp[a][b] for comp in self.values)


def winding_field(g: GridDiagram, t: LinkTrace) -> WindingField:
    n = g.n
    vals = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(t.component_count)]
    for a in range(n + 1):
        for b in range(n + 1):
            w = winding_at(g, t, (2 * a, 2 * b), scale=2)
            for i, wi in enumerate(w):
                vals[i][a][b] = -wi
    frozen = tuple(tuple(tuple(col) for col in comp) for comp in vals)
    return WindingField(n, frozen)


def corner_sum(g: GridDiagram, w: WindingField) -> tuple[int, ...]:
    """Sum of ``a`` over the four corners of each of the 2n marker squares."""
    totals = [0] * len(w.values)
    for c in range(g.n):
        for r in (g.xs[c], g.os[c]):
            for a, b in ((c, r), (c + 1, r), (c, r + 1), (c + 1, r + 1)):
                for i, comp in enumerate(w.values):
                    totals[i] += comp[a][b]
    return tuple(totals)


def cyclic_permute(g: GridDiagram, axis: str, k: int) -> GridDiagram:
    """Rotate rows (``axis="row"``) or columns (``axis="column"``) by ``k``."""
    n = g.n
    if axis == "row":
        return GridDiagram(n, tuple((r + k) % n for r in g.xs), tuple((r + k) % n for r in g.os))
    if axis == "column":
        xs, os_ = [0] * n, [0] * n
        for c in range(n):
            xs[(c + k) % n] = g.xs[c]
            os_[(c + k) % n] = g.os[c]
        return GridDiagram(n, tuple(xs), tuple(os_))
    raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")


def transpose(g: GridDiagram) -> GridDiagram:
    """Swap rows and columns (the marker permutations are inverted)."""
    return GridDiagram(g.n, g.xs_inv, g.os_inv)


def mirror(g: GridDiagram) -> GridDiagram:
    """Reverse the row order, which represents the mirror image link."""
    n = g.n
    return GridDiagram(n, tuple(n - 1 - r for r in g.xs), tuple(n - 1 - r for r in g.os))


def stabilize(g: GridDiagram, column: int) -> GridDiagram:
    """Split the X in ``column`` into an X-O-X staircase; same link, size n + 1.

    A new column and row are inserted just right of and above that X.
    The old X moves up into the new row, a new X sits in the new column at
    the old row and the new O takes the corner cell between them.
    """
    c, r = column, g.xs[column]
    xs, os_ = [], []
    for k in range(g.n):
        xs.append(g.xs[k] + (g.xs[k] > r))
        os_.append(g.os[k] + (g.os[k] > r))
        if k == c:
            xs[k] = r + 1
            xs.append(r)
            os_.append(r + 1)
    return GridDiagram(g.n + 1, tuple(xs), tuple(os_))
