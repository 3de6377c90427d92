"""Integer lattice rasters of curve arrangements.

Curves are unions of unit lattice edges; cells are unit squares.  Cell
``(i, j)`` spans ``[ox + i, ox + i + 1] x [oy + j, oy + j + 1]``.  With
``periodic=True`` the raster is a torus and indices wrap.
"""

from __future__ import annotations

from collections import deque


class RasterError(ValueError):
    pass


class Raster:
    def __init__(self, width: int, height: int, origin: tuple[int, int] = (0, 0), periodic: bool = False):
        self.width = width
        self.height = height
        self.ox, self.oy = origin
        self.periodic = periodic
        # hedge[j * width + i]: edge from vertex (i, j) to (i + 1, j); j in 0..height.
        # vedge[j * (width + 1) + i]: edge from vertex (i, j) to (i, j + 1).
        self.hedge = [-1] * (width * (height + 1))
        self.vedge = [-1] * ((width + 1) * height)
        self._labels: list[int] | None = None

    # -- coordinates -------------------------------------------------------
    def _vx(self, x: int) -> int:
        i = x - self.ox
        return i % self.width if self.periodic else i

    def _vy(self, y: int) -> int:
        j = y - self.oy
        return j % self.height if self.periodic else j

    def cell_index(self, i: int, j: int) -> int | None:
        if self.periodic:
            return (j % self.height) * self.width + (i % self.width)
        if 0 <= i < self.width and 0 <= j < self.height:
            return j * self.width + i
        return None

    def cell_at(self, x: int, y: int) -> int | None:
        """Index of the cell whose lower-left corner is the point (x, y)."""
        return self.cell_index(x - self.ox, y - self.oy)

    # -- drawing -----------------------------------------------------------
    def _set(self, table: list[int], idx: int, curve: int) -> None:
        if table[idx] not in (-1, curve):
            raise RasterError(f"curves {table[idx]} and {curve} share an edge")
        table[idx] = curve
        self._labels = None

    def add_hsegment(self, curve: int, x0: int, x1: int, y: int) -> None:
        j = self._vy(y)
        for x in range(x0, x1):
            i = self._vx(x)
            self._set(self.hedge, j * self.width + i, curve)

    def add_vsegment(self, curve: int, x: int, y0: int, y1: int) -> None:
        i = self._vx(x)
        for y in range(y0, y1):
            j = self._vy(y)
            self._set(self.vedge, j * (self.width + 1) + i, curve)

    def add_rectangle(self, curve: int, x0: int, y0: int, x1: int, y1: int) -> None:
        self.add_hsegment(curve, x0, x1, y0)
        self.add_hsegment(curve, x0, x1, y1)
        self.add_vsegment(curve, x0, y0, y1)
        self.add_vsegment(curve, x1, y0, y1)

    # -- edge queries (vertex coordinates relative to the origin) ----------
    def h_curve(self, i: int, j: int) -> int:
        """Curve on the edge (i, j) -> (i + 1, j), or -1."""
        if self.periodic:
            i, j = i % self.width, j % self.height
        elif not (0 <= i < self.width and 0 <= j <= self.height):
            return -1
        return self.hedge[j * self.width + i]

    def v_curve(self, i: int, j: int) -> int:
        """Curve on the edge (i, j) -> (i, j + 1), or -1."""
        if self.periodic:
            i, j = i % self.width, j % self.height
        elif not (0 <= i <= self.width and 0 <= j < self.height):
            return -1
        return self.vedge[j * (self.width + 1) + i]

    # -- regions -----------------------------------------------------------
    def labels(self) -> list[int]:
        """Region label per cell, numbered in order of the smallest cell."""
        if self._labels is not None:
            return self._labels
        w, h = self.width, self.height
        lab = [-1] * (w * h)
        nxt = 0
        for start in range(w * h):
            if lab[start] >= 0:
                continue
            lab[start] = nxt
            queue = deque([start])
            while queue:
                k = queue.popleft()
                j, i = divmod(k, w)
                for di, dj, blocked in (
                    (1, 0, self.v_curve(i + 1, j)), (-1, 0, self.v_curve(i, j)),
                    (0, 1, self.h_curve(i, j + 1)), (0, -1, self.h_curve(i, j)),
                ):
                    if blocked >= 0:
                        continue
                    nb = self.cell_index(i + di, j + dj)
                    if nb is not None and lab[nb] < 0:
                        lab[nb] = nxt
                        queue.append(nb)
            nxt += 1
        self._labels = lab
        return lab

    def region_count(self) -> int:
        lab = self.labels()
        return max(lab) + 1 if lab else 0

    def unbounded_region(self) -> int | None:
        """Label of the region touching the frame (planar rasters only)."""
        if self.periodic:
            return None
        return self.labels()[0]

    def quadrant_cells(self, i: int, j: int) -> tuple[int | None, int | None, int | None, int | None]:
        """Cells (NE, NW, SW, SE) around vertex (i, j), relative coordinates."""
        return (self.cell_index(i, j), self.cell_index(i - 1, j),
                self.cell_index(i - 1, j - 1), self.cell_index(i, j - 1))
