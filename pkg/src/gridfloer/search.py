"""Depth-first enumeration of perfect matchings with additive-weight windows.

Slot ``k`` picks one option ``(target, weight)`` from ``options[k]``; all
chosen targets must differ.  Weights are integer vectors that add up along
a matching.  A window restricts the total to a box, and subtrees are cut
when no completion can land inside it.

The bound for a partial matching is the exact per-component minimum and
maximum over all completions, computed by dynamic programming over the set
of used targets (2^m states for m targets), so dead ends of the sparse
oval graphs are never entered either.
"""

from __future__ import annotations

from typing import Iterator, Sequence

Weight = tuple[int, ...]
Option = tuple[int, Weight]
Window = Sequence[tuple[int, int]]


class MatchingSearch:
    def __init__(self, options: Sequence[Sequence[Option]], dim: int):
        self.options = [list(opts) for opts in options]
        self.dim = dim
        self.nodes = 0
        self._memo: dict[int, tuple[Weight, Weight] | None] = {}

    def bounds(self, mask: int, k: int) -> tuple[Weight, Weight] | None:
        """(min, max) completion weights for slots k.. given used targets ``mask``."""
        if k == len(self.options):
            zero = (0,) * self.dim
            return zero, zero
        hit = self._memo.get(mask, False)
        if hit is not False:
            return hit
        lo: list[int] | None = None
        hi: list[int] | None = None
        for target, w in self.options[k]:
            bit = 1 << target
            if mask & bit:
                continue
            sub = self.bounds(mask | bit, k + 1)
            if sub is None:
                continue
            smin, smax = sub
            if lo is None:
                lo = [w[i] + smin[i] for i in range(self.dim)]
                hi = [w[i] + smax[i] for i in range(self.dim)]
            else:
                for i in range(self.dim):
                    lo[i] = min(lo[i], w[i] + smin[i])
                    hi[i] = max(hi[i], w[i] + smax[i])
        result = None if lo is None else (tuple(lo), tuple(hi))
        self._memo[mask] = result
        return result

    def _admissible(self, mask: int, k: int, partial: list[int], window: Window | None) -> bool:
        b = self.bounds(mask, k)
        if b is None:
            return False
        if window is None:
            return True
        lo, hi = b
        for i, (wlo, whi) in enumerate(window):
            if partial[i] + hi[i] < wlo or partial[i] + lo[i] > whi:
                return False
        return True

    def run(self, window: Window | None = None, prefix: Sequence[int] = ()) -> Iterator[tuple[tuple[int, ...], Weight]]:
        """Yield ``(option indices per slot, total weight)`` for every matching in the window.

        ``prefix`` fixes the option index of the first few slots, which is
        how work is split between processes.
        """
        n = len(self.options)
        choice = [0] * n
        partial = [0] * self.dim
        mask = 0
        for k, idx in enumerate(prefix):
            target, w = self.options[k][idx]
            if mask & (1 << target):
                return
            mask |= 1 << target
            choice[k] = idx
            for i in range(self.dim):
                partial[i] += w[i]
        yield from self._descend(len(prefix), mask, choice, partial, window)

    def _descend(self, k, mask, choice, partial, window):
        self.nodes += 1
        if not self._admissible(mask, k, partial, window):
            return
        if k == len(self.options):
            yield tuple(choice), tuple(partial)
            return
        for idx, (target, w) in enumerate(self.options[k]):
            bit = 1 << target
            if mask & bit:
                continue
            choice[k] = idx
            for i in range(self.dim):
                partial[i] += w[i]
            yield from self._descend(k + 1, mask | bit, choice, partial, window)
            for i in range(self.dim):
                partial[i] -= w[i]

    def extreme(self) -> tuple[Weight, Weight] | None:
        """Per-component (min, max) total weight over all perfect matchings."""
        return self.bounds(0, 0)
