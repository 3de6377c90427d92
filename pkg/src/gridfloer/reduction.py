"""Bigraded GF(2) chain complexes and their homology.

Two independent routes to the homology table:

* :func:`reduce_to_homology` cancels arrows one at a time (Gaussian
  elimination).  Cancelling ``x -> y`` deletes both generators and toggles
  ``a -> b`` for every ``a -> y`` and ``x -> b``.
* :func:`homology_by_rank` computes ``dim - rank(out) - rank(in)`` per
  bigrading with bit-packed GF(2) elimination.
"""

from __future__ import annotations

import random
from collections import defaultdict
from typing import Hashable, Iterable, Sequence, TextIO

from .grid import LinkTrace
from .poly import Alex, Laurent, PoincarePolynomial, divide_by_v

Grading = tuple[Alex, int]


class ComplexError(ValueError):
    pass


class BigradedComplex:
    """Generators with (doubled Alexander vector, Maslov) labels and a sparse differential."""

    def __init__(self, gradings: Sequence[Grading] = (), arrows: Iterable[tuple[int, int]] = (),
                 keys: Sequence[Hashable] | None = None):
        self.grading: dict[int, Grading] = {}
        self.out: dict[int, set[int]] = {}
        self.inc: dict[int, set[int]] = {}
        self.keys: dict[int, Hashable] = {}
        for i, gr in enumerate(gradings):
            self.add_generator(i, gr, None if keys is None else keys[i])
        for a, b in arrows:
            self.toggle(a, b)

    def add_generator(self, i: int, grading: Grading, key: Hashable = None) -> None:
        alex, m = grading
        self.grading[i] = (tuple(alex), int(m))
        self.out[i] = set()
        self.inc[i] = set()
        if key is not None:
            self.keys[i] = key

    def toggle(self, a: int, b: int) -> None:
        """Add the arrow a -> b over GF(2)."""
        if b in self.out[a]:
            self.out[a].discard(b)
            self.inc[b].discard(a)
        else:
            self.out[a].add(b)
            self.inc[b].add(a)

    def remove(self, i: int) -> None:
        for b in self.out.pop(i):
            self.inc[b].discard(i)
        for a in self.inc.pop(i):
            self.out[a].discard(i)
        del self.grading[i]
        self.keys.pop(i, None)

    def copy(self) -> "BigradedComplex":
        c = BigradedComplex()
        c.grading = dict(self.grading)
        c.out = {i: set(s) for i, s in self.out.items()}
        c.inc = {i: set(s) for i, s in self.inc.items()}
        c.keys = dict(self.keys)
        return c

    def __len__(self):
        return len(self.grading)

    def arrows(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a, outs in self.out.items() for b in outs)

    def arrow_count(self) -> int:
        return sum(len(s) for s in self.out.values())

    def census(self) -> PoincarePolynomial:
        return PoincarePolynomial((gr, 1) for gr in self.grading.values())

    def blocks(self) -> dict[Alex, list[int]]:
        """Generator ids grouped by Alexander vector (the differential preserves it)."""
        out: dict[Alex, list[int]] = defaultdict(list)
        for i, (alex, _) in self.grading.items():
            out[alex].append(i)
        return {a: sorted(ids) for a, ids in sorted(out.items())}

    def subcomplex(self, ids: Iterable[int]) -> "BigradedComplex":
        keep = set(ids)
        c = BigradedComplex()
        for i in sorted(keep):
            c.add_generator(i, self.grading[i], self.keys.get(i))
        for i in keep:
            for b in self.out[i]:
                if b in keep:
                    c.toggle(i, b)
        return c

    def cancel(self, x: int, y: int) -> None:
        """In-place cancellation of the arrow x -> y."""
        if y not in self.out.get(x, ()):
            raise ComplexError(f"no arrow {x} -> {y} to cancel")
        sources = [a for a in self.inc[y] if a != x]
        targets = [b for b in self.out[x] if b != y]
        self.remove(x)
        self.remove(y)
        for a in sources:
            for b in targets:
                self.toggle(a, b)


def grading_violations(c: BigradedComplex) -> list[tuple[int, int]]:
    """Arrows that do not drop Maslov by one or that change the Alexander vector."""
    bad = []
    for a, outs in c.out.items():
        ga, ma = c.grading[a]
        for b in outs:
            gb, mb = c.grading[b]
            if ga != gb or ma - mb != 1:
                bad.append((a, b))
    return sorted(bad)


def verify_d_squared(c: BigradedComplex) -> bool:
    return not d_squared_defects(c)


def d_squared_defects(c: BigradedComplex) -> list[tuple[int, int]]:
    """Pairs (a, z) with an odd number of two-step paths a -> . -> z."""
    bad = []
    for a, outs in c.out.items():
        parity: dict[int, int] = {}
        for b in outs:
            for z in c.out[b]:
                parity[z] = parity.get(z, 0) ^ 1
        bad.extend((a, z) for z, p in parity.items() if p)
    return sorted(bad)


def cancel_pair(c: BigradedComplex, x: int, y: int) -> BigradedComplex:
    """Copy of ``c`` with the arrow x -> y cancelled."""
    gx, gy = c.grading[x], c.grading[y]
    if gx[0] != gy[0] or gx[1] != gy[1] + 1:
        raise ComplexError(f"arrow {x} -> {y} does not respect the bigrading")
    out = c.copy()
    out.cancel(x, y)
    return out


def reduce_to_homology(c: BigradedComplex, rng: random.Random | None = None) -> PoincarePolynomial:
    """Cancel arrows until none remain; the survivors give the homology.

    Default order: Alexander blocks ascending, then generators by (Maslov,
    id), cancelling each against the target of smallest in-degree.  With
    ``rng`` both choices are randomised.  Any order terminates after one
    pass: a generator left with no outgoing arrows never gains one, since
    a cancellation only rewires sources of the cancelled target.
    """
    work = c.copy()
    if rng is None:
        order = sorted(work.grading, key=lambda i: (work.grading[i][0], work.grading[i][1], i))
    else:
        order = list(work.grading)
        rng.shuffle(order)
    for x in order:
        outs = work.out.get(x)
        if not outs:
            continue
        if rng is None:
            y = min(outs, key=lambda v: (len(work.inc[v]), v))
        else:
            y = rng.choice(sorted(outs))
        work.cancel(x, y)
    if work.arrow_count():
        raise ComplexError("reduction finished with arrows left")
    return work.census()


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows packed into Python integers."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            low = row & -row
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = row
                rank += 1
                break
            row ^= hit
    return rank


def homology_by_rank(c: BigradedComplex) -> PoincarePolynomial:
    by_grading: dict[Grading, list[int]] = defaultdict(list)
    for i, gr in c.grading.items():
        by_grading[gr].append(i)
    position = {}
    for ids in by_grading.values():
        for k, i in enumerate(sorted(ids)):
            position[i] = k

    def rank_out(gr: Grading) -> int:
        rows = []
        for i in by_grading.get(gr, ()):
            row = 0
            for b in c.out[i]:
                row |= 1 << position[b]
            rows.append(row)
        return gf2_rank(rows)

    ranks = {gr: rank_out(gr) for gr in by_grading}
    result = PoincarePolynomial()
    for (alex, m), ids in by_grading.items():
        h = len(ids) - ranks[(alex, m)] - ranks.get((alex, m + 1), 0)
        if h < 0:
            raise ComplexError(f"negative homology rank at {(alex, m)}; d^2 != 0?")
        if h:
            result[(alex, m)] = h
    return result


def euler_polynomial(p: PoincarePolynomial) -> Laurent:
    return p.euler()


def divide_v_factors(p: PoincarePolynomial, t: LinkTrace, truncate_below: int | None = None) -> PoincarePolynomial:
    """Strip the V_i^(n_i - 1) tensor factors from a tilde-homology table."""
    out = PoincarePolynomial(p)
    for i, ni in enumerate(t.complexities):
        out = divide_by_v(out, i, ni - 1, truncate_below=truncate_below)
    return out


def write_complex(c: BigradedComplex, fh: TextIO) -> None:
    """``gen <id> A=<doubled,...> M=<int>`` lines, then ``arrow <from> <to>`` lines."""
    for i in sorted(c.grading):
        alex, m = c.grading[i]
        fh.write(f"gen {i} A={','.join(str(a) for a in alex)} M={m}\n")
    for a, b in c.arrows():
        fh.write(f"arrow {a} {b}\n")


def read_complex(fh: TextIO) -> BigradedComplex:
    c = BigradedComplex()
    for lineno, raw in enumerate(fh, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "gen" and len(parts) == 4:
                i = int(parts[1])
                if not parts[2].startswith("A=") or not parts[3].startswith("M="):
                    raise ValueError("expected A= and M= fields")
                alex = tuple(int(v) for v in parts[2][2:].split(","))
                if i in c.grading:
                    raise ValueError(f"duplicate generator {i}")
                c.add_generator(i, (alex, int(parts[3][2:])))
            elif parts[0] == "arrow" and len(parts) == 3:
                a, b = int(parts[1]), int(parts[2])
                if a not in c.grading or b not in c.grading:
                    raise ValueError("arrow between undeclared generators")
                c.toggle(a, b)
            else:
                raise ValueError("unknown record")
        except ValueError as exc:
            raise ComplexError(f"line {lineno}: {exc}: {raw.rstrip()!r}") from None
    return c


def random_complex(rng: random.Random, size: int, alex_levels: int = 3, maslov_levels: int = 4,
                   pair_fraction: float = 0.6) -> tuple[BigradedComplex, PoincarePolynomial]:
    """A d^2 = 0 complex with known homology.

    Starts from a direct sum of cancelling pairs ``a -> b`` and isolated
    generators, then conjugates the differential by a random invertible
    change of basis inside every bigrading.  Returns the complex and the
    homology table fixed by construction.
    """
    gradings: list[Grading] = []
    arrows: list[tuple[int, int]] = []
    expected = PoincarePolynomial()
    while len(gradings) < size:
        alex = ((rng.randrange(alex_levels) - alex_levels // 2) * 2,)
        m = rng.randrange(maslov_levels) - maslov_levels // 2
        if len(gradings) + 1 < size and rng.random() < pair_fraction:
            a = len(gradings)
            gradings += [(alex, m), (alex, m - 1)]
            arrows.append((a, a + 1))
        else:
            gradings.append((alex, m))
            expected[(alex, m)] += 1

    # Differential as bitmask rows: d[i] = set of targets.
    d = [0] * len(gradings)
    for a, b in arrows:
        d[a] |= 1 << b
    by_gr: dict[Grading, list[int]] = defaultdict(list)
    for i, gr in enumerate(gradings):
        by_gr[gr].append(i)
    # Row operations inside one bigrading: new basis e_i' = e_i + e_j.
    # d' = P d P^-1 with P = P^-1 elementary: d'(e_i + e_j) etc.  Realised
    # by "add row j to row i" on sources and "add column i to column j" on
    # targets, which keeps d'^2 = 0.
    for ids in by_gr.values():
        if len(ids) < 2:
            continue
        for _ in range(3 * len(ids)):
            i, j = rng.sample(ids, 2)
            d[i] ^= d[j]
            bi, bj = 1 << i, 1 << j
            for k in range(len(d)):
                if d[k] & bi:
                    d[k] ^= bj
    c = BigradedComplex(gradings)
    for a, row in enumerate(d):
        while row:
            low = row & -row
            c.toggle(a, low.bit_length() - 1)
            row ^= low
    return c, expected
