"""Property checks bundled for one diagram, as run by ``gridfloer verify``.

Each check returns ``(name, passed, detail)``; an exception inside a check
counts as a failure and its message becomes the detail.
"""

from __future__ import annotations

import io
import math
import random
from typing import Callable

from . import domains as dom
from .gradings import alexander_by_pairing, maslov_grading
from .grid import GridDiagram, trace_components
from .mos import MosTables, build_mos_complex, empty_rectangles
from .ovals import build_arrangement, short_census
from .reduction import (BigradedComplex, divide_v_factors, grading_violations, homology_by_rank,
                        read_complex, reduce_to_homology, verify_d_squared, write_complex)

Check = tuple[str, bool, str]


def roundtrip(c: BigradedComplex, fault: bool = False) -> BigradedComplex:
    """Write ``c`` in the interchange format and read it back.

    With ``fault`` the Maslov grading of the first generator that has an
    outgoing arrow is raised by two on the way, so every arrow out of it
    has the wrong degree.
    """
    buf = io.StringIO()
    write_complex(c, buf)
    text = buf.getvalue()
    if fault:
        victim = min(a for a, outs in c.out.items() if outs)
        lines = text.splitlines()
        for k, line in enumerate(lines):
            parts = line.split()
            if parts[0] == "gen" and int(parts[1]) == victim:
                parts[3] = f"M={int(parts[3][2:]) + 2}"
                lines[k] = " ".join(parts)
        text = "\n".join(lines) + "\n"
    return read_complex(io.StringIO(text))


def _run(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        return name, False, f"{type(exc).__name__}: {exc}"
    return name, ok, detail


def domain_checks(g: GridDiagram, c: BigradedComplex) -> tuple[bool, str]:
    """Every arrow has a class-D domain of index one; rectangles have index one."""
    decomp = dom.torus_regions(g)
    tables = MosTables.build(g)
    missing = 0
    total = 0
    for key in c.keys.values():
        sigma = tuple(key)
        x = dom.mos_points(sigma)
        for y, rect in empty_rectangles(sigma, tables):
            total += 1
            yp = dom.mos_points(y)
            found = dom.domains_between(x, yp, decomp, cap=1, in_d_only=True)
            if not any(dom.maslov_index(d) == 4 for d in found):
                missing += 1
            r = dom.rectangle_domain(decomp, rect.cells(), x, yp)
            if dom.maslov_index(r) != 4 or dom.boundary_defects(r):
                return False, f"rectangle {rect} out of {sigma} has index {dom.maslov_index(r) / 4}"
    return missing == 0, f"{total} arrows, {missing} without an index-1 domain"


def run_suite(g: GridDiagram, threads: int = 1, domains: bool = False, inject_fault: bool = False,
              corner: str = "vertical-inside", omit=None, seed: int = 0) -> list[Check]:
    trace = trace_components(g)
    stats: dict = {}
    clean = build_mos_complex(g, threads=threads, max_generators=None, stats=stats)
    c = roundtrip(clean, fault=inject_fault)
    out: list[Check] = []

    out.append(("generator-count", len(c) == math.factorial(g.n), f"{len(c)} generators"))
    out.append(("interchange-roundtrip", inject_fault or roundtrip(clean).arrows() == clean.arrows(), ""))

    def gradings():
        tables = MosTables.build(g)
        o = g.o_points()
        for key in clean.keys.values():
            sigma = tuple(key)
            pts = [(2 * col, 2 * r) for col, r in enumerate(sigma)]
            if maslov_grading(pts, o, shift=1) != tables.maslov(sigma):
                return False, f"Maslov disagrees at {sigma}"
            if alexander_by_pairing(pts, g, trace) != tables.alexander(sigma):
                return False, f"Alexander disagrees at {sigma}"
        return True, "fast gradings match the pairing formulas"

    out.append(_run("gradings", gradings))

    def degree():
        bad = grading_violations(c)
        return not bad, f"{len(bad)} arrows do not lower M by one" if bad else ""

    out.append(_run("differential-degree", degree))
    out.append(_run("d-squared", lambda: (verify_d_squared(c), "")))

    homology = {}

    def reduction():
        homology["h"] = reduce_to_homology(c)
        return homology["h"] == homology_by_rank(c), f"total rank {homology['h'].total_rank()}"

    out.append(_run("reduction-vs-rank", reduction))

    def order():
        rng = random.Random(seed)
        base = homology.get("h") or reduce_to_homology(c)
        bad = sum(reduce_to_homology(c, rng) != base for _ in range(5))
        return bad == 0, f"{bad} of 5 shuffled orders differ"

    out.append(_run("cancellation-order", order))

    table = {}

    def division():
        table["t"] = divide_v_factors(homology.get("h") or reduce_to_homology(c), trace)
        return True, f"rank {table['t'].total_rank()} after division"

    out.append(_run("v-division", division))

    def census():
        arr = build_arrangement(g, omit, corner=corner)
        ok = short_census(arr).euler() == c.census().euler()
        return ok, f"omission {arr.omit[0] + 1},{arr.omit[1] + 1}"

    out.append(_run("euler-census", census))

    if trace.component_count == 1:
        def determinant():
            from .oracle import alexander_by_determinant, expected_euler
            return expected_euler(alexander_by_determinant(g), g.n) == c.census().euler(), ""

        out.append(_run("euler-determinant", determinant))

    def symmetry():
        t = table.get("t")
        if t is None:
            return False, "no divided table"
        return t == t.symmetry_image(), ""

    out.append(_run("symmetry", symmetry))
    if domains:
        out.append(_run("domains", lambda: domain_checks(g, clean)))
    return out
