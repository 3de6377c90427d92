"""Command-line front end: ``compute``, ``census``, ``verify`` and ``moves``.

Exit codes: 0 ok, 1 input error, 2 resource limit, 3 verification failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .grid import GridDiagram, GridError, cyclic_permute, load_grid, mirror, stabilize, trace_components, transpose
from .invariants import ComputeConfig, HFKResult, compute_hfk
from .mos import GeneratorBudgetError, GradingMismatch, build_mos_complex
from .ovals import OvalError, build_arrangement, short_census
from .poly import DivisionError, PoincarePolynomial
from .reduction import ComplexError

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3


class InputError(ValueError):
    pass


class CeilingError(RuntimeError):
    """The diagram is larger than the verification ceiling."""


@dataclass
class RunConfig:
    command: str
    path: str
    window: tuple[int, int] | None = None     # doubled Alexander bounds
    omit: tuple[int, int] | None = None       # 0-based (row, column)
    corner: str = "vertical-inside"
    threads: int = 1
    fmt: str = "tsv"
    use_symmetry: bool = False
    domains: bool = False
    max_generators: int = 10 ** 7
    max_n: int = 7
    inject_fault: bool = False
    ops: tuple[str, ...] = ()

    def __post_init__(self):
        if self.threads < 1:
            raise InputError("--threads must be at least 1")
        if self.window is not None and self.window[0] > self.window[1]:
            raise InputError("--window bounds are out of order")


# -- parsing helpers -------------------------------------------------------------------
def parse_window(text: str) -> tuple[int, int]:
    """``A_MIN..A_MAX`` in true Alexander units (halves allowed) to doubled ints."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise InputError(f"window {text!r} is not of the form A_MIN..A_MAX")
    try:
        a, b = Fraction(lo), Fraction(hi)
    except ValueError:
        raise InputError(f"window {text!r} has non-numeric bounds") from None
    if (2 * a).denominator != 1 or (2 * b).denominator != 1:
        raise InputError("window bounds must be integers or halves")
    return int(2 * a), int(2 * b)


def parse_omit(text: str) -> tuple[int, int]:
    """``r,c`` with 1-based row and column, as in grid files."""
    try:
        r, c = (int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"--omit expects r,c, got {text!r}") from None
    return r - 1, c - 1


def _num(doubled: int):
    return doubled // 2 if doubled % 2 == 0 else doubled / 2


# -- rendering -------------------------------------------------------------------------
def table_rows(p: PoincarePolynomial) -> list[tuple[tuple, int, int]]:
    """(A tuple, M, value) sorted by A then M, both descending."""
    return [(tuple(_num(a) for a in alex), m, c)
            for (alex, m), c in sorted(p.items(), key=lambda kv: (kv[0][0], kv[0][1]), reverse=True)]


def _a_header(nvars: int) -> list[str]:
    return ["A"] if nvars == 1 else [f"A{i + 1}" for i in range(nvars)]


def render(fields: list[tuple[str, object]], table: PoincarePolynomial, value_name: str, nvars: int, fmt: str) -> str:
    rows = table_rows(table)
    if fmt == "json":
        body: dict = {}
        key = _a_header(nvars)
        body["table"] = [dict(zip(key, a)) | {"M": m, value_name: c} for a, m, c in rows]
        for name, value in fields:
            body[name] = value
        return json.dumps(body, indent=2, sort_keys=False) + "\n"
    out = io.StringIO()
    out.write("\t".join(_a_header(nvars) + ["M", value_name]) + "\n")
    for a, m, c in rows:
        out.write("\t".join(str(v) for v in (*a, m, c)) + "\n")
    for name, value in fields:
        text = "" if value is None else str(value).lower() if isinstance(value, bool) else str(value)
        out.write(f"# {name}\t{text}\n")
    return out.getvalue()


# -- subcommands -----------------------------------------------------------------------
def cmd_compute(cfg: RunConfig, g: GridDiagram) -> tuple[int, str]:
    r: HFKResult = compute_hfk(g, ComputeConfig(cfg.window, cfg.use_symmetry, cfg.threads, cfg.max_generators))
    nvars = trace_components(g).component_count
    fields = [
        ("n", g.n),
        ("components", nvars),
        ("generators", r.stats.get("generators")),
        ("arrows", r.stats.get("arrows")),
        ("total_rank", r.table.total_rank()),
        ("alexander", str(r.alexander_poly)),
        ("genus", r.genus),
        ("fibered", r.fibered),
        ("symmetric", r.symmetric),
        ("complete", r.complete),
    ]
    return EXIT_OK, render(fields, r.table, "rank", nvars, cfg.fmt)


def cmd_census(cfg: RunConfig, g: GridDiagram) -> tuple[int, str]:
    arr = build_arrangement(g, cfg.omit, corner=cfg.corner)
    window = None if cfg.window is None else [cfg.window] * arr.trace.component_count
    census = short_census(arr, window)
    fields: list[tuple[str, object]] = [
        ("omit", f"{arr.omit[0] + 1},{arr.omit[1] + 1}"),
        ("generators", census.total_rank()),
        ("polynomial", str(census.euler())),
    ]
    code = EXIT_OK
    if window is None:
        mos = build_mos_complex(g, threads=cfg.threads, max_generators=cfg.max_generators).census().euler()
        ok = mos == census.euler()
        fields += [("mos_euler", str(mos)), ("comparison", "PASS" if ok else "FAIL")]
        code = EXIT_OK if ok else EXIT_VERIFY
    return code, render(fields, census, "count", arr.trace.component_count, cfg.fmt)


def cmd_verify(cfg: RunConfig, g: GridDiagram) -> tuple[int, str]:
    from .verify import run_suite

    if g.n > cfg.max_n:
        raise CeilingError(f"grid size {g.n} exceeds the verification ceiling {cfg.max_n}")
    report = run_suite(g, threads=cfg.threads, domains=cfg.domains, inject_fault=cfg.inject_fault,
                       corner=cfg.corner, omit=cfg.omit)
    lines = [f"{'PASS' if ok else 'FAIL'}\t{name}\t{detail}".rstrip() for name, ok, detail in report]
    failed = any(not ok for _, ok, _ in report)
    if cfg.fmt == "json":
        text = json.dumps([{"check": n, "pass": ok, "detail": d} for n, ok, d in report], indent=2) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    return (EXIT_VERIFY if failed else EXIT_OK), text


_MOVES: dict[str, Callable[[GridDiagram, int | None], GridDiagram]] = {
    "rows": lambda g, k: cyclic_permute(g, "row", 1 if k is None else k),
    "columns": lambda g, k: cyclic_permute(g, "column", 1 if k is None else k),
    "transpose": lambda g, k: transpose(g),
    "mirror": lambda g, k: mirror(g),
    "stabilize": lambda g, k: stabilize(g, (1 if k is None else k) - 1),
}


def cmd_moves(cfg: RunConfig, g: GridDiagram) -> tuple[int, str]:
    for op in cfg.ops:
        name, _, arg = op.partition(":")
        if name not in _MOVES:
            raise InputError(f"unknown move {name!r}; choose from {', '.join(_MOVES)}")
        try:
            k = int(arg) if arg else None
        except ValueError:
            raise InputError(f"move {op!r} needs an integer argument") from None
        if name == "stabilize" and k is not None and not 1 <= k <= g.n:
            raise InputError(f"stabilize column {k} is outside the grid")
        g = _MOVES[name](g, k)
    return EXIT_OK, (g.to_json() + "\n") if cfg.fmt == "json" else g.to_text()


COMMANDS = {"compute": cmd_compute, "census": cmd_census, "verify": cmd_verify, "moves": cmd_moves}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridfloer", description="Hat knot Floer homology from grid diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("path", help="grid file (text or JSON)")
        p.add_argument("--format", dest="fmt", choices=("tsv", "json"), default="tsv")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--max-generators", type=int, default=10 ** 7)

    p = sub.add_parser("compute", help="bigraded hat homology and invariants")
    common(p)
    p.add_argument("--window", help="A_MIN..A_MAX")
    p.add_argument("--use-symmetry", action="store_true", help="compute A >= 0 and reflect")

    p = sub.add_parser("census", help="short-oval generator census")
    common(p)
    p.add_argument("--window", help="A_MIN..A_MAX")
    p.add_argument("--omit", help="1-based row,column left without an oval")
    p.add_argument("--corner", choices=("vertical-inside", "horizontal-inside"), default="vertical-inside")

    p = sub.add_parser("verify", help="run the property checks on one diagram")
    common(p)
    p.add_argument("--domains", action="store_true", help="also check domain indices of every arrow")
    p.add_argument("--inject-fault", action="store_true", help="corrupt the complex to exercise the checks")
    p.add_argument("--omit", help="1-based row,column for the census check")
    p.add_argument("--max-n", type=int, default=7, help="largest grid size accepted")

    p = sub.add_parser("moves", help="apply grid moves and print the result")
    p.add_argument("path")
    p.add_argument("ops", nargs="*", help="rows[:k] columns[:k] transpose mirror stabilize[:column]")
    p.add_argument("--format", dest="fmt", choices=("tsv", "json"), default="tsv")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    window = parse_window(ns.window) if getattr(ns, "window", None) else None
    omit = parse_omit(ns.omit) if getattr(ns, "omit", None) else None
    return RunConfig(
        command=ns.command, path=ns.path, window=window, omit=omit,
        corner=getattr(ns, "corner", "vertical-inside"), threads=getattr(ns, "threads", 1), fmt=ns.fmt,
        use_symmetry=getattr(ns, "use_symmetry", False), domains=getattr(ns, "domains", False),
        max_generators=getattr(ns, "max_generators", 10 ** 7), max_n=getattr(ns, "max_n", 7),
        inject_fault=getattr(ns, "inject_fault", False), ops=tuple(getattr(ns, "ops", ())),
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        g = load_grid(cfg.path)
        code, text = COMMANDS[cfg.command](cfg, g)
    except (InputError, GridError, OvalError, ComplexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GeneratorBudgetError, CeilingError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DivisionError, GradingMismatch) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    sys.stdout.write(text)
    return code

