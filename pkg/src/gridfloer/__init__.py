"""Hat knot/link Floer homology over GF(2) from grid diagrams."""

from .grid import (
    GridDiagram,
    GridError,
    LinkTrace,
    cyclic_permute,
    load_grid,
    mirror,
    parse_grid,
    stabilize,
    trace_components,
    transpose,
    winding_field,
)
from .invariants import ComputeConfig, HFKResult, compute_hfk

__all__ = [
    "ComputeConfig",
    "GridDiagram",
    "GridError",
    "HFKResult",
    "LinkTrace",
    "compute_hfk",
    "cyclic_permute",
    "load_grid",
    "mirror",
    "parse_grid",
    "stabilize",
    "trace_components",
    "transpose",
    "winding_field",
]
