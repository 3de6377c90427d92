"""Alexander polynomial of a knot grid from the winding-number determinant.

``det(t^a(c, r))`` over the lattice points ``0 <= c, r < n`` equals
``+-t^k (1 - t)^(n-1) Delta(t)``.  This goes through sympy and never touches
the Maslov grading or the generator enumeration, so it serves as an
independent check on both.
"""

from __future__ import annotations

import sympy
from sympy.polys.matrices import DomainMatrix

from .grid import GridDiagram, trace_components, winding_field
from .poly import Laurent

_t = sympy.Symbol("t")


def winding_determinant(g: GridDiagram) -> sympy.Expr:
    t = trace_components(g)
    if t.component_count != 1:
        raise ValueError("the determinant oracle handles knots only")
    w = winding_field(g, t).values[0]
    low = min(w[c][r] for c in range(g.n) for r in range(g.n))
    m = sympy.Matrix(g.n, g.n, lambda c, r: _t ** (w[c][r] - low))
    dm = DomainMatrix.from_Matrix(m).convert_to(sympy.ZZ[_t])
    return sympy.expand(dm.domain.to_sympy(dm.det()))


def alexander_by_determinant(g: GridDiagram) -> Laurent:
    """Symmetric, ``Delta(1) = 1`` normalised Alexander polynomial of a knot grid."""
    det = winding_determinant(g)
    if det == 0:
        raise ValueError("winding determinant vanishes")
    quotient, rem = sympy.div(sympy.Poly(det, _t), sympy.Poly((1 - _t) ** (g.n - 1), _t))
    if not rem.is_zero:
        raise ArithmeticError("determinant is not divisible by (1 - t)^(n-1)")
    coeffs = dict(zip((m[0] for m in quotient.monoms()), (int(c) for c in quotient.coeffs())))
    lo, hi = min(coeffs), max(coeffs)
    if (lo + hi) % 2:
        raise ArithmeticError("Alexander polynomial has odd span")
    mid = (lo + hi) // 2
    poly = Laurent.from_coefficients({e - mid: c for e, c in coeffs.items()})
    if poly.at_one() < 0:
        poly = -poly
    return poly


def expected_euler(delta: Laurent, n: int) -> Laurent:
    """(1 - t^-1)^(n-1) * Delta(t), the graded Euler characteristic of a knot grid complex."""
    return (Laurent({(0,): 1, (-2,): -1}, nvars=1) ** (n - 1)) * delta
