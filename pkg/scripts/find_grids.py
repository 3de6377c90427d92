"""Random search for knot grids with a prescribed Alexander polynomial.

Example::

    python scripts/find_grids.py --n 7 --delta 2,-3,2 --count 3 --seed 1

``--delta`` lists the coefficients of the symmetric polynomial from the
top exponent down.  Candidates are filtered by evaluating the winding
determinant at two integers before the exact sympy check.
"""

from __future__ import annotations

import argparse
import random
from fractions import Fraction

from gridfloer.grid import GridDiagram, GridError, trace_components, winding_field
from gridfloer.oracle import alexander_by_determinant
from gridfloer.poly import Laurent


def det_fraction(rows):
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((k for k in range(i, n) if m[k][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for k in range(i + 1, n):
            f = m[k][i] / m[i][i]
            if f:
                m[k] = [a - f * b for a, b in zip(m[k], m[i])]
    return det


def delta_values(delta: Laurent, n: int, t0: int) -> Fraction:
    total = sum(Fraction(t0) ** int(e) * c for e, c in delta.coefficients().items())
    return total * (1 - Fraction(t0)) ** (n - 1)


def matches(g: GridDiagram, delta: Laurent) -> bool:
    tr = trace_components(g)
    if tr.component_count != 1:
        return False
    w = winding_field(g, tr).values[0]
    for t0 in (2, 3):
        det = det_fraction([[Fraction(t0) ** w[c][r] for r in range(g.n)] for c in range(g.n)])
        target = delta_values(delta, g.n, t0)
        if det == 0 or target == 0:
            return False
        ratio = det / target
        # Up to sign and a power of t0.
        ratio = abs(ratio)
        while ratio.numerator % t0 == 0 and ratio != 1:
            ratio /= t0
        while ratio.denominator % t0 == 0 and ratio != 1:
            ratio *= t0
        if ratio != 1:
            return False
    return alexander_by_determinant(g) == delta


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--delta", required=True, help="comma separated coefficients, top exponent first")
    ap.add_argument("--count", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tries", type=int, default=200000)
    args = ap.parse_args(argv)
    coeffs = [int(v) for v in args.delta.split(",")]
    top = (len(coeffs) - 1) // 2
    delta = Laurent.from_coefficients({top - i: c for i, c in enumerate(coeffs)})
    rng = random.Random(args.seed)
    found = 0
    for _ in range(args.tries):
        xs = list(range(args.n))
        os_ = list(range(args.n))
        rng.shuffle(xs)
        rng.shuffle(os_)
        try:
            g = GridDiagram(args.n, tuple(xs), tuple(os_))
        except GridError:
            continue
        if matches(g, delta):
            print(g.to_text().replace("\n", " / ").strip(" /"))
            found += 1
            if found >= args.count:
                break
    return 0 if found else 1


if __name__ == "__main__":
    raise SystemExit(main())
