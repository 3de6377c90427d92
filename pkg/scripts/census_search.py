"""Scan omission pairs and corner rules for short-oval censuses of a grid.

Example::

    python scripts/census_search.py data/5_2.grid --lowest 0

prints, for every valid omission and both corner rules, the generator
counts per Maslov grading at each Alexander level from ``--lowest`` up.
"""

from __future__ import annotations

import argparse

from gridfloer.grid import load_grid
from gridfloer.ovals import build_arrangement, short_census, valid_omissions


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path")
    ap.add_argument("--lowest", type=int, default=0, help="lowest Alexander grading shown")
    args = ap.parse_args()
    g = load_grid(args.path)
    for corner in ("vertical-inside", "horizontal-inside"):
        for omit in valid_omissions(g, corner=corner):
            census = short_census(build_arrangement(g, omit, corner=corner), window=[(2 * args.lowest, 10 ** 6)])
            levels = []
            for a in sorted({k[0][0] for k in census}, reverse=True):
                by_m = census.at_alexander((a,))
                levels.append(f"A={a // 2}: " + ",".join(f"{c}@M{m}" for m, c in sorted(by_m.items(), reverse=True)))
            print(f"{corner}\tomit {omit[0] + 1},{omit[1] + 1}\t" + "  ".join(levels))


if __name__ == "__main__":
    main()
