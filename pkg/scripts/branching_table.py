#!/usr/bin/env python3
"""Reproduce the branching table for the incidence-graph families and the
conformal-dimension lower bounds they yield.

Usage: python scripts/branching_table.py [--max-q 4] [--threads N]
"""

from __future__ import annotations

import argparse
import time

from branchforge import geometries as geo
from branchforge.bounds import confdim_lower_branching
from branchforge.branching import max_branching_n
from branchforge.ff import NotPrimePower
from branchforge.graph import diameter, girth, valence_range


def row(name, levi, m, threads):
    g = levi.graph
    t0 = time.time()
    n = max_branching_n(g, m, threads=threads)
    bound = confdim_lower_branching(n, m) if n >= 1 else float("nan")
    print(
        f"{name:<10} V={g.V:<4} girth={int(girth(g)):<3} diam={int(diameter(g)):<3} "
        f"val={valence_range(g)!s:<8} max n@m={m}: {n:<3} "
        f"confdim >= {bound:<8.5f} ({time.time() - t0:.1f}s)"
    )


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-q", type=int, default=4)
    parser.add_argument("--threads", type=int, default=None)
    args = parser.parse_args()

    for q in range(2, args.max_q + 1):
        try:
            row(f"P_{q}", geo.projective_levi(q), 6, args.threads)
        except NotPrimePower:
            continue
        if q > 2:
            row(f"A_{q}", geo.affine_levi(q), 6, args.threads)
            row(f"B_{q}", geo.biaffine_levi(q), 6, args.threads)
        for t in range(3, q + 2):
            row(f"TD({t},{q})", geo.transversal_design_levi(t, q), 6, args.threads)
    row("GQ_2", geo.symplectic_gq_levi(2), 8, args.threads)


if __name__ == "__main__":
    main()
