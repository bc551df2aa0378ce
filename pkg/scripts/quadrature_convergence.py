#!/usr/bin/env python3
"""Show how the phase-space resolution of identity converges with quadrature
node counts for a two-index coherent family, and locate the exactness
threshold (radial >= max(K, L), angular >= max(2K-1, 2L-1)).

Usage: python3 scripts/quadrature_convergence.py [--levels 4] [--blocks 3]
"""
import argparse

import numpy as np

import gframes as gf
from gframes import coherent
from gframes.errors import InsufficientNodes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=4, help="K, levels per block")
    ap.add_argument("--blocks", type=int, default=3, help="L, block count")
    args = ap.parse_args()

    K, L = args.levels, args.blocks
    fs = coherent.build_fock(gf.make_gon_basis(K * L, (K,) * L))
    I = np.eye(K * L)
    rad_min, ang_min = max(K, L), max(2 * K - 1, 2 * L - 1)
    print(f"K={K}, L={L}: exactness thresholds radial={rad_min}, "
          f"angular={ang_min}")
    print(f"{'radial':>8} {'angular':>8} {'identity error':>16}")
    for radial in range(1, rad_min + 3):
        for angular in range(1, ang_min + 3):
            try:
                Q = coherent.quadrature_identity(fs, radial, angular)
            except InsufficientNodes:
                continue
            err = float(np.linalg.norm(Q - I))
            marker = "  <- threshold" if (radial, angular) == (rad_min, ang_min) else ""
            print(f"{radial:8d} {angular:8d} {err:16.3e}{marker}")


if __name__ == "__main__":
    main()
