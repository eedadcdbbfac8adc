"""Where does the half-plane test stop certifying?  Compare with d(d-1/2).

Scans a square grid around -1/2 with the basis C(t+d-j, d) and reports the
largest |z+1/2| among grid points the test could not certify.  The disc
bound promises this never exceeds d(d-1/2); the ratio shows how much room
the proof leaves on the grid.

    python3 scripts/no_root_zone.py --dims 1 2 3 4 5 6 --points 401
"""

import argparse

import numpy as np

from ehrhart_roots.basis import basis_polynomials
from ehrhart_roots.bounds import bound_region_scan, braun_disc


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3, 4, 5, 6])
    ap.add_argument("--points", type=int, default=401, help="grid points per side")
    args = ap.parse_args()

    print("d,radius,max_uncertified,ratio")
    for d in args.dims:
        radius = braun_disc(d).radius_float
        half = 1.25 * radius
        step = 2 * half / (args.points - 1)
        grid = bound_region_scan(basis_polynomials(d), -0.5 - half, -0.5 + half, -half, half, step)
        Z = grid.re[None, :] + 1j * grid.im[:, None]
        dist = np.abs(Z + 0.5)[~grid.valid]
        worst = float(dist.max()) if dist.size else 0.0
        print(f"{d},{radius:g},{worst:.6g},{worst / radius:.4f}")


if __name__ == "__main__":
    main()
