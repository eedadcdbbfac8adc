"""Write root-scatter SVGs for the standard families.

    python3 scripts/family_plots.py --out plots --max-dim 6
"""

import argparse
from pathlib import Path

from ehrhart_roots.lattice import FAMILIES, ehrhart_polynomial, standard_family
from ehrhart_roots.roots import find_roots
from ehrhart_roots.svg import roots_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", default="plots")
    ap.add_argument("--max-dim", type=int, default=6)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in FAMILIES:
        for d in range(1, args.max_dim + 1):
            res = ehrhart_polynomial(standard_family(name, d))
            rs = find_roots(res.polynomial)
            path = out / f"{name}_{d}.svg"
            path.write_text(roots_svg(rs.roots, d, title=f"{name} d={d}: {res.polynomial}"))
            print(path, "converged" if rs.converged else "NOT converged")


if __name__ == "__main__":
    main()
