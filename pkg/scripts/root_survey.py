"""How close do Ehrhart roots of random lattice simplices come to the disc boundary?

For each dimension, computes the Ehrhart polynomial and roots of a seeded
corpus of random simplices and writes one CSV row per dimension with the
largest observed |z+1/2|, its ratio to d(d-1/2), and the old 1+(d+1)! bound.

    python3 scripts/root_survey.py --dims 2 3 4 5 --trials 100 --bound 3
"""

import argparse
import csv
import sys
import time

from ehrhart_roots.bounds import bddps_bound, braun_disc, summarize_checks, verify_roots
from ehrhart_roots.lattice import ehrhart_many, simplex_corpus
from ehrhart_roots.roots import find_roots


def survey(d, trials, bound, seed, jobs):
    results = ehrhart_many(simplex_corpus(d, trials, bound, seed), workers=jobs)
    checks = []
    nonconverged = 0
    for r in results:
        rs = find_roots(r.polynomial)
        if not rs.converged:
            nonconverged += 1
            continue
        checks += verify_roots(rs, d)
    s = summarize_checks(checks)
    radius = braun_disc(d).radius_float
    return {
        "d": d,
        "simplices": len(results),
        "nonconverged": nonconverged,
        "max_abs_z_plus_half": s.max_distance,
        "ratio_to_radius": s.max_distance / radius,
        "braun_radius": radius,
        "bddps": bddps_bound(d),
        "violations": s.violations,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    writer = None
    for d in args.dims:
        start = time.perf_counter()
        row = survey(d, args.trials, args.bound, args.seed, args.jobs)
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row), lineterminator="\n")
            writer.writeheader()
        writer.writerow(row)
        print(f"d={d}: {time.perf_counter() - start:.1f} s", file=sys.stderr)


if __name__ == "__main__":
    main()
