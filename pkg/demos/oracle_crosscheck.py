"""Compare the exact search against subset enumeration on random graphs."""

import argparse
import time

from sclub import ProblemSpec, brute_force_max, solve_max
from sclub.generators import gen_random_clique, gen_random_gnp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=30)
    ap.add_argument("--n", type=int, default=11)
    ap.add_argument("--p", type=float, default=0.4)
    ap.add_argument("--rng-seed", type=int, default=0)
    args = ap.parse_args()

    t_search = t_brute = 0.0
    mismatches = 0
    for i in range(args.graphs):
        g = gen_random_gnp(args.n, args.p, args.rng_seed + i)
        seeds = gen_random_clique(g, 2, args.rng_seed + i)
        for spec in (
            ProblemSpec("vt", 3, 1),
            ProblemSpec("et", 2, 1),
            ProblemSpec("seeded", 2, seeds=seeds),
        ):
            t0 = time.perf_counter()
            a = solve_max(g, spec)
            t1 = time.perf_counter()
            b = brute_force_max(g, spec)
            t2 = time.perf_counter()
            t_search += t1 - t0
            t_brute += t2 - t1
            if a.optimum_size != b.optimum_size:
                mismatches += 1
                print(f"graph {i} {spec.variant.value}: search {a.optimum_size}, brute force {b.optimum_size}")
    print(f"{3 * args.graphs} problems, {mismatches} mismatches")
    print(f"search {t_search:.2f}s, brute force {t_brute:.2f}s")


if __name__ == "__main__":
    main()
