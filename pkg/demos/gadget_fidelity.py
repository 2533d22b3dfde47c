"""Build hardness gadgets from random Clique instances and check the answers line up."""

import argparse
import random

from sclub import clique_max, solve_decision
from sclub.generators import gen_et, gen_random_gnp, gen_seeded2, gen_seededs, gen_vt2, gen_vts
from sclub.graph import build_graph

BUILDERS = {
    "vt2": lambda src, k, a: gen_vt2(src, k, a.l),
    "vts": lambda src, k, a: gen_vts(src, k, a.l, a.s),
    "et": lambda src, k, a: gen_et(src, max(k, 3), a.l, a.s),
    "seeded2": lambda src, k, a: gen_seeded2(src, k, build_graph(2, [])),
    "seededs": lambda src, k, a: gen_seededs(src, k, build_graph(2, []), a.s),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("construction", choices=sorted(BUILDERS))
    ap.add_argument("-s", type=int, default=3)
    ap.add_argument("-l", type=int, default=2)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--rng-seed", type=int, default=0)
    args = ap.parse_args()

    agree = 0
    for i in range(args.samples):
        rng = random.Random(args.rng_seed + i)
        src = gen_random_gnp(rng.randint(3, 7), 0.5, args.rng_seed + i)
        omega, _ = clique_max(src)
        k = max(1, rng.choice([omega, omega + 1]))
        inst = BUILDERS[args.construction](src, k, args)
        k = inst.source_k
        answer, _, res = solve_decision(inst.graph, inst.spec)
        agree += answer == (omega >= k)
        print(
            f"source n={src.n} m={src.m} omega={omega} k={k} | gadget n={inst.graph.n} "
            f"k'={inst.k_prime} answer={answer} nodes={res.nodes_explored}"
        )
    print(f"{agree}/{args.samples} agree with the clique oracle")


if __name__ == "__main__":
    main()
