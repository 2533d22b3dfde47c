"""Walk through reduction, shortcut and neighborhood decomposition on one random graph."""

import argparse

from sclub import InapplicableError, ProblemSpec, solve_max
from sclub.generators import gen_random_gnp
from sclub.kernel import reduce_for, reduced_spec, turing_subinstances
from sclub.properties import Certificate, robustness_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--p", type=float, default=0.12)
    ap.add_argument("-k", type=int, default=6)
    ap.add_argument("--rng-seed", type=int, default=3)
    args = ap.parse_args()

    g = gen_random_gnp(args.n, args.p, args.rng_seed)
    print(f"G(n={g.n}, p={args.p}): {g.m} edges")
    for spec in (ProblemSpec("vt", 4, 1, args.k), ProblemSpec("et", 2, 1, args.k), ProblemSpec("et", 3, 1, args.k),
                 ProblemSpec("vt", 3, 1, args.k)):
        red, trace = reduce_for(g, spec)
        print(f"\n{spec.variant.value} s={spec.s} k={spec.k}: reduced to {red.n} vertices / {red.m} edges "
              f"in {trace.rounds} rounds")
        try:
            out = turing_subinstances(red, reduced_spec(spec, trace))
        except InapplicableError as exc:
            print(f"  no kernel: {exc}")
            continue
        if isinstance(out, Certificate):
            print(f"  shortcut witness of size {out.size} ({out.origin})")
        else:
            sizes = sorted(len(t.vertex_universe) for t in out)
            print(f"  {len(out)} universes, largest {sizes[-1] if sizes else 0}, bound {out[0].bound if out else '-'}")
        res = solve_max(g, spec)
        print(f"  optimum {res.optimum_size}, {res.nodes_explored} search nodes")
        if spec.variant.value == "et" and res.optimum_size > 1:
            rep = robustness_report(g, res.best, spec.s, 1, 1)
            print(f"  deleting any one witness edge keeps diameter <= {rep.limit}: {rep.ok} "
                  f"(worst {rep.worst_diameter}, {rep.trials} deletions)")


if __name__ == "__main__":
    main()
