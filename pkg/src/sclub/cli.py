"""Command-line entry point: ``sclub {solve,verify,kernelize,generate,oracle}``.

Exit codes: 0 = yes / valid, 1 = no / invalid, 2 = usage, input or
inapplicable-parameter error (the reason goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import generators as gen
from .errors import InapplicableError, InputError
from .graph import build_graph
from .instance import read_certificate, read_instance, serialize_instance, write_certificate
from .kernel import reduce_for, reduced_spec, turing_subinstances
from .properties import Certificate, ProblemSpec, Variant, explain_violation, robustness_report
from .solve import brute_force_max, clique_max, solve_decision, solve_max

DEFAULT_RNG_SEED = 0


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _seed_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed list must be comma-separated integers, got {text!r}") from None


def _spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance", help="instance file (plain edge list or DIMACS); '-' for stdin")
    p.add_argument("--variant", choices=[v.value for v in Variant])
    p.add_argument("-s", type=int, help="diameter bound")
    p.add_argument("-l", type=int, dest="ell", help="triangle threshold")
    p.add_argument("-k", type=int, help="target size")
    p.add_argument("--seed", type=_seed_list, help="seed vertices, 0-based, comma separated")


def _load(args) -> tuple:
    inst = read_instance(_read(args.instance))
    base = inst.spec
    variant = args.variant or (base.variant.value if base else None)
    s = args.s if args.s is not None else (base.s if base else None)
    if variant is None or s is None:
        raise InputError("no problem given: pass --variant and -s or add a 'c spec' line to the instance")
    ell = args.ell if args.ell is not None else (base.ell if base else 1)
    k = args.k if args.k is not None else (base.k if base else 1)
    if args.seed is not None:
        seeds = args.seed
    elif base is not None and base.variant.value == variant:
        seeds = base.seeds
    else:
        seeds = ()
    spec = ProblemSpec(variant, s, ell, k, seeds)
    bad = [w for w in spec.seeds if not 0 <= w < inst.graph.n]
    if bad:
        raise InputError(f"seed vertices outside the graph: {sorted(bad)}")
    return inst, spec


def _cert_doc(cert: Certificate | None) -> dict:
    if cert is None:
        return {"vertices": [], "edges": None}
    edges = None if cert.edges is None else [list(e) for e in sorted(cert.edges)]
    return {"vertices": sorted(cert.vertices), "edges": edges}


def _spec_doc(spec: ProblemSpec) -> dict:
    return {
        "variant": spec.variant.value,
        "s": spec.s,
        "l": spec.ell,
        "k": spec.k,
        "seeds": sorted(spec.seeds),
    }


def _emit(doc: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_solve(args) -> int:
    inst, spec = _load(args)
    g = inst.graph
    start = time.perf_counter()
    if args.decide:
        answer, cert, res = solve_decision(g, spec, args.threads)
        size = res.optimum_size
    else:
        res = solve_max(g, spec, args.threads)
        cert, size = res.best, res.optimum_size
        answer = size >= spec.k and cert is not None
    elapsed = time.perf_counter() - start
    doc = {
        "mode": "decide" if args.decide else "max",
        "spec": _spec_doc(spec),
        "answer": bool(answer),
        "optimum_size": size if not args.decide else None,
        "solution_size": size,
        "certificate": _cert_doc(cert),
        "nodes_explored": res.nodes_explored,
        "used_shortcut": res.used_shortcut,
        "kernel_trace": res.trace.summary() if res.trace else None,
        "threads": args.threads,
        "wall_clock_seconds": round(elapsed, 6),
    }
    if args.certificate_out and cert is not None:
        Path(args.certificate_out).write_text(write_certificate(cert))
    lines = [
        f"answer: {'yes' if answer else 'no'}",
        f"{'optimum' if not args.decide else 'solution size'}: {size}",
        "vertices: " + " ".join(map(str, sorted(cert.vertices))) if cert else "vertices: -",
        f"nodes explored: {res.nodes_explored}",
        f"shortcut used: {res.used_shortcut}",
        f"time: {elapsed:.3f}s",
    ]
    _emit(doc, args.json, lines)
    return 0 if answer else 1


def cmd_verify(args) -> int:
    inst, spec = _load(args)
    cert = read_certificate(_read(args.certificate))
    problem = explain_violation(inst.graph, spec, cert)
    doc = {"spec": _spec_doc(spec), "valid": problem is None, "violation": problem}
    lines = ["valid" if problem is None else f"invalid: {problem}"]
    if problem is None and args.robustness is not None:
        if spec.variant is not Variant.EDGE_TRIANGLE:
            raise InapplicableError("robustness is defined for edge-triangle certificates only")
        rep = robustness_report(inst.graph, cert, spec.s, spec.ell, args.robustness, args.rng_seed)
        doc["robustness"] = {
            "ok": rep.ok,
            "budget": rep.budget,
            "limit": rep.limit,
            "exhaustive": rep.exhaustive,
            "trials": rep.trials,
            "rng_seed": rep.rng_seed,
            "worst_diameter": rep.worst_diameter,
        }
        lines.append(
            f"robustness: {'ok' if rep.ok else 'violated'} (worst diameter {rep.worst_diameter} vs limit {rep.limit}, "
            f"{rep.trials} {'exhaustive' if rep.exhaustive else 'sampled'} deletion sets)"
        )
        if not rep.ok:
            problem = "robustness violated"
    _emit(doc, args.json, lines)
    return 0 if problem is None else 1


def cmd_kernelize(args) -> int:
    inst, spec = _load(args)
    h, trace = reduce_for(inst.graph, spec)
    rspec = reduced_spec(spec, trace)
    doc = {"spec": _spec_doc(spec), "trace": trace.summary(), "kept": list(trace.kept)}
    notes = [f"kept {len(trace.kept)} of {inst.graph.n} vertices, {h.m} edges", f"trace {json.dumps(trace.summary())}"]
    if trace.infeasible:
        doc["result"] = "infeasible"
        notes.append("infeasible: a seed lies too far from another seed")
    else:
        out = turing_subinstances(h, rspec)
        if isinstance(out, Certificate):
            witness = sorted(trace.kept[v] for v in out.vertices)
            doc["result"] = "shortcut"
            doc["shortcut"] = {"origin": out.origin, "vertices": witness}
            notes.append(f"shortcut {out.origin}: " + " ".join(map(str, witness)))
        else:
            doc["result"] = "subinstances"
            doc["subinstances"] = [
                {"center": [trace.kept[c] for c in t.center], "universe": len(t.vertex_universe), "bound": t.bound}
                for t in out
            ]
            largest = max((len(t.vertex_universe) for t in out), default=0)
            bound = out[0].bound if out else None
            notes.append(f"{len(out)} subinstances, largest universe {largest}, bound {bound}")
    doc["instance"] = serialize_instance(h, rspec if not trace.infeasible else None)
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sys.stdout.write(serialize_instance(h, rspec if not trace.infeasible else None, comments=notes))
    return 1 if trace.infeasible else 0


def _build(args, source, H):
    c = args.construction
    if c == "vt2":
        return gen.gen_vt2(source, args.k, args.ell)
    if c == "vts":
        return gen.gen_vts(source, args.k, args.ell, args.s)
    if c == "et":
        return gen.gen_et(source, args.k, args.ell, args.s, ring=args.ring)
    if c == "seeded2":
        return gen.gen_seeded2(source, args.k, H)
    return gen.gen_seededs(source, args.k, H, args.s)


def cmd_generate(args) -> int:
    if args.source:
        source = read_instance(_read(args.source)).graph
    else:
        source = gen.gen_random_gnp(args.n, args.p, args.rng_seed)
    if args.seed_graph:
        H = read_instance(_read(args.seed_graph)).graph
    else:
        H = build_graph(2, [])
    if args.construction == "gnp":
        text = serialize_instance(source, comments=[f"gnp n={args.n} p={args.p} rng_seed={args.rng_seed}"])
    else:
        inst = _build(args, source, H)
        comments = [
            f"gadget construction={inst.construction} k_prime={inst.k_prime} source_k={inst.source_k}",
            f"source n={source.n} edges=" + ",".join(f"{u}-{v}" for u, v in source.edges()),
        ]
        text = serialize_instance(inst.graph, inst.spec, inst.layout, comments)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    if args.clique:
        # no problem spec needed; -k (default 1) is the clique size asked for
        size, members = clique_max(read_instance(_read(args.instance)).graph)
        doc = {"clique_size": size, "vertices": sorted(members)}
        _emit(doc, args.json, [f"maximum clique: {size}", "vertices: " + " ".join(map(str, sorted(members)))])
        return 0 if size >= (args.k or 1) else 1
    inst, spec = _load(args)
    g = inst.graph
    res = brute_force_max(g, spec)
    answer = res.optimum_size >= spec.k and res.best is not None
    doc = {"spec": _spec_doc(spec), "optimum_size": res.optimum_size, "certificate": _cert_doc(res.best),
           "subsets_checked": res.nodes_explored}
    lines = [f"optimum: {res.optimum_size}",
             "vertices: " + (" ".join(map(str, sorted(res.best.vertices))) if res.best else "-")]
    _emit(doc, args.json, lines)
    return 0 if answer else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sclub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact maximum or decision search")
    _spec_flags(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--max", dest="decide", action="store_false", help="find a maximum solution (default)")
    mode.add_argument("--decide", dest="decide", action="store_true", help="stop at the first solution of size >= k")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--certificate-out", metavar="FILE", help="write the certificate for 'verify'")
    p.set_defaults(func=cmd_solve, decide=False)

    p = sub.add_parser("verify", help="check a certificate file independently of the solver")
    _spec_flags(p)
    p.add_argument("certificate", help="one vertex id per line, optional 'edges' section")
    p.add_argument("--robustness", type=int, metavar="BUDGET", help="also delete up to BUDGET witness edges")
    p.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kernelize", help="apply reduction rules and the kernel decomposition")
    _spec_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("generate", help="build a hardness-gadget instance or a random graph")
    p.add_argument("--construction", required=True, choices=[*gen.CONSTRUCTIONS, "gnp"])
    p.add_argument("--source", help="Clique source graph file (default: random G(n, p))")
    p.add_argument("--seed-graph", help="seed shape H for the seeded constructions (default: two isolated vertices)")
    p.add_argument("-k", type=int, default=3, help="clique size of the source instance")
    p.add_argument("-l", type=int, dest="ell", default=2)
    p.add_argument("-s", type=int, default=3)
    p.add_argument("--ring", choices=["ring", "literal"], default="ring", help="index wrap-around for 'et'")
    p.add_argument("--n", type=int, default=6, help="random source vertex count")
    p.add_argument("--p", type=float, default=0.5, help="random source edge probability")
    p.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="brute-force optimum (small instances only)")
    _spec_flags(p)
    p.add_argument("--clique", action="store_true", help="maximum clique instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InputError, InapplicableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
