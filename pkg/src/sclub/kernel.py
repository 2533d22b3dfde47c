"""Data reduction, yes-instance shortcuts and Turing-kernel decomposition.

Reduction rules run to a fixpoint and return the reduced graph together with a
:class:`KernelTrace`.  Rules that delete vertices relabel the survivors to
``0..n'-1`` in increasing original id; ``trace.kept[i]`` is the original id of
new vertex ``i``.

Shortcut functions work on an already reduced graph and return a verified
:class:`~sclub.properties.Certificate` (in that graph's ids) or ``None``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InapplicableError, InputError
from .graph import (
    Edge,
    Graph,
    bfs_distances,
    build_graph,
    induced_subgraph,
    neighborhood,
    vertex_triangle_counts,
)
from .properties import (
    Certificate,
    ProblemSpec,
    Variant,
    verify_edge_triangle_club,
    verify_seeded_club,
    verify_vertex_triangle_club,
)


@dataclass
class KernelTrace:
    removed_vertices: list[int] = field(default_factory=list)
    removed_edges: list[Edge] = field(default_factory=list)
    shortcut_witness: Certificate | None = None
    infeasible: bool = False
    rounds: int = 0
    per_round: list[int] = field(default_factory=list)
    isolated: list[int] = field(default_factory=list)
    kept: tuple[int, ...] = ()

    def summary(self) -> dict:
        return {
            "removed_vertices": len(self.removed_vertices),
            "removed_edges": len(self.removed_edges),
            "rounds": self.rounds,
            "isolated": len(self.isolated),
            "per_round": list(self.per_round),
            "infeasible": self.infeasible,
            "shortcut": self.shortcut_witness is not None,
        }


@dataclass(frozen=True)
class TuringSubinstance:
    center: tuple[int, ...]
    vertex_universe: frozenset[int]
    bound: int


def _relabel(g: Graph, keep: set[int], trace: KernelTrace) -> Graph:
    order = sorted(keep)
    trace.kept = tuple(order)
    if not order:
        return build_graph(0, [])
    return induced_subgraph(g, order)[0]


def rr1_vertex_triangle_prune(g: Graph) -> tuple[Graph, KernelTrace]:
    """Delete vertices lying in no triangle, repeatedly."""
    trace = KernelTrace()
    alive = set(range(g.n))
    while True:
        counts = vertex_triangle_counts(g, alive)
        dead = sorted(v for v, c in counts.items() if c == 0)
        if not dead:
            break
        trace.rounds += 1
        trace.per_round.append(len(dead))
        trace.removed_vertices.extend(dead)
        alive.difference_update(dead)
    return _relabel(g, alive, trace), trace


def rr2_edge_triangle_prune(g: Graph) -> tuple[Graph, KernelTrace]:
    """Delete edges lying in no triangle, repeatedly; vertex ids are unchanged."""
    trace = KernelTrace(kept=tuple(range(g.n)))
    alive = set(g.edges())
    while True:
        adj = [set() for _ in range(g.n)]
        for u, v in alive:
            adj[u].add(v)
            adj[v].add(u)
        dead = sorted((u, v) for u, v in alive if not adj[u] & adj[v])
        if not dead:
            break
        trace.rounds += 1
        trace.per_round.append(len(dead))
        trace.removed_edges.extend(dead)
        alive.difference_update(dead)
    out = build_graph(g.n, alive)
    trace.isolated = [v for v in range(out.n) if not out.adjacency[v]]
    return out, trace


def rr3_seed_distance_prune(g: Graph, W, s: int) -> tuple[Graph, KernelTrace]:
    """Delete vertices at distance ``>= s + 1`` from some seed, repeatedly.

    Removing a seed makes the instance infeasible (``trace.infeasible``); the
    graph returned then is the remainder at that point.
    """
    W = frozenset(W)
    if not W:
        raise InputError("seed set must be non-empty")
    trace = KernelTrace()
    alive = set(range(g.n))
    while True:
        far = set()
        for w in sorted(W):
            dist = bfs_distances(g, w, alive)
            far.update(v for v in alive if dist[v] > s)
        if not far:
            break
        trace.rounds += 1
        trace.per_round.append(len(far))
        trace.removed_vertices.extend(sorted(far))
        alive -= far
        if far & W:
            trace.infeasible = True
            break
    return _relabel(g, alive, trace), trace


def map_seeds(trace: KernelTrace, W) -> frozenset[int]:
    """Seed ids of the original graph expressed in the reduced graph's ids."""
    new_id = {old: i for i, old in enumerate(trace.kept)}
    return frozenset(new_id[w] for w in W if w in new_id)


def _has_triangle_vertices(g: Graph) -> bool:
    return any(g.adj_sets[u] & g.adj_sets[v] for u, v in g.edges())


def vt_shortcut(g: Graph, k: int, s: int) -> Certificate | None:
    """Ball of radius ``s//2 - 1`` plus two triangle partners per boundary vertex.

    For the vertex-1-triangle variant on a graph reduced by
    :func:`rr1_vertex_triangle_prune`.
    """
    if s < 4:
        raise InapplicableError("the vertex-triangle shortcut needs s >= 4 (radius s//2 - 1 must be >= 1)")
    radius = s // 2 - 1
    adj = g.adj_sets
    for v in range(g.n):
        ball = neighborhood(g, {v}, radius)
        if len(ball) < k:
            continue
        T = set(ball)
        for w in sorted(neighborhood(g, {v}, radius, closed=False)):
            partners = next(
                ((x, y) for x in sorted(adj[w]) for y in sorted(adj[w] & adj[x]) if x < y),
                None,
            )
            if partners is None:
                raise InputError(f"vertex {w} lies in no triangle; apply the vertex-triangle rule first")
            T.update(partners)
        cert = Certificate(T, origin="shortcut:vt")
        assert verify_vertex_triangle_club(g, T, s, 1), "vt shortcut produced an invalid witness"
        return cert
    return None


def et_shortcut(g: Graph, k: int, s: int) -> Certificate | None:
    """Ball of radius ``s//2`` with its 1-truss as witness.

    For the edge-1-triangle variant on a graph reduced by
    :func:`rr2_edge_triangle_prune`.
    """
    if s < 2:
        raise InapplicableError("the edge-triangle shortcut needs s >= 2")
    for v in range(g.n):
        if k >= 2 and not g.adjacency[v]:
            continue
        ball = neighborhood(g, {v}, s // 2)
        if len(ball) < k:
            continue
        ok, F = verify_edge_triangle_club(g, ball, s, 1)
        assert ok, "et shortcut produced an invalid witness"
        return Certificate(ball, F, origin="shortcut:et")
    return None


def is_clique(g: Graph, W) -> bool:
    W = sorted(W)
    return all(g.has_edge(u, v) for u, v in itertools.combinations(W, 2))


def _path_to(g: Graph, sources, target: int) -> list[int]:
    """Vertices of one shortest path from the set ``sources`` to ``target`` (inclusive)."""
    parent = {w: None for w in sources}
    frontier = sorted(sources)
    while target not in parent:
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        if not nxt:
            raise InputError(f"vertex {target} is unreachable from the seeds")
        frontier = nxt
    path = [target]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def seeded_shortcut_case(g: Graph, W, k: int, s: int) -> tuple[str, Certificate] | None:
    """Try the clique-seed shortcuts in order; return ``(case, witness)`` for the first that fires.

    Cases: ``"a"`` closed neighborhood of a seed (s = 2), ``"b"`` seed ball of
    radius ``(s+1)//2 - 1``, ``"c"`` ball around a boundary vertex joined to
    the seeds by a shortest path, ``"d"`` common neighbors of one chosen
    distance-``(s-1)`` vertex per seed, plus the connecting paths.
    """
    W = frozenset(W)
    if not W:
        raise InputError("seed set must be non-empty")
    if not is_clique(g, W):
        raise InapplicableError("the seeded kernel requires the seed set to induce a clique")

    def done(case, S):
        S = frozenset(S)
        if len(S) >= k and verify_seeded_club(g, S, s, W):
            return case, Certificate(S, origin=f"shortcut:seeded-{case}")
        return None

    if s == 2:
        for w in sorted(W):
            ball = neighborhood(g, {w}, 1)
            if len(ball) >= k:
                hit = done("a", ball)
                assert hit, "seeded shortcut (a) produced an invalid witness"
                return hit
    if s >= 3:
        r = (s + 1) // 2 - 1
        inner = neighborhood(g, W, r)
        if len(inner) >= k:
            hit = done("b", inner)
            assert hit, "seeded shortcut (b) produced an invalid witness"
            return hit
        for v in sorted(neighborhood(g, W, r, closed=False)):
            ball = neighborhood(g, {v}, s // 2)
            S = ball | W | set(_path_to(g, W, v))
            if len(S) >= k:
                hit = done("c", S)
                assert hit, "seeded shortcut (c) produced an invalid witness"
                return hit
    outer = neighborhood(g, W, s, closed=False)
    # s = 1 leaves no middle vertex to route common neighbors through
    if s >= 2 and len(outer) >= k ** (2 * len(W) + 1):
        Z = _pigeonhole_witness(g, W, k, s, outer)
        if Z is not None:
            hit = done("d", Z)
            assert hit, "seeded shortcut (d) produced an invalid witness"
            return hit
    return None


def _pigeonhole_witness(g: Graph, W, k, s, outer):
    seeds = sorted(W)
    dists = {w: bfs_distances(g, w) for w in seeds}
    layers = [sorted(v for v in range(g.n) if dists[w][v] == s - 1) for w in seeds]
    adj = g.adj_sets
    for choice in itertools.product(*layers):
        P = set(outer)
        for u in choice:
            P &= adj[u]
        if len(P) < k:
            continue
        U = set()
        for w, u in zip(seeds, choice):
            U.update(_path_to(g, {w}, u))
        return P | set(W) | U
    return None


def seeded_shortcut(g: Graph, W, k: int, s: int) -> Certificate | None:
    hit = seeded_shortcut_case(g, W, k, s)
    return None if hit is None else hit[1]


def vertex_turing_bound(k: int, s: int) -> int:
    if s in (4, 7):
        return k**4
    if s == 5:
        return k**5
    if s == 6 or s >= 8:
        return k**3
    raise InapplicableError(
        f"vertex-triangle s-club with l=1 and s={s} has no Turing kernel: "
        "the problem is W[1]-hard for s in {2, 3}"
    )


def edge_turing_bound(k: int, s: int) -> int:
    if s < 2:
        raise InapplicableError("edge-triangle s-club Turing kernel needs s >= 2 (ball radius s//2 must be positive)")
    return k**2 if s % 2 == 0 else k**3


def turing_subinstances(g: Graph, spec: ProblemSpec) -> list[TuringSubinstance] | Certificate:
    """Split a reduced instance into bounded neighborhoods, or return a shortcut witness.

    The graph must already be reduced by the rule matching ``spec.variant``
    (and seeds expressed in its ids).  Raises :class:`InapplicableError` for
    parameter combinations without a kernel.
    """
    k, s = spec.k, spec.s
    variant = spec.variant
    if variant.uses_triangles and spec.ell != 1:
        raise InapplicableError(
            f"no Turing kernel for l={spec.ell}: triangle s-club variants are W[1]-hard for l >= 2"
        )
    if variant is Variant.VERTEX_TRIANGLE:
        bound = vertex_turing_bound(k, s)
        hit = vt_shortcut(g, k, s)
    elif variant is Variant.EDGE_TRIANGLE:
        bound = edge_turing_bound(k, s)
        hit = et_shortcut(g, k, s)
    elif variant is Variant.SEEDED:
        bound = k**2 + k ** (2 * len(spec.seeds) + 1)
        hit = seeded_shortcut(g, spec.seeds, k, s)
    else:
        raise InapplicableError("plain s-club is not covered by these kernels")
    if hit is not None:
        return hit
    if variant is Variant.SEEDED:
        centers = [tuple(sorted(spec.seeds))]
    else:
        centers = [(v,) for v in range(g.n)]
    out = []
    for c in centers:
        universe = neighborhood(g, c, s)
        if len(universe) > bound:
            raise AssertionError(
                f"universe of {c} has {len(universe)} > {bound} vertices; kernel bound violated"
            )
        out.append(TuringSubinstance(c, universe, bound))
    return out


def reduce_for(g: Graph, spec: ProblemSpec) -> tuple[Graph, KernelTrace]:
    """Apply the reduction rule matching ``spec.variant`` (identity for plain s-club)."""
    if spec.variant is Variant.VERTEX_TRIANGLE:
        return rr1_vertex_triangle_prune(g)
    if spec.variant is Variant.EDGE_TRIANGLE:
        return rr2_edge_triangle_prune(g)
    if spec.variant is Variant.SEEDED:
        return rr3_seed_distance_prune(g, spec.seeds, spec.s)
    return g, KernelTrace(kept=tuple(range(g.n)))


def reduced_spec(spec: ProblemSpec, trace: KernelTrace) -> ProblemSpec:
    if spec.variant is not Variant.SEEDED or trace.infeasible:
        return spec
    return ProblemSpec(spec.variant, spec.s, spec.ell, spec.k, map_seeds(trace, spec.seeds))
