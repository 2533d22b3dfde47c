"""Exact search for maximum (seeded / triangle) s-clubs, plus brute-force oracles.

The search works universe by universe: every solution containing ``v`` lies in
``N_s[v]``, so each vertex ``v`` (in increasing id) gets a depth-first
branch-and-bound over ``N_s[v]`` minus earlier centers, with ``v`` forced.
Seeded instances use a single universe with the seeds forced.

Each search node is tightened to a fixpoint before branching:

* triangle peeling (vertex variant: vertices with < l triangles; edge variant:
  truss peel of the live edges, then isolated vertices),
* dropping vertices outside the forced vertices' reach (distance > s),
* dropping vertices whose s-ball inside the candidate is no larger than the
  incumbent (they cannot be part of an improving solution).

All three are sound because triangle counts only drop and distances only grow
when vertices or edges are removed.

An untightenable node with a pair ``x, y`` at distance > s (the farthest
pair, ties to the smallest ids; ``x`` the endpoint of higher degree) is split
into "drop x" and "keep x as forced, drop y".  The maximum over both branches
is the maximum of the node.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError
from .graph import Graph, neighborhood
from .kernel import (
    KernelTrace,
    et_shortcut,
    is_clique,
    reduce_for,
    reduced_spec,
    seeded_shortcut,
    vt_shortcut,
)
from .properties import (
    Certificate,
    ProblemSpec,
    Variant,
    verify,
    verify_edge_triangle_club,
    verify_seeded_club,
    verify_vertex_triangle_club,
    is_s_club,
)

BRUTE_FORCE_LIMIT = 20
CLIQUE_LIMIT = 25


@dataclass
class SolveResult:
    best: Certificate | None
    optimum_size: int
    nodes_explored: int = 0
    used_shortcut: bool = False
    per_subinstance_stats: list[dict] = field(default_factory=list)
    trace: KernelTrace | None = None


def _check_spec(g: Graph, spec: ProblemSpec) -> None:
    bad = sorted(w for w in spec.seeds if not 0 <= w < g.n)
    if bad:
        raise InputError(f"seed vertices outside the graph: {bad}")


class _Incumbent:
    """Best size so far, shared between universe workers."""

    def __init__(self, size: int, target: int | None):
        self.size = size
        self.cert: tuple | None = None
        self.target = target
        self.lock = threading.Lock()

    @property
    def done(self) -> bool:
        return self.target is not None and self.size >= self.target

    def offer(self, verts: tuple, edges) -> None:
        with self.lock:
            if len(verts) > self.size and not self.done:
                self.size = len(verts)
                self.cert = (verts, edges)


class _UniverseSearch:
    def __init__(self, g: Graph, spec: ProblemSpec, universe: list[int], forced: list[int], inc: _Incumbent):
        self.spec = spec
        self.s = spec.s
        self.ell = spec.ell
        self.variant = spec.variant
        self.universe = np.asarray(universe)
        pos = {v: i for i, v in enumerate(universe)}
        self.A = np.zeros((len(universe), len(universe)), dtype=np.float32)
        for v in universe:
            nb = [pos[w] for w in g.adjacency[v] if w in pos]
            self.A[pos[v], nb] = 1.0
        self.forced = np.asarray(sorted(pos[f] for f in forced))
        self.inc = inc
        self.nodes = 0

    def run(self) -> None:
        idx = np.arange(len(self.universe))
        L = self.A.copy() if self.variant is Variant.EDGE_TRIANGLE else None
        self._dfs(idx, L, self.forced)

    def _peel(self, idx, L):
        """Triangle peeling; returns the surviving (idx, L, M) with M the structure matrix."""
        ell = self.ell
        if self.variant is Variant.VERTEX_TRIANGLE:
            while True:
                M = self.A[np.ix_(idx, idx)]
                tri = ((M @ M) * M).sum(axis=1) / 2
                low = tri < ell
                if not low.any():
                    return idx, None, M
                idx = idx[~low]
                if len(idx) == 0:
                    return idx, None, M[:0, :0]
        if self.variant is Variant.EDGE_TRIANGLE:
            while True:
                support = (L @ L) * L
                weak = (L > 0) & (support < ell)
                if not weak.any():
                    break
                L = np.where(weak, 0.0, L).astype(np.float32)
            if len(idx) > 1:
                alive = L.any(axis=1)
                if not alive.all():
                    idx = idx[alive]
                    L = L[np.ix_(alive, alive)]
            return idx, L, L
        return idx, None, self.A[np.ix_(idx, idx)]

    def _tighten(self, idx, L, forced):
        """Reduce a node to a fixpoint; ``None`` when it cannot beat the incumbent."""
        s = self.s
        while True:
            if len(idx) <= self.inc.size or self.inc.done:
                return None
            before = idx
            idx, L, M = self._peel(idx, L)
            if not np.isin(forced, idx).all():
                if (
                    self.variant is Variant.EDGE_TRIANGLE
                    and len(forced) == 1
                    and forced[0] in before
                    and self.inc.size < 1
                ):
                    # the forced vertex lost every witness edge: only the singleton remains
                    self.inc.offer((int(self.universe[forced[0]]),), ())
                return None
            if len(idx) <= self.inc.size:
                return None
            fpos = np.searchsorted(idx, forced)
            D = shortest_path(csr_matrix(M), directed=False, unweighted=True)
            drop = (D[fpos] > s).any(axis=0)
            drop |= (D <= s).sum(axis=1) <= self.inc.size
            if drop[fpos].any():
                return None
            if not drop.any():
                return idx, L, M, D
            keep = ~drop
            idx = idx[keep]
            if L is not None:
                L = L[np.ix_(keep, keep)]

    def _dfs(self, idx, L, forced) -> None:
        self.nodes += 1
        state = self._tighten(idx, L, forced)
        if state is None:
            return
        idx, L, M, D = state
        top = D.max()
        if top <= self.s:
            verts = tuple(int(v) for v in self.universe[idx])
            edges = None
            if L is not None:
                rows, cols = np.nonzero(np.triu(L))
                edges = tuple((verts[i], verts[j]) for i, j in zip(rows, cols))
            self.inc.offer(verts, edges)
            return
        far = np.argwhere(np.triu(D == top, 1))
        i, j = (int(x) for x in far[0])
        deg = M.sum(axis=1)
        # a far pair never has both ends forced: tightening drops anything far from a forced vertex
        first, second = sorted((i, j), key=lambda t: (-deg[t], t))
        if idx[first] in forced:
            first, second = second, first
        # branch 1: drop `first`; branch 2: commit to `first`, which rules out `second`
        for gone, extra in ((first, None), (second, first)):
            if idx[gone] in forced:
                continue
            keep = np.ones(len(idx), dtype=bool)
            keep[gone] = False
            sub_forced = forced if extra is None else np.union1d(forced, [idx[extra]])
            self._dfs(idx[keep], None if L is None else L[np.ix_(keep, keep)], sub_forced)
            if self.inc.done:
                return


def _universes(g: Graph, spec: ProblemSpec) -> list[tuple[tuple[int, ...], list[int]]]:
    if spec.variant is Variant.SEEDED:
        return [(tuple(sorted(spec.seeds)), sorted(neighborhood(g, spec.seeds, spec.s)))]
    out = []
    for v in range(g.n):
        ball = neighborhood(g, {v}, spec.s)
        out.append(((v,), sorted(u for u in ball if u >= v)))
    return out


def _search(g, spec, inc: _Incumbent, threads: int) -> tuple[int, list[dict]]:
    stats = []

    def work(item):
        center, universe = item
        if inc.done or len(universe) <= inc.size:
            return {"center": list(center), "universe": len(universe), "nodes": 0}
        job = _UniverseSearch(g, spec, universe, list(center), inc)
        job.run()
        return {"center": list(center), "universe": len(universe), "nodes": job.nodes}

    items = _universes(g, spec)
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            stats = list(pool.map(work, items))
    else:
        for item in items:
            stats.append(work(item))
            if inc.done:
                break
    return sum(st["nodes"] for st in stats), stats


def _shortcut(g: Graph, spec: ProblemSpec) -> Certificate | None:
    if spec.variant is Variant.VERTEX_TRIANGLE and spec.ell == 1 and spec.s >= 4:
        return vt_shortcut(g, spec.k, spec.s)
    if spec.variant is Variant.EDGE_TRIANGLE and spec.ell == 1 and spec.s >= 2:
        return et_shortcut(g, spec.k, spec.s)
    if spec.variant is Variant.SEEDED and is_clique(g, spec.seeds):
        return seeded_shortcut(g, spec.seeds, spec.k, spec.s)
    return None


def _lift(cert_tuple, trace: KernelTrace, origin: str) -> Certificate:
    verts, edges = cert_tuple
    kept = trace.kept
    vs = [kept[v] for v in verts]
    es = None if edges is None else [(kept[u], kept[v]) for u, v in edges]
    return Certificate(vs, es, origin=origin)


def _lift_cert(cert: Certificate, trace: KernelTrace) -> Certificate:
    return _lift((tuple(cert.vertices), cert.edges), trace, cert.origin)


def _prepare(g: Graph, spec: ProblemSpec):
    _check_spec(g, spec)
    h, trace = reduce_for(g, spec)
    return h, trace, reduced_spec(spec, trace)


def solve_decision(g: Graph, spec: ProblemSpec, threads: int = 1) -> tuple[bool, Certificate | None, SolveResult]:
    """Is there a valid solution of size ``>= spec.k``?  Stops at the first one found."""
    h, trace, rspec = _prepare(g, spec)
    result = SolveResult(None, 0, trace=trace)
    if trace.infeasible or h.n == 0:
        return False, None, result
    hit = _shortcut(h, rspec)
    if hit is not None and hit.size >= spec.k:
        cert = _lift_cert(hit, trace)
        result.best, result.optimum_size, result.used_shortcut = cert, cert.size, True
        return True, cert, result
    inc = _Incumbent(spec.k - 1, spec.k)
    result.nodes_explored, result.per_subinstance_stats = _search(h, rspec, inc, threads)
    if inc.cert is None:
        return False, None, result
    cert = _finish(g, spec, inc.cert, trace)
    result.best, result.optimum_size = cert, cert.size
    return True, cert, result


def _finish(g, spec, cert_tuple, trace) -> Certificate:
    cert = _lift(cert_tuple, trace, "search")
    if spec.variant is not Variant.EDGE_TRIANGLE:
        cert = Certificate(cert.vertices, None, origin="search")
    assert verify(g, spec.with_k(1), cert), f"search produced an invalid certificate {sorted(cert.vertices)}"
    return cert


def solve_max(g: Graph, spec: ProblemSpec, threads: int = 1) -> SolveResult:
    """Exact maximum solution size with a canonical certificate.

    ``spec.k`` is ignored except as the size used to query the shortcut.  The
    reported certificate is the first optimum found by a sequential sweep, so
    it does not depend on ``threads``.
    """
    h, trace, rspec = _prepare(g, spec)
    result = SolveResult(None, 0, trace=trace)
    if trace.infeasible or h.n == 0:
        return result
    inc = _Incumbent(0, None)
    hit = _shortcut(h, rspec)
    if hit is not None:
        result.used_shortcut = True
        inc.size = hit.size
    nodes, stats = _search(h, rspec, inc, threads)
    opt = inc.size
    if opt == 0:
        result.nodes_explored, result.per_subinstance_stats = nodes, stats
        return result
    # canonical certificate: sequential first hit at size opt
    canon = _Incumbent(opt - 1, opt)
    nodes2, stats2 = _search(h, rspec, canon, 1)
    if canon.cert is None and spec.variant is Variant.EDGE_TRIANGLE and opt == 1:
        canon.cert = ((0,), ())
    assert canon.cert is not None and len(canon.cert[0]) == opt, "canonical sweep disagrees with search"
    result.best = _finish(g, spec, canon.cert, trace)
    result.optimum_size = opt
    result.nodes_explored = nodes + nodes2
    result.per_subinstance_stats = stats
    return result


def _verifier(g: Graph, spec: ProblemSpec):
    s, ell = spec.s, spec.ell
    if spec.variant is Variant.VERTEX_TRIANGLE:
        return lambda S: (verify_vertex_triangle_club(g, S, s, ell), None)
    if spec.variant is Variant.EDGE_TRIANGLE:
        return lambda S: verify_edge_triangle_club(g, S, s, ell)
    if spec.variant is Variant.SEEDED:
        return lambda S: (verify_seeded_club(g, S, s, spec.seeds), None)
    return lambda S: (is_s_club(g, S, s), None)


def brute_force_max(g: Graph, spec: ProblemSpec) -> SolveResult:
    """Enumerate vertex subsets from largest to smallest; the first verified one wins."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise InputError(f"brute force is limited to n <= {BRUTE_FORCE_LIMIT}, got n={g.n}")
    _check_spec(g, spec)
    check = _verifier(g, spec)
    fixed = sorted(spec.seeds)
    rest = [v for v in range(g.n) if v not in spec.seeds]
    nodes = 0
    for size in range(len(rest), -1, -1):
        if size + len(fixed) == 0:
            break
        for combo in itertools.combinations(rest, size):
            nodes += 1
            S = fixed + list(combo)
            ok, F = check(S)
            if ok:
                return SolveResult(Certificate(S, F, origin="brute-force"), len(S), nodes)
    return SolveResult(None, 0, nodes)


def clique_max(g: Graph) -> tuple[int, frozenset[int]]:
    """Maximum clique by Bron-Kerbosch with pivoting."""
    if g.n > CLIQUE_LIMIT:
        raise InputError(f"clique oracle is limited to n <= {CLIQUE_LIMIT}, got n={g.n}")
    adj = g.adj_sets
    best: list[int] = []

    def expand(R, P, X):
        nonlocal best
        if not P and not X:
            if len(R) > len(best):
                best = list(R)
            return
        if len(R) + len(P) <= len(best):
            return
        pivot = max(P | X, key=lambda u: (len(adj[u] & P), -u))
        for v in sorted(P - adj[pivot]):
            expand(R + [v], P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    expand([], set(range(g.n)), set())
    return len(best), frozenset(best)


def solve(g: Graph, spec: ProblemSpec, decide: bool = False, threads: int = 1) -> SolveResult:
    """Convenience front end used by the command line."""
    if decide:
        return solve_decision(g, spec, threads)[2]
    return solve_max(g, spec, threads)


__all__ = [
    "SolveResult",
    "solve_max",
    "solve_decision",
    "brute_force_max",
    "clique_max",
    "solve",
]
