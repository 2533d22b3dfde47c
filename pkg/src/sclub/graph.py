"""Immutable undirected simple graphs and the distance/triangle primitives.

Vertices are dense integer ids ``0..n-1``.  Vertex sets are plain
``frozenset``s of ids; edge sets are ``frozenset``s of ``(u, v)`` pairs with
``u < v`` (see :func:`edge_key`).

Unreachable distances and unbounded diameters are reported as ``math.inf``
(:data:`UNREACHABLE` / :data:`UNBOUNDED`).  Comparisons such as ``d <= s``
then behave correctly without any large finite stand-in.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError

UNREACHABLE = math.inf
UNBOUNDED = math.inf

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    m: int

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nb) for nb in self.adjacency)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def edges(self) -> Iterator[Edge]:
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix (a fresh copy)."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, nb in enumerate(self.adjacency):
            a[u, list(nb)] = True
        return a


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a :class:`Graph`; duplicate pairs collapse, self-loops are rejected."""
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for pair in edges:
        u, v = (int(x) for x in pair)
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(nb)) for nb in nbrs)
    m = sum(len(nb) for nb in adjacency) // 2
    return Graph(n, adjacency, m)


def _check_mask(g: Graph, mask: Iterable[int] | None) -> frozenset[int] | None:
    if mask is None:
        return None
    mask = frozenset(mask)
    for v in mask:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    return mask


def _neighbors(g: Graph, mask, edge_mask):
    """Neighbor lookup restricted to ``mask`` vertices and ``edge_mask`` edges."""
    adj = g.adj_sets

    def nb(u: int) -> Iterable[int]:
        out = adj[u]
        if mask is not None:
            out = out & mask
        if edge_mask is not None:
            out = [w for w in out if edge_key(u, w) in edge_mask]
        return out

    return nb


def bfs_distances(
    g: Graph,
    source: int,
    mask: Iterable[int] | None = None,
    edge_mask: Iterable[Edge] | None = None,
) -> list[float]:
    """Shortest-path distances from ``source`` in the masked subgraph.

    ``mask`` restricts to an induced subgraph, ``edge_mask`` further restricts
    to the listed edges.  Vertices that cannot be reached, including every
    vertex outside ``mask``, get :data:`UNREACHABLE`.
    """
    mask = _check_mask(g, mask)
    if mask is not None and source not in mask:
        raise InputError(f"source {source} is not in the vertex mask")
    if edge_mask is not None:
        edge_mask = frozenset(edge_key(*e) for e in edge_mask)
    nb = _neighbors(g, mask, edge_mask)
    dist: list[float] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in nb(u):
            if dist[w] == UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def neighborhood(g: Graph, S: Iterable[int], radius: int, closed: bool = True) -> frozenset[int]:
    """``N_i(S)`` (vertices at distance exactly ``radius``) or ``N_i[S]`` when closed."""
    if radius < 0:
        raise InputError("radius must be non-negative")
    S = _check_mask(g, S) or frozenset()
    layer = set(S)
    seen = set(S)
    for _ in range(radius):
        nxt = set()
        for u in layer:
            nxt.update(g.adj_sets[u])
        nxt -= seen
        if not nxt:
            layer = set()
            break
        seen |= nxt
        layer = nxt
    if closed:
        return frozenset(seen)
    return frozenset(layer) if radius > 0 else frozenset(S)


def distance_matrix(
    g: Graph,
    mask: Iterable[int] | None = None,
    edge_mask: Iterable[Edge] | None = None,
) -> tuple[list[int], np.ndarray]:
    """All-pairs distances of the masked subgraph.

    Returns ``(vertices, D)`` where ``vertices`` lists the masked ids in
    increasing order and ``D[i, j]`` is the distance between ``vertices[i]``
    and ``vertices[j]`` (``inf`` if disconnected).
    """
    mask = _check_mask(g, mask)
    verts = sorted(mask) if mask is not None else list(range(g.n))
    pos = {v: i for i, v in enumerate(verts)}
    if edge_mask is None:
        pairs = [(u, v) for u, v in g.edges() if u in pos and v in pos]
    else:
        pairs = []
        for e in edge_mask:
            u, v = edge_key(*e)
            if u in pos and v in pos and g.has_edge(u, v):
                pairs.append((u, v))
    k = len(verts)
    if not pairs:
        d = np.full((k, k), np.inf)
        np.fill_diagonal(d, 0)
        return verts, d
    rows = [pos[u] for u, _ in pairs]
    cols = [pos[v] for _, v in pairs]
    adj = csr_matrix((np.ones(len(pairs)), (rows, cols)), shape=(k, k))
    return verts, shortest_path(adj, directed=False, unweighted=True)


def diameter(
    g: Graph,
    mask: Iterable[int] | None = None,
    edge_mask: Iterable[Edge] | None = None,
) -> float:
    """Largest pairwise distance; :data:`UNBOUNDED` when disconnected."""
    mask = _check_mask(g, mask)
    if (mask is not None and not mask) or g.n == 0:
        raise InputError("diameter of an empty vertex set is undefined")
    _, d = distance_matrix(g, mask, edge_mask)
    top = d.max()
    return UNBOUNDED if np.isinf(top) else int(top)


def vertex_triangle_counts(g: Graph, mask: Iterable[int] | None = None) -> dict[int, int]:
    """Number of triangles of the masked induced subgraph through each vertex."""
    mask = _check_mask(g, mask)
    verts = sorted(mask) if mask is not None else range(g.n)
    inside = mask if mask is not None else None
    adj = g.adj_sets
    counts = {}
    for v in verts:
        nb = adj[v] if inside is None else adj[v] & inside
        # each triangle through v is seen once per ordered neighbor pair
        counts[v] = sum(len(adj[u] & nb) for u in nb) // 2
    return counts


def edge_triangle_counts(
    g: Graph,
    mask: Iterable[int] | None = None,
    edge_mask: Iterable[Edge] | None = None,
) -> dict[Edge, int]:
    """Common-neighbor count of every surviving edge within the masked subgraph."""
    mask = _check_mask(g, mask)
    nbrs = _restricted_adjacency(g, mask, edge_mask)
    return {(u, v): len(nbrs[u] & nbrs[v]) for u in nbrs for v in nbrs[u] if u < v}


def _restricted_adjacency(g: Graph, mask, edge_mask) -> dict[int, set[int]]:
    verts = mask if mask is not None else range(g.n)
    if edge_mask is None:
        return {v: set(g.adj_sets[v] & mask) if mask is not None else set(g.adj_sets[v]) for v in verts}
    nbrs: dict[int, set[int]] = {v: set() for v in verts}
    for e in edge_mask:
        u, v = edge_key(*e)
        if u in nbrs and v in nbrs and g.has_edge(u, v):
            nbrs[u].add(v)
            nbrs[v].add(u)
    return nbrs


def truss_peel(
    g: Graph,
    ell: int,
    mask: Iterable[int] | None = None,
    edge_mask: Iterable[Edge] | None = None,
) -> frozenset[Edge]:
    """Largest edge set in which every edge lies in at least ``ell`` triangles.

    Works inside the subgraph induced by ``mask`` (optionally starting from
    ``edge_mask`` instead of all induced edges).  Qualifying edge sets are
    closed under union, so the fixpoint of repeatedly deleting sub-threshold
    edges is the unique maximum regardless of deletion order.
    """
    if ell < 1:
        raise InputError("triangle threshold must be at least 1")
    mask = _check_mask(g, mask)
    nbrs = _restricted_adjacency(g, mask, edge_mask)
    support = {(u, v): len(nbrs[u] & nbrs[v]) for u in nbrs for v in nbrs[u] if u < v}
    work = deque(e for e, c in support.items() if c < ell)
    while work:
        e = work.popleft()
        if e not in support:
            continue
        u, v = e
        del support[e]
        nbrs[u].discard(v)
        nbrs[v].discard(u)
        for w in nbrs[u] & nbrs[v]:
            for f in (edge_key(u, w), edge_key(v, w)):
                support[f] -= 1
                if support[f] == ell - 1:
                    work.append(f)
    return frozenset(support)


def induced_subgraph(g: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """``G[S]`` relabelled to ``0..|S|-1`` in increasing id order, plus the old->new map."""
    S = _check_mask(g, S)
    if not S:
        raise InputError("induced subgraph of an empty vertex set")
    order = sorted(S)
    new_id = {v: i for i, v in enumerate(order)}
    edges = [(new_id[u], new_id[v]) for u, v in g.edges() if u in S and v in S]
    return build_graph(len(order), edges), new_id


def connected_components(g: Graph, mask: Iterable[int] | None = None) -> list[frozenset[int]]:
    mask = _check_mask(g, mask)
    todo = set(mask) if mask is not None else set(range(g.n))
    comps = []
    for v in sorted(todo):
        if v not in todo:
            continue
        dist = bfs_distances(g, v, mask)
        comp = frozenset(u for u in todo if dist[u] != UNREACHABLE)
        todo -= comp
        comps.append(comp)
    return comps
