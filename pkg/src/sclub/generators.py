"""Hardness-gadget instance builders and random graphs.

Every builder reduces a Clique instance ``(source, k)`` to an instance of one of
the s-club variants and records a role label for each generated vertex:
``Role(owner, layer, index)`` where ``owner`` is the source vertex whose
gadget the vertex belongs to (``None`` for shared parts) and ``index`` holds
the 1-based (rings: 0-based) gadget coordinates.

:func:`layout_edges` rebuilds the edge set from the labels alone with a
pairwise adjacency rule, independently of the loops used by the builders.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InapplicableError, InputError
from .graph import Edge, Graph, build_graph, connected_components, edge_key
from .properties import ProblemSpec, Variant


class Role(NamedTuple):
    owner: int | None
    layer: str
    index: tuple[int, ...] = ()

    def __str__(self) -> str:
        owner = "-" if self.owner is None else str(self.owner)
        return " ".join([owner, self.layer, *map(str, self.index)])


@dataclass(frozen=True)
class GadgetParams:
    ell: int
    s: int
    c: int | None = None
    s_star: int | None = None
    ell_star: int | None = None
    x: int | None = None


def smallest_clique_order(ell: int) -> int:
    """Smallest c with C(c-1, 2) >= ell."""
    c = 3
    while math.comb(c - 1, 2) < ell:
        c += 1
    return c


def gadget_params(ell: int, s: int) -> GadgetParams:
    ell_star = -(-ell // 2)
    return GadgetParams(
        ell=ell,
        s=s,
        c=smallest_clique_order(ell),
        s_star=(s - 1) // 2,
        ell_star=ell_star,
        x=6 * ell_star * (s - 1) + ell // 2,
    )


@dataclass(frozen=True)
class GadgetInstance:
    construction: str
    graph: Graph
    k_prime: int
    spec: ProblemSpec
    layout: tuple[Role, ...]
    source: Graph
    source_k: int
    params: GadgetParams
    seed_graph: Graph | None = None
    ring: str = "ring"

    def vertex(self, role: Role) -> int:
        return self._index[role]

    @property
    def _index(self) -> dict[Role, int]:
        return {r: i for i, r in enumerate(self.layout)}


class _Builder:
    def __init__(self):
        self.roles: list[Role] = []
        self.ids: dict[Role, int] = {}
        self.edges: set[Edge] = set()

    def add(self, owner, layer, *index) -> int:
        role = Role(owner, layer, tuple(index))
        self.ids[role] = len(self.roles)
        self.roles.append(role)
        return self.ids[role]

    def __getitem__(self, key) -> int:
        owner, layer, *index = key
        return self.ids[Role(owner, layer, tuple(index))]

    def join(self, a, b) -> None:
        u, v = self[a], self[b]
        if u != v:
            self.edges.add(edge_key(u, v))

    def graph(self) -> Graph:
        return build_graph(len(self.roles), self.edges)


def _check_k(k: int) -> None:
    if k < 1:
        raise InputError(f"clique size k must be >= 1, got {k}")


def gen_vt2(source: Graph, k: int, ell: int) -> GadgetInstance:
    """Vertex-triangle 2-club instance: one clique of order c per source vertex plus a shared clique."""
    _check_k(k)
    if ell < 1:
        raise InputError("l must be >= 1")
    params = gadget_params(ell, 2)
    c = params.c
    b = _Builder()
    for v in range(source.n):
        for i in range(1, c + 1):
            b.add(v, "T", i)
    for i in range(1, c + 1):
        b.add(None, "Y", i)
    for v in range(source.n):
        for i, j in itertools.combinations(range(1, c + 1), 2):
            b.join((v, "T", i), (v, "T", j))
        for i in range(1, c + 1):
            b.join((v, "T", i), (None, "Y", i))
    for i, j in itertools.combinations(range(1, c + 1), 2):
        b.join((None, "Y", i), (None, "Y", j))
    for v, w in source.edges():
        for i in range(1, c // 2 + 1):
            b.join((v, "T", 2 * i - 1), (w, "T", 2 * i))
            b.join((w, "T", 2 * i - 1), (v, "T", 2 * i))
    k_prime = c * (k + 1)
    spec = ProblemSpec(Variant.VERTEX_TRIANGLE, 2, ell, k_prime)
    return GadgetInstance("vt2", b.graph(), k_prime, spec, tuple(b.roles), source, k, params)


def connector_case(s: int, ell: int) -> str:
    if s % 2 == 1:
        return "I"
    return "II" if ell >= 3 else "III"


def gen_vts(source: Graph, k: int, ell: int, s: int) -> GadgetInstance:
    """Vertex-triangle s-club instance (s >= 3) with cascading gadgets of 3*l*s* vertices."""
    _check_k(k)
    if not ((s == 3 and ell >= 1) or (s >= 4 and ell >= 2)):
        raise InapplicableError(
            f"the cascading gadget needs s=3 with l>=1 or s>=4 with l>=2 (got s={s}, l={ell})"
        )
    params = gadget_params(ell, s)
    ss = params.s_star
    L = range(1, ell + 1)
    b = _Builder()
    for v in range(source.n):
        for i in L:
            b.add(v, "P", i)
        for i in L:
            b.add(v, "Q", i)
        for j in range(1, ss + 1):
            for i in L:
                b.add(v, "X", j, i)
        for t in range(1, ss):
            for i in L:
                b.add(v, "Y", t, i)
                b.add(v, "Z", t, i)
    for v in range(source.n):
        for i in L:
            b.join((v, "P", i), (v, "Q", i))
        for i in range(1, ell):
            for j in L:
                b.join((v, "P", i), (v, "X", 1, j))
                b.join((v, "Q", i), (v, "X", 1, j))
        for j in L:
            b.join((v, "P", ell), (v, "X", ss, j))
            b.join((v, "Q", ell), (v, "X", ss, j))
        for t in range(1, ss):
            for i in L:
                b.join((v, "Y", t, i), (v, "Z", t, i))
                b.join((v, "Y", t, i), (v, "X", t, i))
                b.join((v, "Z", t, i), (v, "X", t, i))
                for j in L:
                    if j != i:
                        b.join((v, "Y", t, i), (v, "X", t + 1, j))
                        b.join((v, "Z", t, i), (v, "X", t + 1, j))
    case = connector_case(s, ell)
    for v, w in source.edges():
        if case == "III":
            b.join((v, "P", 1), (w, "X", ss, 1))
            b.join((w, "P", 1), (v, "X", ss, 1))
            continue
        for i in (L if case == "I" else sorted({1, ell})):
            b.join((v, "P", i), (w, "Q", i))
            b.join((v, "Q", i), (w, "P", i))
    k_prime = 3 * ell * k * ss
    spec = ProblemSpec(Variant.VERTEX_TRIANGLE, s, ell, k_prime)
    return GadgetInstance("vts", b.graph(), k_prime, spec, tuple(b.roles), source, k, params)


def ring_modulus(params: GadgetParams, ring: str) -> int:
    """``"ring"``: indices wrap on the x+1 ring positions; ``"literal"``: indices are reduced modulo x."""
    if ring == "ring":
        return params.x + 1
    if ring == "literal":
        return params.x
    raise InputError(f"unknown ring mode {ring!r}")


def gen_et(source: Graph, k: int, ell: int, s: int, ring: str = "ring") -> GadgetInstance:
    """Edge-triangle s-club instance built from banded rings A_v, B_v (and C_v for odd l)."""
    if k < 3:
        raise InputError(f"the ring construction needs k >= 3, got {k}")
    if ell < 2 or s < 2:
        raise InapplicableError(f"the ring construction needs l >= 2 and s >= 2 (got l={ell}, s={s})")
    params = gadget_params(ell, s)
    x, ls = params.x, params.ell_star
    M = ring_modulus(params, ring)
    band = range(-3 * ls, 3 * ls + 1)
    cross = range(0, ell // 2 + 1)
    odd = ell % 2 == 1
    cidx = [i for i in range(x + 1) if i % ls == 0] if odd else []
    b = _Builder()
    for v in range(source.n):
        for i in range(x + 1):
            b.add(v, "A", i)
        for i in range(x + 1):
            b.add(v, "B", i)
        for i in cidx:
            b.add(v, "C", i)
    cset = set(cidx)
    for v in range(source.n):
        for i in range(x + 1):
            for j in band:
                t = (i + j) % M
                if j != 0:
                    b.join((v, "A", i), (v, "A", t))
                    b.join((v, "B", i), (v, "B", t))
                b.join((v, "A", i), (v, "B", t))
        for i in cidx:
            for j in band:
                t = (i + j) % M
                b.join((v, "C", i), (v, "A", t))
                b.join((v, "C", i), (v, "B", t))
                if j != 0 and t in cset:
                    b.join((v, "C", i), (v, "C", t))
    for u, v in source.edges():
        for i in range(x + 1):
            for j in cross:
                t = (i + j) % M
                b.join((v, "A", i), (u, "B", t))
                b.join((u, "A", i), (v, "B", t))
        for i in cidx:
            for j in cross:
                t = (i + j) % M
                b.join((v, "C", i), (u, "B", t))
                b.join((u, "C", i), (v, "B", t))
    if odd:
        k_prime = (ell + 2) * (6 * s - 5) * k
    else:
        k_prime = 2 * (x + 1) * k
    spec = ProblemSpec(Variant.EDGE_TRIANGLE, s, ell, k_prime)
    return GadgetInstance("et", b.graph(), k_prime, spec, tuple(b.roles), source, k, params, ring=ring)


def first_non_edge(H: Graph) -> tuple[int, int]:
    for u, v in itertools.combinations(range(H.n), 2):
        if not H.has_edge(u, v):
            return u, v
    raise InapplicableError("the seed graph is a clique; the 2-club seeded construction needs a non-edge")


def gen_seeded2(source: Graph, k: int, H: Graph) -> GadgetInstance:
    """Seeded 2-club instance: seeds shaped like ``H`` around two joined copies of the source."""
    _check_k(k)
    hu, hv = first_non_edge(H)
    b = _Builder()
    for h in range(H.n):
        b.add(None, "W", h)
    for x in range(source.n):
        b.add(x, "GU")
    for x in range(source.n):
        b.add(x, "GV")
    b.add(None, "P")
    b.add(None, "USTAR")
    b.add(None, "VSTAR")
    for h1, h2 in H.edges():
        b.join((None, "W", h1), (None, "W", h2))
    for x, y in source.edges():
        b.join((x, "GU"), (y, "GU"))
        b.join((x, "GV"), (y, "GV"))
    R = [h for h in range(H.n) if h not in (hu, hv)]
    for x in range(source.n):
        b.join((None, "W", hu), (x, "GU"))
        b.join((None, "W", hv), (x, "GV"))
        b.join((x, "GU"), (x, "GV"))
        b.join((None, "USTAR"), (x, "GU"))
        b.join((None, "VSTAR"), (x, "GV"))
    for h in range(H.n):
        b.join((None, "P"), (None, "W", h))
    for star in ("USTAR", "VSTAR"):
        b.join((None, star), (None, "P"))
        for h in R:
            b.join((None, star), (None, "W", h))
    k_prime = 2 * k + H.n + 3
    seeds = range(H.n)
    spec = ProblemSpec(Variant.SEEDED, 2, 1, k_prime, seeds)
    return GadgetInstance(
        "seeded2", b.graph(), k_prime, spec, tuple(b.roles), source, k, gadget_params(1, 2), seed_graph=H
    )


def split_seed_components(H: Graph) -> tuple[frozenset[int], frozenset[int]]:
    comps = connected_components(H)
    if len(comps) < 2:
        raise InapplicableError("the seed graph is connected; the s>=3 seeded construction needs two components")
    d1 = comps[0]
    return d1, frozenset(range(H.n)) - d1


def gen_seededs(source: Graph, k: int, H: Graph, s: int) -> GadgetInstance:
    """Seeded s-club instance (s >= 3): seed components bridged by a path, source copies by paths."""
    _check_k(k)
    if s < 3:
        raise InapplicableError(f"the path construction needs s >= 3, got {s}")
    d1, d2 = split_seed_components(H)
    b = _Builder()
    for h in range(H.n):
        b.add(None, "W", h)
    for x in range(source.n):
        b.add(x, "G1")
    for x in range(source.n):
        b.add(x, "G2")
    for i in range(1, s):
        b.add(None, "P", i)
    for x in range(source.n):
        for i in range(1, s - 1):
            b.add(x, "Q", i)
    for h1, h2 in H.edges():
        b.join((None, "W", h1), (None, "W", h2))
    for x, y in source.edges():
        b.join((x, "G1"), (y, "G1"))
        b.join((x, "G2"), (y, "G2"))
    for x in range(source.n):
        for h in d1:
            b.join((None, "W", h), (x, "G1"))
        for h in d2:
            b.join((None, "W", h), (x, "G2"))
        chain = [(x, "G1")] + [(x, "Q", i) for i in range(1, s - 1)] + [(x, "G2")]
        for a, c in zip(chain, chain[1:]):
            b.join(a, c)
    for i in range(1, s - 1):
        b.join((None, "P", i), (None, "P", i + 1))
    for h in d1:
        b.join((None, "P", 1), (None, "W", h))
    for h in d2:
        b.join((None, "P", s - 1), (None, "W", h))
    k_prime = s * k + H.n + s - 1
    spec = ProblemSpec(Variant.SEEDED, s, 1, k_prime, range(H.n))
    return GadgetInstance(
        "seededs", b.graph(), k_prime, spec, tuple(b.roles), source, k, gadget_params(1, s), seed_graph=H
    )


def gen_random_gnp(n: int, p: float, rng_seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p), deterministic in ``rng_seed``."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")
    pairs = list(itertools.combinations(range(n), 2))
    coins = np.random.default_rng(rng_seed).random(len(pairs))
    return build_graph(n, [e for e, c in zip(pairs, coins) if c < p])


def gen_random_clique(g: Graph, size: int, rng_seed: int = 0) -> frozenset[int]:
    """A clique of up to ``size`` vertices grown greedily from a random start (for seed sets)."""
    rng = np.random.default_rng(rng_seed)
    order = [int(v) for v in rng.permutation(g.n)]
    if not order:
        return frozenset()
    chosen = [order[0]]
    for v in order[1:]:
        if len(chosen) >= size:
            break
        if all(g.has_edge(v, u) for u in chosen):
            chosen.append(v)
    return frozenset(chosen)


# --- label-based adjacency -------------------------------------------------------------


def _cyclic_offset(i: int, t: int, M: int, offsets) -> bool:
    """Whether ``t == (i + j) mod M`` for some ``j`` in ``offsets``."""
    return any((i + j) % M == t for j in offsets)


def _adjacent_vt2(inst, a: Role, b: Role) -> bool:
    if a.layer == "Y" and b.layer == "Y":
        return True
    if {a.layer, b.layer} == {"T", "Y"}:
        return a.index == b.index
    if a.owner == b.owner:
        return True
    if not inst.source.has_edge(a.owner, b.owner):
        return False
    i, j = a.index[0], b.index[0]
    return (i % 2 == 1 and j == i + 1) or (j % 2 == 1 and i == j + 1)


def _adjacent_vts(inst, a: Role, b: Role) -> bool:
    ell, ss = inst.params.ell, inst.params.s_star
    if a.owner != b.owner:
        if not inst.source.has_edge(a.owner, b.owner):
            return False
        case = connector_case(inst.params.s, ell)
        if case == "III":
            return {(a.layer, a.index), (b.layer, b.index)} == {("P", (1,)), ("X", (ss, 1))}
        allowed = range(1, ell + 1) if case == "I" else {1, ell}
        return {a.layer, b.layer} == {"P", "Q"} and a.index == b.index and a.index[0] in allowed
    pair = {a.layer, b.layer}
    if pair == {"P", "Q"}:
        return a.index == b.index
    if pair <= {"P", "Q", "X"} and len(pair) == 2:
        pq, xv = (a, b) if a.layer != "X" else (b, a)
        i = pq.index[0]
        return (i < ell and xv.index[0] == 1) or (i == ell and xv.index[0] == ss)
    if pair == {"Y", "Z"}:
        return a.index == b.index
    if len(pair) == 2 and "X" in pair and pair <= {"X", "Y", "Z"}:
        yz, xv = (a, b) if a.layer != "X" else (b, a)
        t, i = yz.index
        r, j = xv.index
        return (r == t and j == i) or (r == t + 1 and j != i)
    return False


def _adjacent_et(inst, a: Role, b: Role) -> bool:
    p = inst.params
    M = ring_modulus(p, inst.ring)
    band = range(-3 * p.ell_star, 3 * p.ell_star + 1)
    # band edges are generated from the C side, then the A side, towards B
    rank = {"C": 0, "A": 1, "B": 2}
    if rank[a.layer] > rank[b.layer]:
        a, b = b, a
    i, t = a.index[0], b.index[0]
    if a.owner == b.owner:
        if a.layer == b.layer:
            off = [j for j in band if j != 0]
            return i != t and (_cyclic_offset(i, t, M, off) or _cyclic_offset(t, i, M, off))
        return _cyclic_offset(i, t, M, band)
    if b.layer != "B" or a.layer == "B" or not inst.source.has_edge(a.owner, b.owner):
        return False
    return _cyclic_offset(i, t, M, range(0, p.ell // 2 + 1))


def _adjacent_seeded2(inst, a: Role, b: Role) -> bool:
    H = inst.seed_graph
    hu, hv = first_non_edge(H)
    def kind(r):
        if r.layer == "W":
            h = r.index[0]
            return "u" if h == hu else "v" if h == hv else "r"
        return r.layer
    ka, kb = sorted((kind(a), kind(b)))
    if a.layer == "W" and b.layer == "W":
        return H.has_edge(a.index[0], b.index[0])
    pair = (ka, kb)
    if pair in (("GU", "GU"), ("GV", "GV")):
        return inst.source.has_edge(a.owner, b.owner)
    if pair == ("GU", "GV"):
        return a.owner == b.owner
    if "P" in pair:
        return pair in (("P", "r"), ("P", "u"), ("P", "v"), ("P", "USTAR"), ("P", "VSTAR"))
    return pair in (("GU", "u"), ("GV", "v"), ("GU", "USTAR"), ("GV", "VSTAR"), ("USTAR", "r"), ("VSTAR", "r"))


def _adjacent_seededs(inst, a: Role, b: Role) -> bool:
    H = inst.seed_graph
    s = inst.params.s
    d1, _ = split_seed_components(H)
    if a.layer > b.layer:
        a, b = b, a
    pair = (a.layer, b.layer)
    if pair == ("W", "W"):
        return H.has_edge(a.index[0], b.index[0])
    if pair in (("G1", "G1"), ("G2", "G2")):
        return inst.source.has_edge(a.owner, b.owner)
    if pair in (("G1", "W"), ("G2", "W")):
        return (a.layer == "G1") == (b.index[0] in d1)
    if pair == ("P", "P"):
        return abs(a.index[0] - b.index[0]) == 1
    if pair == ("P", "W"):
        on_first = b.index[0] in d1
        return a.index[0] == (1 if on_first else s - 1)
    if a.owner != b.owner:
        return False
    # per-source-vertex path G1 - Q_1 - ... - Q_{s-2} - G2
    pos = {"G1": 0, "G2": s - 1}
    pa = pos.get(a.layer, a.index[0] if a.layer == "Q" else None)
    pb = pos.get(b.layer, b.index[0] if b.layer == "Q" else None)
    if pa is None or pb is None:
        return False
    return abs(pa - pb) == 1


_RULES = {
    "vt2": _adjacent_vt2,
    "vts": _adjacent_vts,
    "et": _adjacent_et,
    "seeded2": _adjacent_seeded2,
    "seededs": _adjacent_seededs,
}


def layout_edges(inst: GadgetInstance) -> frozenset[Edge]:
    """Edge set implied by the role labels alone."""
    rule = _RULES[inst.construction]
    roles = inst.layout
    return frozenset(
        (u, v)
        for u, v in itertools.combinations(range(len(roles)), 2)
        if rule(inst, roles[u], roles[v])
    )


CONSTRUCTIONS = tuple(_RULES)
