import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import K, graphs, path
from sclub.errors import InapplicableError, InputError
from sclub.generators import (
    Role,
    gadget_params,
    gen_et,
    gen_random_clique,
    gen_random_gnp,
    gen_seeded2,
    gen_seededs,
    gen_vt2,
    gen_vts,
    layout_edges,
    ring_modulus,
    smallest_clique_order,
)
from sclub.graph import build_graph, edge_triangle_counts, vertex_triangle_counts
from sclub.properties import Variant

TWO_ISOLATED = build_graph(2, [])


def test_params():
    assert [smallest_clique_order(l) for l in (1, 2, 3, 4)] == [3, 4, 4, 5]
    p = gadget_params(2, 2)
    assert (p.ell_star, p.x) == (1, 7)
    assert gadget_params(3, 5).s_star == 2
    assert gadget_params(3, 3).x == 6 * 2 * 2 + 1


@pytest.mark.parametrize("ell", [1, 2, 4])
def test_vt2_counts(ell):
    src = path(4)
    inst = gen_vt2(src, 2, ell)
    c = smallest_clique_order(ell)
    assert inst.graph.n == c * 5
    assert inst.k_prime == c * 3
    assert inst.spec.variant is Variant.VERTEX_TRIANGLE and inst.spec.s == 2


def test_vts_examples():
    inst = gen_vts(K(3), 3, 1, 3)
    assert inst.graph.n == 9 and inst.k_prime == 9
    for s, ell in [(3, 2), (4, 2), (5, 2), (4, 3), (6, 3), (5, 4)]:
        inst = gen_vts(path(3), 2, ell, s)
        ss = (s - 1) // 2
        assert inst.graph.n == 3 * 3 * ell * ss
        assert inst.k_prime == 3 * ell * 2 * ss
    for s, ell in [(2, 2), (4, 1), (6, 1)]:
        with pytest.raises(InapplicableError):
            gen_vts(K(3), 3, ell, s)


def _owners_of_triangles(inst):
    g = inst.graph
    adj = g.adj_sets
    for u, v in g.edges():
        for w in adj[u] & adj[v]:
            if w > v:
                yield {inst.layout[u].owner, inst.layout[v].owner, inst.layout[w].owner}


@pytest.mark.parametrize("s,ell", [(3, 1), (3, 2), (4, 2), (5, 2), (4, 3), (6, 3), (5, 3), (6, 4)])
def test_vts_triangle_exactness(s, ell):
    src = gen_random_gnp(6, 0.6, s * 10 + ell)
    inst = gen_vts(src, 3, ell, s)
    assert set(vertex_triangle_counts(inst.graph).values()) == {ell}
    assert all(len(owners) == 1 for owners in _owners_of_triangles(inst))


def test_et_examples():
    inst = gen_et(K(3), 3, 2, 2)
    assert inst.params.x == 7 and inst.graph.n == 3 * 16 and inst.k_prime == 16 * 3
    inst = gen_et(K(3), 3, 3, 2)
    c_layer = [r for r in inst.layout if r.layer == "C" and r.owner == 0]
    assert len(c_layer) == 6 * 2 - 5
    assert inst.k_prime == 5 * 7 * 3
    with pytest.raises(InputError):
        gen_et(K(3), 2, 2, 2)
    with pytest.raises(InapplicableError):
        gen_et(K(3), 3, 1, 2)
    with pytest.raises(InputError):
        gen_et(K(3), 3, 2, 2, ring="other")
    assert ring_modulus(gadget_params(2, 2), "literal") == 7


@pytest.mark.parametrize("s,ell", [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)])
def test_et_cross_edges_in_exactly_ell_triangles(s, ell):
    inst = gen_et(path(3), 3, ell, s)
    counts = edge_triangle_counts(inst.graph)
    cross = [e for e in counts if inst.layout[e[0]].owner != inst.layout[e[1]].owner]
    assert cross
    assert all(counts[e] == ell for e in cross)


def test_seeded2_examples():
    src = gen_random_gnp(5, 0.5, 1)
    H = build_graph(3, [(0, 2)])
    inst = gen_seeded2(src, 2, H)
    assert inst.graph.n == 3 + 2 * 5 + 3
    assert inst.k_prime == 2 * 2 + 3 + 3
    assert inst.spec.seeds == {0, 1, 2}
    # the non-edge is (0, 1): seed 1 sees the V copy
    seed_v = inst.vertex(Role(None, "W", (1,)))
    adj = inst.graph.adj_sets
    for x in range(src.n):
        xu = inst.vertex(Role(x, "GU"))
        xv = inst.vertex(Role(x, "GV"))
        assert adj[xu] & adj[seed_v] == {xv}
    with pytest.raises(InapplicableError):
        gen_seeded2(src, 2, K(3))


def test_seededs_examples():
    inst = gen_seededs(K(3), 3, TWO_ISOLATED, 3)
    assert inst.k_prime == 13
    for s in (3, 4, 5):
        src = path(4)
        inst = gen_seededs(src, 2, TWO_ISOLATED, s)
        assert inst.graph.n == 2 + 2 * 4 + (s - 1) + 4 * (s - 2)
        assert inst.k_prime == s * 2 + 2 + s - 1
    with pytest.raises(InapplicableError):
        gen_seededs(K(3), 3, K(2), 3)
    with pytest.raises(InapplicableError):
        gen_seededs(K(3), 3, TWO_ISOLATED, 2)


def test_gnp_examples():
    assert gen_random_gnp(6, 0.0, 1).m == 0
    assert gen_random_gnp(6, 1.0, 1).m == 15
    assert gen_random_gnp(9, 0.5, 7).edge_set == gen_random_gnp(9, 0.5, 7).edge_set
    with pytest.raises(InputError):
        gen_random_gnp(4, 1.5)


def test_random_clique():
    g = gen_random_gnp(10, 0.6, 3)
    for size in (1, 2, 3):
        W = gen_random_clique(g, size, 5)
        assert 1 <= len(W) <= size
        assert all(g.has_edge(u, v) for u, v in itertools.combinations(W, 2))


def _all_instances(src):
    yield gen_vt2(src, 3, 2)
    yield gen_vts(src, 3, 1, 3)
    yield gen_vts(src, 3, 2, 4)
    yield gen_vts(src, 3, 3, 4)
    yield gen_vts(src, 3, 2, 5)
    yield gen_et(src, 3, 2, 2)
    yield gen_et(src, 3, 3, 2)
    yield gen_et(src, 3, 2, 3, ring="literal")
    yield gen_seeded2(src, 3, TWO_ISOLATED)
    yield gen_seededs(src, 3, build_graph(3, [(0, 1)]), 4)


@settings(max_examples=15, deadline=None)
@given(graphs(min_n=1, max_n=5))
def test_layout_reproduces_edges(src):
    for inst in _all_instances(src):
        assert len(inst.layout) == inst.graph.n
        assert len(set(inst.layout)) == inst.graph.n
        assert layout_edges(inst) == inst.graph.edge_set, inst.construction
