import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import K, complete, cycle, graphs, path, two_k4_bridge
from sclub.errors import InputError
from sclub.generators import gen_random_clique, gen_random_gnp
from sclub.graph import build_graph, truss_peel
from sclub.kernel import rr1_vertex_triangle_prune, rr2_edge_triangle_prune
from sclub.properties import ProblemSpec, verify
from sclub.solve import brute_force_max, clique_max, solve, solve_decision, solve_max


def test_solve_max_examples():
    r = solve_max(K(5), ProblemSpec("vt", 2, 1))
    assert r.optimum_size == 5 and r.best.vertices == set(range(5))
    r = solve_max(two_k4_bridge(), ProblemSpec("et", 3, 1))
    assert r.optimum_size == 4 and r.best.vertices in ({0, 1, 2, 3}, {4, 5, 6, 7})
    assert solve_max(build_graph(5, []), ProblemSpec("vt", 3, 1)).optimum_size == 0
    assert solve_max(build_graph(5, []), ProblemSpec("vt", 3, 1)).best is None


def test_solve_decision_examples():
    spec = ProblemSpec("vt", 2, 1, 5)
    ok, cert, _ = solve_decision(K(5), spec)
    assert ok and verify(K(5), spec, cert)
    ok, cert, _ = solve_decision(K(5), spec.with_k(6))
    assert not ok and cert is None
    ok, _, res = solve_decision(path(5), ProblemSpec("seeded", 3, k=1, seeds=[0, 4]))
    assert not ok and res.trace.infeasible


def test_brute_force_examples():
    assert brute_force_max(K(4), ProblemSpec("et", 1, 2)).optimum_size == 4
    assert brute_force_max(cycle(5), ProblemSpec("vt", 2, 1)).optimum_size == 0
    r = brute_force_max(path(3), ProblemSpec("seeded", 2, k=3, seeds=[0, 2]))
    assert r.optimum_size == 3 and r.best.vertices == {0, 1, 2}
    with pytest.raises(InputError):
        brute_force_max(K(21), ProblemSpec("vt", 2, 1))


def test_clique_examples():
    g = build_graph(5, [e for e in complete(5) if e != (0, 1)])
    assert clique_max(g)[0] == 4
    assert clique_max(cycle(5))[0] == 2
    assert clique_max(build_graph(3, []))[0] == 1
    assert clique_max(build_graph(0, []))[0] == 0
    assert clique_max(K(3)) == (3, frozenset({0, 1, 2}))
    with pytest.raises(InputError):
        clique_max(K(26))


def test_edge_variant_sizes():
    # a triangle-free graph still has singleton solutions for the edge variant
    r = solve_max(path(4), ProblemSpec("et", 2, 1))
    assert r.optimum_size == 1 and verify(path(4), ProblemSpec("et", 2, 1), r.best)
    assert brute_force_max(path(4), ProblemSpec("et", 2, 1)).optimum_size == 1


def test_seed_out_of_range():
    with pytest.raises(InputError):
        solve_max(K(3), ProblemSpec("seeded", 2, k=1, seeds=[5]))


def test_large_seed_set_uses_search():
    g = K(6)
    ok, cert, _ = solve_decision(g, ProblemSpec("seeded", 1, k=3, seeds=[0, 1, 2, 3]))
    assert ok and cert.vertices >= {0, 1, 2, 3}


def _spec(g, variant, s, ell, rng_seed):
    if variant != "seeded":
        return ProblemSpec(variant, s, ell)
    W = gen_random_clique(g, 1 + rng_seed % 3, rng_seed)
    return ProblemSpec("seeded", s, k=1, seeds=W)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 10), st.sampled_from([0.2, 0.4, 0.6, 0.8]), st.integers(0, 10**6),
       st.sampled_from(["vt", "et", "seeded", "club"]), st.integers(1, 4), st.integers(1, 3))
def test_matches_oracle(n, p, seed, variant, s, ell):
    g = gen_random_gnp(n, p, seed)
    spec = _spec(g, variant, s, ell, seed)
    r = solve_max(g, spec)
    b = brute_force_max(g, spec)
    assert r.optimum_size == b.optimum_size
    if r.best is not None:
        assert verify(g, spec.with_k(r.optimum_size), r.best)
    # decision agrees at the optimum and one above it
    k = max(1, r.optimum_size)
    assert solve_decision(g, spec.with_k(k))[0] == (r.optimum_size >= k)
    assert not solve_decision(g, spec.with_k(r.optimum_size + 1))[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 12), st.floats(0.3, 0.8), st.integers(0, 10**6),
       st.sampled_from(["vt", "et", "seeded"]), st.integers(2, 4))
def test_deterministic_and_thread_independent(n, p, seed, variant, s):
    g = gen_random_gnp(n, p, seed)
    spec = _spec(g, variant, s, 1, seed)
    a = solve_max(g, spec)
    b = solve_max(g, spec)
    c = solve_max(g, spec, threads=3)
    assert a.optimum_size == b.optimum_size == c.optimum_size
    assert a.best == b.best == c.best
    if a.best is not None:
        assert a.best.edges == c.best.edges


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.floats(0.3, 0.9), st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 2))
def test_edge_certificate_is_the_peel(n, p, seed, s, ell):
    g = gen_random_gnp(n, p, seed)
    r = solve_max(g, ProblemSpec("et", s, ell))
    if r.optimum_size > 1:
        assert r.best.edges == truss_peel(g, ell, r.best.vertices)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.floats(0.2, 0.8), st.integers(0, 10**6), st.integers(1, 4))
def test_peeled_items_never_in_optimum(n, p, seed, s):
    g = gen_random_gnp(n, p, seed)
    _, tr = rr1_vertex_triangle_prune(g)
    b = brute_force_max(g, ProblemSpec("vt", s, 1))
    if b.best is not None:
        assert not b.best.vertices & set(tr.removed_vertices)
    red, _ = rr2_edge_triangle_prune(g)
    b = brute_force_max(g, ProblemSpec("et", s, 1))
    assert b.best.edges <= red.edge_set


def test_solve_front_end():
    spec = ProblemSpec("et", 2, 1, 4)
    assert solve(K(4), spec).optimum_size == 4
    assert solve(K(4), spec, decide=True).best.size >= 4
