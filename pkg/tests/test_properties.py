import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import K, complete, graphs, path, star, two_k4_bridge
from sclub.errors import InputError
from sclub.generators import gen_random_gnp
from sclub.graph import build_graph, connected_components, diameter, truss_peel
from sclub.properties import (
    Certificate,
    ProblemSpec,
    Variant,
    check_edge_witness,
    explain_violation,
    is_s_club,
    robustness_check,
    robustness_report,
    verify,
    verify_edge_triangle_club,
    verify_seeded_club,
    verify_vertex_triangle_club,
)

V8 = range(8)


def test_is_s_club_examples():
    assert is_s_club(K(4), range(4), 1)
    assert not is_s_club(path(4), range(4), 2)
    assert is_s_club(star(5), range(6), 2)
    with pytest.raises(InputError):
        is_s_club(K(4), [], 1)


def test_vertex_triangle_examples():
    # two K4 joined by an edge: every vertex in >= 3 triangles, diameter 3
    assert verify_vertex_triangle_club(two_k4_bridge(), V8, 3, 3)
    assert not verify_vertex_triangle_club(two_k4_bridge(), V8, 2, 3)
    assert verify_vertex_triangle_club(K(4), range(4), 1, 3)
    assert not verify_vertex_triangle_club(K(4), [2], 3, 1)


def test_edge_triangle_examples():
    for s in (1, 3, 7):
        assert verify_edge_triangle_club(two_k4_bridge(), V8, s, 1) == (False, None)
    ok, F = verify_edge_triangle_club(K(4), range(4), 1, 2)
    assert ok and F == K(4).edge_set
    assert verify_edge_triangle_club(K(4), [1], 1, 5) == (True, frozenset())
    # an edge alone sits in no triangle
    assert verify_edge_triangle_club(K(2), [0, 1], 5, 1) == (False, None)


def test_seeded_examples():
    assert verify_seeded_club(K(4), range(4), 1, [0, 3])
    assert not verify_seeded_club(K(4), [0, 1], 1, [2])
    assert verify_seeded_club(path(3), range(3), 2, [0, 2])
    with pytest.raises(InputError):
        verify_seeded_club(K(4), range(4), 1, [])


def test_robustness_examples():
    cert = Certificate(range(4))
    rep = robustness_report(K(4), cert, 1, 2, 2)
    assert rep.ok and rep.exhaustive and rep.trials == 15 and rep.limit == 2
    assert robustness_check(K(4), cert, 1, 2, 0)
    with pytest.raises(InputError):
        robustness_check(K(4), cert, 1, 2, 3)
    with pytest.raises(InputError):
        robustness_check(two_k4_bridge(), Certificate(V8), 3, 1, 1)


def test_robustness_sampling_is_seeded():
    # K7: 21 edges, C(21, 5) > 1e5 would be exhaustive with ell=5; force sampling with a small limit
    g = K(7)
    cert = Certificate(range(7))
    a = robustness_report(g, cert, 1, 5, 5, rng_seed=3, exhaustive_limit=10)
    b = robustness_report(g, cert, 1, 5, 5, rng_seed=3, exhaustive_limit=10)
    assert a == b and not a.exhaustive and a.trials == 1000 and a.ok


def test_problem_spec_validation():
    with pytest.raises(InputError):
        ProblemSpec("seeded", 2)
    with pytest.raises(InputError):
        ProblemSpec("vt", 2, seeds=[1])
    with pytest.raises(InputError):
        ProblemSpec("vt", 0)
    with pytest.raises(ValueError):
        ProblemSpec("nope", 2)
    assert ProblemSpec("et", 2, 1, 3).variant is Variant.EDGE_TRIANGLE


def test_explain_violation_names_condition():
    g = two_k4_bridge()
    spec = ProblemSpec("vt", 2, 3, 8)
    assert "diameter" in explain_violation(g, spec, Certificate(V8))
    assert "below target" in explain_violation(g, ProblemSpec("vt", 3, 3, 9), Certificate(V8))
    assert "triangles" in explain_violation(path(3), ProblemSpec("vt", 2, 1, 1), Certificate(range(3)))
    assert "seed" in explain_violation(K(4), ProblemSpec("seeded", 1, k=1, seeds=[3]), Certificate([0]))
    assert explain_violation(K(4), ProblemSpec("et", 1, 2, 4), Certificate(range(4))) is None


def test_check_edge_witness():
    g = K(4)
    assert check_edge_witness(g, range(4), g.edges(), 1, 2) is None
    assert "fewer" in check_edge_witness(g, range(4), [(0, 1), (1, 2), (0, 2)], 1, 2)
    assert "leaves" in check_edge_witness(g, [0, 1, 2], g.edges(), 1, 1)
    assert "diameter" in check_edge_witness(g, range(4), [(0, 1), (1, 2), (0, 2)], 1, 1)
    cert = Certificate(range(4), [(0, 1), (1, 2), (0, 2)])
    assert not verify(g, ProblemSpec("et", 1, 1, 4), cert)


def _brute_edge_club(g, S, s, ell):
    # literal definition: some spanning edge set of G[S] with every edge in >= ell triangles and diameter <= s
    S = sorted(S)
    if len(S) == 1:
        return True
    edges = [e for e in g.edges() if e[0] in S and e[1] in S]
    for r in range(len(edges), 0, -1):
        for F in itertools.combinations(edges, r):
            if check_edge_witness(g, S, F, s, ell) is None:
                return True
    return False


subsets = st.lists(st.integers(0, 6), min_size=1, unique=True)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=6), subsets, st.integers(1, 3), st.integers(1, 2))
def test_edge_verifier_matches_definition(g, S, s, ell):
    S = [v for v in S if v < g.n]
    assume(S)
    sub = sum(1 for u, v in g.edges() if u in S and v in S)
    assume(sub <= 10)
    assert verify_edge_triangle_club(g, S, s, ell)[0] == _brute_edge_club(g, S, s, ell)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1, max_n=8), subsets, st.integers(1, 4), st.integers(1, 3))
def test_verifier_monotonicity(g, S, s, ell):
    S = [v for v in S if v < g.n]
    assume(S)
    vt = verify_vertex_triangle_club(g, S, s, ell)
    et = verify_edge_triangle_club(g, S, s, ell)[0]
    club = is_s_club(g, S, s)
    if vt:
        assert verify_vertex_triangle_club(g, S, s + 1, ell)
        assert ell == 1 or verify_vertex_triangle_club(g, S, s, ell - 1)
        assert club
    if et:
        assert verify_edge_triangle_club(g, S, s + 1, ell)[0]
        assert ell == 1 or verify_edge_triangle_club(g, S, s, ell - 1)[0]
        assert club
        # an edge-l-triangle s-club on >= 2 vertices is also a vertex-l-triangle s-club
        assert len(S) == 1 or vt
    if club:
        assert verify_seeded_club(g, S, s, S[:1])


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 10), st.floats(0.5, 0.95), st.integers(0, 10**6), st.integers(1, 2))
def test_robustness_holds_for_every_verified_witness(n, p, seed, ell):
    g = gen_random_gnp(n, p, seed)
    F = truss_peel(g, ell)
    touched = {v for e in F for v in e}
    for comp in connected_components(build_graph(g.n, F), touched):
        s = int(diameter(g, comp, F))
        ok, witness = verify_edge_triangle_club(g, comp, s, ell)
        assert ok
        for budget in range(ell + 1):
            rep = robustness_report(g, Certificate(comp, witness), s, ell, budget)
            assert rep.ok, rep
            assert rep.worst_diameter <= min(s + budget, 2 * s)


def test_robustness_on_dense_witness():
    g = build_graph(9, complete(5) + complete(5, 4))
    ok, F = verify_edge_triangle_club(g, range(9), 2, 2)
    assert ok and diameter(g, range(9), F) == 2
    assert robustness_check(g, Certificate(range(9), F), 2, 2, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 9), st.floats(0.6, 1.0), st.integers(0, 10**6), st.integers(1, 2))
def test_robustness_worst_diameter_matches_naive(n, p, seed, ell):
    g = gen_random_gnp(n, p, seed)
    F = truss_peel(g, ell)
    touched = sorted({v for e in F for v in e})
    assume(touched)
    comp = max(connected_components(build_graph(g.n, F), touched), key=len)
    s = int(diameter(g, comp, F))
    ok, witness = verify_edge_triangle_club(g, comp, s, ell)
    edges = sorted(witness)
    naive = max(
        diameter(g, comp, [e for e in edges if e not in drop])
        for drop in itertools.combinations(edges, min(ell, len(edges)))
    )
    rep = robustness_report(g, Certificate(comp, witness), s, ell, ell)
    assert rep.worst_diameter == naive or (not rep.ok and naive > rep.limit)


def test_batch_diameters_on_cycles():
    import numpy as np
    from sclub.properties import _batch_diameters

    n = 6
    rows = np.arange(n)
    cols = (rows + 1) % n
    step = np.eye(n, dtype=np.float32)
    step[rows, cols] = step[cols, rows] = 1.0
    drops = np.array([[0], [3]])
    assert list(_batch_diameters(step, rows, cols, drops, 5)) == [5, 5]
    assert list(_batch_diameters(step, rows, cols, drops, 4)) == [5, 5]
    assert list(_batch_diameters(step, rows, cols, np.array([[0, 3]]), 5)) == [6]
