import pytest
from hypothesis import given, settings

from helpers import K, graphs
from sclub.errors import InputError
from sclub.generators import gen_et, gen_seeded2, gen_seededs, gen_vt2, gen_vts, gen_random_gnp
from sclub.graph import build_graph
from sclub.instance import (
    parse_instance,
    read_certificate,
    read_instance,
    serialize_instance,
    write_certificate,
)
from sclub.properties import Certificate, ProblemSpec


def test_parse_examples():
    g, spec = parse_instance("0 1\n1 2\n0 2")
    assert g.edge_set == K(3).edge_set and spec is None
    g, _ = parse_instance("p edge 3 3\ne 1 2\ne 2 3\ne 1 3")
    assert g.edge_set == K(3).edge_set
    with pytest.raises(InputError, match="line 1"):
        parse_instance("0 0")


def test_parse_comments_and_spec():
    text = "# plain file\nc n=5\nc spec variant=seeded s=3 k=4 seed=0,2\n0 1\n1 2\n"
    g, spec = parse_instance(text)
    assert g.n == 5 and spec == ProblemSpec("seeded", 3, 1, 4, [0, 2])
    text = "c spec variant=seeded s=2 seed=1\np edge 2 1\ne 1 2\n"
    assert parse_instance(text)[1].seeds == {0}


@pytest.mark.parametrize(
    "text,where",
    [
        ("0 1\n1 x\n", "line 2"),
        ("0 1 2\n", "line 1"),
        ("p edge 2 1\ne 1 3\n", "line 2"),
        ("p edge 3 1\n0 1\n", "line 2"),
        ("c n=2\n0 5\n", "line 2"),
        ("c spec variant=vt\n0 1\n", "line 1"),
        ("c spec variant=vt s=2 seed=0\n0 1\n", "line 1"),
        ("c spec variant=seeded s=2 seed=9\n0 1\n", "line 1"),
        ("p edge 3 3\ne 1 2\n", "declares"),
    ],
)
def test_parse_errors(text, where):
    with pytest.raises(InputError, match=where):
        parse_instance(text)


def test_certificate_round_trip():
    c = Certificate([3, 1, 2], [(2, 1), (1, 3), (2, 3)])
    assert read_certificate(write_certificate(c)) == c
    c = Certificate([0, 4])
    assert read_certificate(write_certificate(c)) == c and read_certificate("0\n4\n").edges is None
    with pytest.raises(InputError, match="line 2"):
        read_certificate("0\n1 2\n")


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_serialize_round_trip(g):
    spec = ProblemSpec("seeded", 2, 1, 3, [0])
    inst = read_instance(serialize_instance(g, spec, comments=["note"]))
    assert inst.graph == g and inst.spec == spec


def test_serialize_round_trip_on_gadgets():
    src = gen_random_gnp(5, 0.5, 4)
    H = build_graph(2, [])
    for gi in (
        gen_vt2(src, 3, 1),
        gen_vts(src, 3, 2, 4),
        gen_et(src, 3, 2, 2),
        gen_seeded2(src, 3, H),
        gen_seededs(src, 3, H, 3),
    ):
        inst = read_instance(serialize_instance(gi.graph, gi.spec, gi.layout))
        assert inst.graph == gi.graph
        assert inst.spec == gi.spec
        assert inst.layout == gi.layout
