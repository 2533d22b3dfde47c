import itertools

from hypothesis import strategies as st

from sclub.graph import build_graph


def complete(n, offset=0):
    return [(offset + a, offset + b) for a, b in itertools.combinations(range(n), 2)]


def K(n):
    return build_graph(n, complete(n))


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def two_k4_bridge():
    # vertices 0-3 and 4-7, bridge 3-4
    return build_graph(8, complete(4) + complete(4, 4) + [(3, 4)])


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)
