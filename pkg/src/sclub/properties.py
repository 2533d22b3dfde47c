"""Solution notions and their independent verifiers.

Verifiers are the ground truth for every solver and generator in the package:
they take a claimed vertex set (and, for the edge variant, optionally a
witness edge set) and re-derive the property from scratch.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError
from .graph import (
    Edge,
    Graph,
    diameter,
    distance_matrix,
    edge_key,
    edge_triangle_counts,
    truss_peel,
    vertex_triangle_counts,
)


class Variant(enum.Enum):
    CLUB = "club"
    VERTEX_TRIANGLE = "vt"
    EDGE_TRIANGLE = "et"
    SEEDED = "seeded"

    @property
    def uses_triangles(self) -> bool:
        return self in (Variant.VERTEX_TRIANGLE, Variant.EDGE_TRIANGLE)


@dataclass(frozen=True)
class ProblemSpec:
    variant: Variant
    s: int
    ell: int = 1
    k: int = 1
    seeds: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "seeds", frozenset(self.seeds))
        if self.s < 1:
            raise InputError(f"diameter bound s must be >= 1, got {self.s}")
        if self.k < 1:
            raise InputError(f"target size k must be >= 1, got {self.k}")
        if self.variant.uses_triangles and self.ell < 1:
            raise InputError(f"triangle threshold l must be >= 1, got {self.ell}")
        if self.variant is Variant.SEEDED and not self.seeds:
            raise InputError("the seeded variant needs a non-empty seed set")
        if self.variant is not Variant.SEEDED and self.seeds:
            raise InputError(f"seed vertices given for variant {self.variant.value!r}")

    def with_k(self, k: int) -> ProblemSpec:
        return ProblemSpec(self.variant, self.s, self.ell, k, self.seeds)


@dataclass(frozen=True)
class Certificate:
    vertices: frozenset[int]
    edges: frozenset[Edge] | None = None
    origin: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        if self.edges is not None:
            object.__setattr__(self, "edges", frozenset(edge_key(*e) for e in self.edges))

    @property
    def size(self) -> int:
        return len(self.vertices)


def _nonempty(g: Graph, S: Iterable[int], what: str = "S") -> frozenset[int]:
    S = frozenset(S)
    if not S:
        raise InputError(f"{what} must be non-empty")
    bad = [v for v in S if not 0 <= v < g.n]
    if bad:
        raise InputError(f"{what} contains vertices outside the graph: {sorted(bad)}")
    return S


def is_s_club(g: Graph, S: Iterable[int], s: int) -> bool:
    S = _nonempty(g, S)
    return len(S) == 1 or diameter(g, S) <= s


def verify_vertex_triangle_club(g: Graph, S: Iterable[int], s: int, ell: int) -> bool:
    S = _nonempty(g, S)
    counts = vertex_triangle_counts(g, S)
    if min(counts.values()) < ell:
        return False
    return is_s_club(g, S, s)


def verify_edge_triangle_club(
    g: Graph, S: Iterable[int], s: int, ell: int
) -> tuple[bool, frozenset[Edge] | None]:
    """Decide the edge-triangle property via the maximal qualifying spanning subgraph."""
    S = _nonempty(g, S)
    if len(S) == 1:
        return True, frozenset()
    F = truss_peel(g, ell, S)
    if diameter(g, S, F) <= s:
        return True, F
    return False, None


def verify_seeded_club(g: Graph, S: Iterable[int], s: int, W: Iterable[int]) -> bool:
    S = _nonempty(g, S)
    W = _nonempty(g, W, "W")
    return W <= S and is_s_club(g, S, s)


def check_edge_witness(g: Graph, S: Iterable[int], F: Iterable[Edge], s: int, ell: int) -> str | None:
    """Validate an explicit witness ``F`` for ``S``; returns the violated condition or ``None``."""
    S = frozenset(S)
    F = frozenset(edge_key(*e) for e in F)
    for u, v in F:
        if u not in S or v not in S:
            return f"witness edge ({u}, {v}) leaves the vertex set"
        if not g.has_edge(u, v):
            return f"witness edge ({u}, {v}) is not an edge of the graph"
    if len(S) == 1:
        return None
    short = [e for e, c in edge_triangle_counts(g, S, F).items() if c < ell]
    if short:
        u, v = min(short)
        return f"witness edge ({u}, {v}) lies in fewer than {ell} witness triangles"
    if diameter(g, S, F) > s:
        return f"witness subgraph has diameter greater than {s}"
    return None


def explain_violation(g: Graph, spec: ProblemSpec, cert: Certificate) -> str | None:
    """Name the first condition ``cert`` violates under ``spec`` (``None`` if valid)."""
    S = cert.vertices
    if not S:
        return "empty vertex set"
    bad = sorted(v for v in S if not 0 <= v < g.n)
    if bad:
        return f"vertices outside the graph: {bad}"
    if len(S) < spec.k:
        return f"size {len(S)} below target k={spec.k}"
    v = spec.variant
    if v is Variant.SEEDED:
        missing = sorted(spec.seeds - S)
        if missing:
            return f"seed vertices missing: {missing}"
    if v is Variant.VERTEX_TRIANGLE:
        counts = vertex_triangle_counts(g, S)
        low = [u for u in sorted(S) if counts[u] < spec.ell]
        if low:
            return f"vertex {low[0]} lies in {counts[low[0]]} < {spec.ell} triangles of G[S]"
    if v is Variant.EDGE_TRIANGLE:
        if cert.edges is not None:
            return check_edge_witness(g, S, cert.edges, spec.s, spec.ell)
        ok, _ = verify_edge_triangle_club(g, S, spec.s, spec.ell)
        return None if ok else f"no spanning subgraph with every edge in >= {spec.ell} triangles has diameter <= {spec.s}"
    if not is_s_club(g, S, spec.s):
        return f"G[S] has diameter {diameter(g, S)} > {spec.s}"
    return None


def verify(g: Graph, spec: ProblemSpec, cert: Certificate) -> bool:
    """True iff ``cert`` is a valid solution of size at least ``spec.k``."""
    return explain_violation(g, spec, cert) is None


@dataclass(frozen=True)
class RobustnessReport:
    ok: bool
    budget: int
    limit: float
    exhaustive: bool
    trials: int
    rng_seed: int
    worst_diameter: float


def robustness_report(
    g: Graph,
    cert: Certificate,
    s: int,
    ell: int,
    budget: int,
    rng_seed: int = 0,
    exhaustive_limit: int = 100_000,
    samples: int = 1000,
) -> RobustnessReport:
    """Delete ``budget`` witness edges in every (or many sampled) ways and track the diameter.

    The edge set must be a verified edge-``ell``-triangle ``s``-club witness.
    Deleting edges never shrinks distances, so only deletion sets of exactly
    ``min(budget, |F|)`` edges are tried.
    """
    if budget < 0 or budget > ell:
        raise InputError(f"deletion budget must lie in 0..{ell}, got {budget}")
    S = frozenset(cert.vertices)
    F = cert.edges
    if F is None:
        ok, F = verify_edge_triangle_club(g, S, s, ell)
        if not ok:
            raise InputError("certificate is not an edge-triangle s-club")
    else:
        problem = check_edge_witness(g, S, F, s, ell)
        if problem is not None:
            raise InputError(f"certificate is not verified: {problem}")
    limit = min(s + budget, 2 * s)
    edges = sorted(F)
    r = min(budget, len(edges))
    verts, base = distance_matrix(g, S, edges)
    pos = {v: i for i, v in enumerate(verts)}
    n_sets = math.comb(len(edges), r)
    exhaustive = n_sets <= exhaustive_limit
    if exhaustive:
        deletions = itertools.combinations(range(len(edges)), r)
        trials = n_sets
    else:
        rng = random.Random(rng_seed)
        deletions = (rng.sample(range(len(edges)), r) for _ in range(samples))
        trials = samples
    worst = float(base.max()) if len(S) > 1 else 0.0
    if r == 0 or len(verts) == 1:
        return RobustnessReport(worst <= limit, budget, limit, True, 1, rng_seed, worst)
    rows = np.array([pos[u] for u, _ in edges])
    cols = np.array([pos[v] for _, v in edges])
    n = len(verts)
    step = np.eye(n, dtype=np.float32)
    step[rows, cols] = step[cols, rows] = 1.0
    cap = int(limit)
    chunk = max(1, 4_000_000 // (n * n))
    while True:
        block = np.array(list(itertools.islice(deletions, chunk)), dtype=np.intp).reshape(-1, r)
        if not len(block):
            break
        diam = _batch_diameters(step, rows, cols, block, cap)
        if diam.max() > cap:
            # exact value for the report, then stop at the first violation
            bad = block[int(diam.argmax())]
            worst = _diameter_without(rows, cols, bad, n)
            break
        worst = max(worst, float(diam.max()))
    return RobustnessReport(worst <= limit, budget, limit, exhaustive, trials, rng_seed, worst)


def _batch_diameters(step: np.ndarray, rows, cols, drops: np.ndarray, cap: int) -> np.ndarray:
    """Diameter after each row of ``drops`` is deleted, as ``cap + 1`` when it exceeds ``cap``.

    ``step`` is adjacency plus identity, so ``step**d > 0`` marks pairs within distance ``d``.
    """
    B, r = drops.shape
    R = np.repeat(step[None], B, axis=0)
    b = np.repeat(np.arange(B), r)
    e = drops.ravel()
    R[b, rows[e], cols[e]] = 0.0
    R[b, cols[e], rows[e]] = 0.0
    diam = np.full(B, cap + 1)
    reach = R
    for d in range(1, cap + 1):
        if d > 1:
            reach = np.minimum(reach @ R, 1.0)
        hit = (diam > cap) & reach.all(axis=(1, 2))
        diam[hit] = d
        if (diam <= cap).all():
            break
    return diam


def _diameter_without(rows, cols, drop, n: int) -> float:
    keep = np.setdiff1d(np.arange(len(rows)), drop)
    mat = csr_matrix((np.ones(len(keep)), (rows[keep], cols[keep])), shape=(n, n))
    return float(shortest_path(mat, directed=False, unweighted=True).max())


def robustness_check(
    g: Graph, cert: Certificate, s: int, ell: int, budget: int, rng_seed: int = 0
) -> bool:
    """Whether the witness subgraph keeps diameter ``<= min(s + budget, 2s)`` after deletions."""
    return robustness_report(g, cert, s, ell, budget, rng_seed).ok
