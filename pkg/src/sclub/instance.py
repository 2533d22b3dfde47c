"""Instance and certificate text formats.

Two graph formats are read:

* plain edge lists, one ``u v`` pair per line with 0-based ids (an optional
  ``c n=N`` line fixes the vertex count, otherwise it is the largest id + 1);
* DIMACS-style files, ``p edge N M`` followed by ``e u v`` lines with 1-based ids.

Comment lines start with ``c`` (or ``#``).  Two comment forms carry data::

    c spec variant=seeded s=3 l=1 k=7 seed=1,4
    c layout ID OWNER LAYER [INDEX ...]

Vertex ids in these comments use the file's own numbering (1-based in DIMACS
files).  :func:`serialize_instance` always writes the DIMACS form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .generators import Role
from .graph import Edge, Graph, build_graph, edge_key
from .properties import Certificate, ProblemSpec


@dataclass(frozen=True)
class Instance:
    graph: Graph
    spec: ProblemSpec | None = None
    layout: tuple[Role, ...] | None = None


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _parse_spec(fields: list[str], lineno: int, offset: int) -> ProblemSpec:
    vals = {}
    for f in fields:
        key, sep, val = f.partition("=")
        if not sep:
            raise InputError(f"line {lineno}: spec field {f!r} is not key=value")
        vals[key] = val
    if "variant" not in vals or "s" not in vals:
        raise InputError(f"line {lineno}: spec needs at least variant= and s=")
    seeds = ()
    if vals.get("seed"):
        seeds = [_int(t, lineno) - offset for t in vals["seed"].split(",")]
    try:
        return ProblemSpec(
            vals["variant"],
            _int(vals["s"], lineno),
            _int(vals.get("l", "1"), lineno),
            _int(vals.get("k", "1"), lineno),
            seeds,
        )
    except ValueError as exc:
        raise InputError(f"line {lineno}: {exc}") from None


def read_instance(text: str) -> Instance:
    """Parse either format, including the spec and layout comments."""
    dimacs = None
    n_decl = None
    m_decl = None
    edges: list[tuple[int, int, int]] = []
    spec_line = None
    layout_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        head = toks[0]
        if head == "c":
            if len(toks) > 1 and toks[1] == "spec":
                spec_line = (toks[2:], lineno)
            elif len(toks) > 1 and toks[1] == "layout":
                layout_lines.append((toks[2:], lineno))
            elif len(toks) == 2 and toks[1].startswith("n="):
                n_decl = _int(toks[1][2:], lineno)
            continue
        if head == "p":
            if dimacs is False or len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise InputError(f"line {lineno}: malformed problem line {line!r}")
            dimacs = True
            n_decl, m_decl = _int(toks[2], lineno), _int(toks[3], lineno)
            continue
        if head == "e":
            if not dimacs or len(toks) != 3:
                raise InputError(f"line {lineno}: edge line {line!r} outside a DIMACS file")
            edges.append((_int(toks[1], lineno) - 1, _int(toks[2], lineno) - 1, lineno))
            continue
        if dimacs or len(toks) != 2:
            raise InputError(f"line {lineno}: malformed line {line!r}")
        dimacs = False
        edges.append((_int(toks[0], lineno), _int(toks[1], lineno), lineno))
    offset = 1 if dimacs else 0
    if n_decl is None:
        n_decl = 1 + max((max(u, v) for u, v, _ in edges), default=-1)
    for u, v, lineno in edges:
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u + offset}")
        if not (0 <= u < n_decl and 0 <= v < n_decl):
            raise InputError(f"line {lineno}: endpoint out of range 0..{n_decl - 1}")
    g = build_graph(n_decl, [(u, v) for u, v, _ in edges])
    if m_decl is not None and m_decl != g.m:
        raise InputError(f"problem line declares {m_decl} edges, found {g.m} distinct edges")
    spec = None
    if spec_line is not None:
        spec = _parse_spec(*spec_line, offset)
        bad = [w for w in spec.seeds if not 0 <= w < g.n]
        if bad:
            raise InputError(f"line {spec_line[1]}: seed out of range")
    layout = None
    if layout_lines:
        roles: dict[int, Role] = {}
        for toks, lineno in layout_lines:
            if len(toks) < 3:
                raise InputError(f"line {lineno}: layout needs id, owner and layer")
            vid = _int(toks[0], lineno) - offset
            owner = None if toks[1] == "-" else _int(toks[1], lineno)
            roles[vid] = Role(owner, toks[2], tuple(_int(t, lineno) for t in toks[3:]))
        if sorted(roles) != list(range(g.n)):
            raise InputError("layout section must label every vertex exactly once")
        layout = tuple(roles[v] for v in range(g.n))
    return Instance(g, spec, layout)


def parse_instance(text: str) -> tuple[Graph, ProblemSpec | None]:
    inst = read_instance(text)
    return inst.graph, inst.spec


def format_spec(spec: ProblemSpec, offset: int = 1) -> str:
    parts = [f"variant={spec.variant.value}", f"s={spec.s}", f"l={spec.ell}", f"k={spec.k}"]
    if spec.seeds:
        parts.append("seed=" + ",".join(str(w + offset) for w in sorted(spec.seeds)))
    return "c spec " + " ".join(parts)


def serialize_instance(
    g: Graph,
    spec: ProblemSpec | None = None,
    layout=None,
    comments: list[str] = (),
) -> str:
    lines = [f"c {c}" for c in comments]
    if spec is not None:
        lines.append(format_spec(spec))
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    if layout is not None:
        lines.extend(f"c layout {i + 1} {role}" for i, role in enumerate(layout))
    return "\n".join(lines) + "\n"


def read_certificate(text: str) -> Certificate:
    """One 0-based vertex id per line, then optionally ``edges`` and ``u v`` lines."""
    verts: list[int] = []
    edges: list[Edge] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "edges":
            if edges is not None:
                raise InputError(f"line {lineno}: second edges section")
            edges = []
            continue
        toks = line.split()
        if edges is None:
            if len(toks) != 1:
                raise InputError(f"line {lineno}: expected one vertex id, got {line!r}")
            verts.append(_int(toks[0], lineno))
        else:
            if len(toks) != 2:
                raise InputError(f"line {lineno}: expected an edge 'u v', got {line!r}")
            edges.append(edge_key(_int(toks[0], lineno), _int(toks[1], lineno)))
    return Certificate(verts, edges)


def write_certificate(cert: Certificate) -> str:
    lines = [str(v) for v in sorted(cert.vertices)]
    if cert.edges is not None:
        lines.append("edges")
        lines.extend(f"{u} {v}" for u, v in sorted(cert.edges))
    return "\n".join(lines) + "\n"
