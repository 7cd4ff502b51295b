"""Defining graphs, block assembly of real-vertex links, and certification.

A defining graph is a finite simple graph whose vertices name group
generators and whose edges carry integer labels ``m >= 2``.  The class this
package certifies is the almost-large-type one: no triangle with an edge
labeled 2, and no square (simple 4-cycle, chords allowed) with three or more
edges labeled 2.

Each edge of the defining graph contributes a block: a copy of the
two-generator complex for its label.  Around a fixed real vertex the link
therefore decomposes into one dihedral real-vertex link per edge, glued only
along the four direction vertices ``s+``/``s-`` of the shared generators
(``s-`` is the endpoint of the outgoing s-edge, ``s+`` of the incoming one).
Block-local vertices of distinct blocks are never identified and never
joined: blocks meet only in standard pieces shared by their generators,
which touch the link in the direction vertices alone.  Interior vertices lie
in a unique block, so their links are exactly the dihedral interior links
and are checked per label value.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complexes import (
    RealVertex,
    boundary_vertex_element,
    identity_link,
    interior_link,
)
from .errors import DefiningGraphError
from .links import SimplicialGraph, find_full_short_cycle
from .words import delta, generator

SQUARE_RULE = "any-simple-4-cycle"  # chords do not exempt a square


@dataclass(frozen=True)
class LabeledEdge:
    """An edge {u, v} with label m; endpoints stored sorted."""

    u: str
    v: str
    m: int

    @property
    def pair(self) -> frozenset[str]:
        return frozenset((self.u, self.v))

    @property
    def name(self) -> str:
        return f"{self.u}--{self.v}"


@dataclass(frozen=True)
class LabeledDefiningGraph:
    generators: tuple[str, ...]
    edges: tuple[LabeledEdge, ...]

    def label(self, u: str, v: str) -> int | None:
        want = frozenset((u, v))
        for e in self.edges:
            if e.pair == want:
                return e.m
        return None

    def neighbors(self, v: str) -> set[str]:
        out = set()
        for e in self.edges:
            if v == e.u:
                out.add(e.v)
            elif v == e.v:
                out.add(e.u)
        return out

    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({e.m for e in self.edges}))


def parse_defining_graph(source: str | dict) -> LabeledDefiningGraph:
    """Parse and validate a defining-graph document.

    Accepts a JSON string or an already-decoded dict of the form
    ``{"generators": [...], "edges": [{"u":.., "v":.., "m":..}, ...]}``.
    Raises DefiningGraphError with a location on any violation.
    """
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise DefiningGraphError(f"not valid JSON: {exc}", "document") from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise DefiningGraphError("document must be a JSON object", "document")

    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise DefiningGraphError("expected a nonempty list", "generators")
    seen: set[str] = set()
    for idx, g in enumerate(gens):
        if not isinstance(g, str) or not g:
            raise DefiningGraphError("generator names must be nonempty strings", f"generators[{idx}]")
        if g in seen:
            raise DefiningGraphError(f"duplicate generator {g!r}", f"generators[{idx}]")
        seen.add(g)

    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise DefiningGraphError("expected a list", "edges")
    edges: list[LabeledEdge] = []
    pairs: set[frozenset[str]] = set()
    for idx, e in enumerate(raw_edges):
        loc = f"edges[{idx}]"
        if not isinstance(e, dict):
            raise DefiningGraphError("each edge must be an object", loc)
        u, v, m = e.get("u"), e.get("v"), e.get("m")
        if u not in seen:
            raise DefiningGraphError(f"unknown generator {u!r}", loc)
        if v not in seen:
            raise DefiningGraphError(f"unknown generator {v!r}", loc)
        if u == v:
            raise DefiningGraphError("self-loops are not allowed in a simple graph", loc)
        if not isinstance(m, int) or isinstance(m, bool) or m < 2:
            raise DefiningGraphError(f"label must be an integer >= 2, got {m!r}", loc)
        pair = frozenset((u, v))
        if pair in pairs:
            raise DefiningGraphError(f"duplicate edge {sorted(pair)}", loc)
        pairs.add(pair)
        a, b = sorted((u, v))
        edges.append(LabeledEdge(a, b, m))

    return LabeledDefiningGraph(tuple(sorted(seen)), tuple(sorted(edges, key=lambda e: (e.u, e.v))))


@dataclass(frozen=True)
class AlmostLargeCheck:
    ok: bool
    witness_kind: str | None = None  # "triangle" or "square"
    witness_vertices: tuple[str, ...] = ()
    witness_labels: tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        out: dict = {"status": "pass" if self.ok else "fail", "square_rule": SQUARE_RULE}
        if not self.ok:
            out["witness"] = {
                "kind": self.witness_kind,
                "vertices": list(self.witness_vertices),
                "labels": list(self.witness_labels),
            }
        return out


def check_almost_large(g: LabeledDefiningGraph) -> AlmostLargeCheck:
    """Reject triangles containing a 2-edge and squares with three 2-edges.

    Squares are simple 4-cycles regardless of chords.  Enumeration is
    exhaustive over vertex triples and 4-cycles, so a failure always comes
    with the offending subgraph.
    """
    for x, y, z in itertools.combinations(g.generators, 3):
        labels = (g.label(x, y), g.label(y, z), g.label(x, z))
        if None in labels:
            continue
        if 2 in labels:
            return AlmostLargeCheck(False, "triangle", (x, y, z), tuple(labels))
    for quad in itertools.combinations(g.generators, 4):
        # each 4-subset yields up to three distinct cyclic orders
        w, x, y, z = quad
        for order in ((w, x, y, z), (w, y, x, z), (w, x, z, y)):
            cyc = list(order)
            labels = tuple(g.label(cyc[k], cyc[(k + 1) % 4]) for k in range(4))
            if None in labels:
                continue
            if sum(1 for m in labels if m == 2) >= 3:
                return AlmostLargeCheck(False, "square", tuple(cyc), labels)
    return AlmostLargeCheck(True)


@dataclass
class AssembledLink:
    """The link of a real vertex of the glued complex.

    `real_vertices` maps each generator s to its two direction-vertex keys
    (s+, s-).  `block_of` maps every block-local vertex key to its edge.
    """

    graph: SimplicialGraph
    real_vertices: dict[str, tuple[str, str]]
    block_of: dict[str, LabeledEdge]
    block_vertices: dict[str, tuple[str, ...]] = field(default_factory=dict)


def _direction_keys(s: str) -> tuple[str, str]:
    return (f"{s}+", f"{s}-")


def _block_glue_map(m: int, a_name: str, b_name: str) -> dict[str, str]:
    """Keys of the four direction vertices of the DA(m) link, renamed.

    In the dihedral link of the identity, the outgoing a-edge vertex is u_1,
    the outgoing b-edge vertex is d_1, and the incoming ones are r^-1 d_{m-1}
    and r^-1 u_{m-1} respectively.
    """
    r_inv = delta(m).inverse()
    return {
        RealVertex(generator("a", m)).key: f"{a_name}-",
        RealVertex(generator("b", m)).key: f"{b_name}-",
        RealVertex(r_inv * boundary_vertex_element("d", m, m - 1)).key: f"{a_name}+",
        RealVertex(r_inv * boundary_vertex_element("u", m, m - 1)).key: f"{b_name}+",
    }


def assemble_real_link(g: LabeledDefiningGraph, systolize: bool = True) -> AssembledLink:
    """Glue one dihedral real-vertex link per edge along shared generators.

    The edge endpoint that plays generator `a` is the lexicographically
    smaller name; the swap is an isomorphism of the dihedral link, which the
    test suite checks, so the choice is immaterial.  ``systolize=False``
    assembles from the subdivided blocks without diagonal edges (the
    negative control).
    """
    graph = SimplicialGraph()
    real_vertices: dict[str, tuple[str, str]] = {}
    for s in g.generators:
        plus, minus = _direction_keys(s)
        graph.add_vertex(plus)
        graph.add_vertex(minus)
        real_vertices[s] = (plus, minus)

    block_of: dict[str, LabeledEdge] = {}
    block_vertices: dict[str, tuple[str, ...]] = {}
    for edge in g.edges:
        a_name, b_name = edge.u, edge.v  # endpoints already sorted
        dihedral, _ = identity_link(edge.m, systolize=systolize)
        glue = _block_glue_map(edge.m, a_name, b_name)

        def rename(key: str) -> str:
            if key in glue:
                return glue[key]
            return f"{edge.name}|{key}"

        block_keys = []
        for key in dihedral.vertices():
            new = rename(key)
            graph.add_vertex(new)
            block_keys.append(new)
            if new not in glue.values():
                block_of[new] = edge
        for k1, k2 in dihedral.edges():
            graph.add_edge(rename(k1), rename(k2))
        block_vertices[edge.name] = tuple(sorted(block_keys))

    return AssembledLink(graph, real_vertices, block_of, block_vertices)


@dataclass(frozen=True)
class LinkCheck:
    six_large: bool
    witness: tuple[str, ...] | None

    def to_json_dict(self) -> dict:
        out: dict = {"six_large": self.six_large}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class SystolicityReport:
    """Aggregated result of every link-level check for a defining graph.

    The verdict covers the almost-large-type condition, the assembled
    real-vertex link, and the interior links of every label value; simple
    connectivity of the glued complex is structural and not machine-checked.
    """

    gamma_check: AlmostLargeCheck
    real_link: LinkCheck
    real_link_vertices: int
    interior_links: tuple[tuple[int, int, LinkCheck], ...]

    @property
    def verdict(self) -> str:
        ok = (
            self.gamma_check.ok
            and self.real_link.six_large
            and all(chk.six_large for _, _, chk in self.interior_links)
        )
        return "pass" if ok else "fail"

    def to_json_dict(self) -> dict:
        real = {"vertices": self.real_link_vertices}
        real.update(self.real_link.to_json_dict())
        return {
            "gamma_check": self.gamma_check.to_json_dict(),
            "real_link": real,
            "interior_links": [
                {"m": m, "i": i, **chk.to_json_dict()} for m, i, chk in self.interior_links
            ],
            "verdict": self.verdict,
        }


def _check_interior(task: tuple[int, int]) -> tuple[int, int, bool, tuple[str, ...] | None]:
    m, i = task
    graph, _ = interior_link(m, i)
    witness = find_full_short_cycle(graph)
    return (m, i, witness is None, witness)


def certify_systolic_links(
    g: LabeledDefiningGraph, workers: int = 1, systolize: bool = True
) -> SystolicityReport:
    """Run every link-level check for a defining graph.

    With ``systolize=False`` the blocks are assembled from the subdivided
    complexes without diagonal edges; this is the negative control and is
    expected to fail for any label >= 3.
    """
    gamma_res = check_almost_large(g)

    assembled = assemble_real_link(g, systolize=systolize)
    witness = find_full_short_cycle(assembled.graph)
    real_check = LinkCheck(witness is None, witness)

    tasks = [(m, i) for m in g.labels() if m >= 3 for i in range(1, m - 1)]
    results: list[tuple[int, int, bool, tuple[str, ...] | None]] = []
    if systolize:
        if workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_check_interior, tasks))
        else:
            results = [_check_interior(t) for t in tasks]
    else:
        for m, i in tasks:
            graph, _ = interior_link(m, i, systolize=False)
            w = find_full_short_cycle(graph)
            results.append((m, i, w is None, w))
    results.sort(key=lambda r: (r[0], r[1]))

    return SystolicityReport(
        gamma_check=gamma_res,
        real_link=real_check,
        real_link_vertices=len(assembled.graph),
        interior_links=tuple((m, i, LinkCheck(ok, w)) for m, i, ok, w in results),
    )
