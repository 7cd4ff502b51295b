"""Simple-graph analysis: induced short cycles, prisms, model graphs.

Graphs here are finite simple graphs over string keys, read under the flag
convention (a set of pairwise adjacent vertices spans a simplex, so the
complex is determined by this 1-skeleton).  A graph is six-large when no
simple cycle of length 4 or 5 is an induced (full) subgraph; the searches
below are exhaustive, not heuristic, because failures must come with an
exact witness cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ResourceBudgetError


class SimplicialGraph:
    """A finite simple graph over hashable string keys."""

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()):
        self._adj: dict[str, set[str]] = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    def add_vertex(self, v: str) -> None:
        self._adj.setdefault(v, set())

    def add_edge(self, u: str, v: str) -> None:
        if u == v:
            raise ValueError(f"loop at {v!r} not allowed in a simple graph")
        self._adj.setdefault(u, set()).add(v)
        self._adj.setdefault(v, set()).add(u)

    def __contains__(self, v: str) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self._adj))

    def neighbors(self, v: str) -> frozenset[str]:
        return frozenset(self._adj[v])

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> tuple[tuple[str, str], ...]:
        out = []
        for u, nbrs in self._adj.items():
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        return tuple(sorted(out))

    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def subgraph(self, keys: Iterable[str]) -> "SimplicialGraph":
        """The full subgraph spanned by `keys`."""
        keep = set(keys)
        missing = keep - self._adj.keys()
        if missing:
            raise KeyError(f"vertices not in graph: {sorted(missing)}")
        sub = SimplicialGraph(keep)
        for v in keep:
            for w in self._adj[v] & keep:
                sub.add_edge(v, w)
        return sub

    def is_clique(self, keys: Iterable[str]) -> bool:
        ks = list(keys)
        return all(self.has_edge(u, v) for i, u in enumerate(ks) for v in ks[i + 1:])


def find_full_short_cycle(
    graph: SimplicialGraph, max_vertices: int | None = None
) -> tuple[str, ...] | None:
    """Some induced simple cycle of length 4 or 5, or None if there is none.

    The search is exhaustive.  Enumeration is in sorted vertex order and the
    returned cycle starts at its least vertex with the lesser neighbor second,
    so the witness is deterministic (the least cycle in enumeration order,
    4-cycles before 5-cycles).
    """
    if max_vertices is not None and len(graph) > max_vertices:
        raise ResourceBudgetError(
            f"cycle search on {len(graph)} vertices exceeds budget {max_vertices}",
            attempted=len(graph),
            budget=max_vertices,
        )
    verts = graph.vertices()
    adj = {v: graph.neighbors(v) for v in verts}

    # Induced 4-cycle v0-v1-v2-v3: chords v0v2, v1v3 absent.
    for v0 in verts:
        n0 = adj[v0]
        for v1 in sorted(n0):
            if v1 < v0:
                continue
            for v2 in sorted(adj[v1]):
                if v2 <= v0 or v2 in n0:
                    continue
                for v3 in sorted(adj[v2] & n0):
                    if v3 > v1 and v3 not in adj[v1]:
                        return (v0, v1, v2, v3)

    # Induced 5-cycle v0-v1-v2-v3-v4: all five chords absent.
    for v0 in verts:
        n0 = adj[v0]
        for v1 in sorted(n0):
            if v1 < v0:
                continue
            for v2 in sorted(adj[v1]):
                if v2 <= v0 or v2 in n0:
                    continue
                for v3 in sorted(adj[v2]):
                    if v3 <= v0 or v3 in n0 or v3 in adj[v1]:
                        continue
                    for v4 in sorted(adj[v3] & n0):
                        if v4 > v1 and v4 not in adj[v1] and v4 not in adj[v2]:
                            return (v0, v1, v2, v3, v4)
    return None


def is_6_large(graph: SimplicialGraph, max_vertices: int | None = None) -> bool:
    return find_full_short_cycle(graph, max_vertices) is None


@dataclass(frozen=True)
class PrismOrder:
    """Witness that two vertex sets span a subdivided-prism skeleton.

    `order` lists one side so that the chains of its neighbor sets in the
    other side strictly shrink; `chains` are those neighbor sets.
    """

    order: tuple[str, ...]
    chains: tuple[frozenset[str], ...]


def recognize_prism(
    graph: SimplicialGraph, side: Iterable[str], other: Iterable[str]
) -> PrismOrder | None:
    """Recover the prism order of two disjoint vertex sets, if they span one.

    On the full subgraph spanned by the union, both sides must be cliques of
    equal size and sorting one side by neighbor count in the other must give
    strictly nested, nonempty-ending neighbor chains (ties mean no strict
    nesting exists, hence failure).  The nonempty last chain rules out the
    degenerate chain ending at the empty set, which no prism skeleton has.
    """
    w = sorted(set(side))
    w2 = sorted(set(other))
    if not w or not w2 or set(w) & set(w2):
        return None
    if len(w) != len(w2):
        return None
    if not graph.is_clique(w) or not graph.is_clique(w2):
        return None
    other_set = set(w2)
    chains = {v: frozenset(graph.neighbors(v) & other_set) for v in w}
    ordered = sorted(w, key=lambda v: (-len(chains[v]), v))
    seq = [chains[v] for v in ordered]
    if not seq[-1]:
        return None
    for prev, cur in zip(seq, seq[1:]):
        if not (cur < prev):
            return None
    return PrismOrder(tuple(ordered), tuple(seq))


@dataclass(frozen=True)
class ModelGraphPartition:
    """A candidate six-part split: two pole vertices and four side sets."""

    c_l: str
    c_r: str
    u_l: frozenset[str]
    u_r: frozenset[str]
    d_l: frozenset[str]
    d_r: frozenset[str]

    def all_vertices(self) -> frozenset[str]:
        return frozenset({self.c_l, self.c_r}) | self.u_l | self.u_r | self.d_l | self.d_r

    def parts(self) -> dict[str, frozenset[str]]:
        return {"u_l": self.u_l, "u_r": self.u_r, "d_l": self.d_l, "d_r": self.d_r}


@dataclass(frozen=True)
class ModelCheckResult:
    ok: bool
    failed: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_model_graph(graph: SimplicialGraph, part: ModelGraphPartition) -> ModelCheckResult:
    """Verify the four conditions making a partitioned graph a model graph.

    (1) the poles' neighborhoods are exactly their two side sets, (2) no
    edge joins an upper-side vertex to a lower-side vertex, (3) the upper
    sides span a prism, (4) the lower sides span a prism.  Such graphs are
    always six-large, which the test suite checks independently.
    """
    pieces = [frozenset({part.c_l}), frozenset({part.c_r})] + list(part.parts().values())
    union: set[str] = set()
    total = 0
    for piece in pieces:
        if not piece:
            raise ValueError("partition parts must be nonempty")
        union |= piece
        total += len(piece)
    if total != len(union) or union != set(graph.vertices()):
        raise ValueError("the six parts must partition the graph's vertex set")

    if graph.neighbors(part.c_l) != part.u_l | part.d_l:
        return ModelCheckResult(False, "c_l-neighbors",
                                "neighbors of c_l are not exactly U_l + D_l")
    if graph.neighbors(part.c_r) != part.u_r | part.d_r:
        return ModelCheckResult(False, "c_r-neighbors",
                                "neighbors of c_r are not exactly U_r + D_r")
    uppers = part.u_l | part.u_r
    lowers = part.d_l | part.d_r
    for u in sorted(uppers):
        bad = graph.neighbors(u) & lowers
        if bad:
            return ModelCheckResult(False, "upper-lower-edge",
                                    f"edge between {u} and {sorted(bad)[0]}")
    if recognize_prism(graph, part.u_l, part.u_r) is None:
        return ModelCheckResult(False, "u-prism", "U_l and U_r do not span a prism")
    if recognize_prism(graph, part.d_l, part.d_r) is None:
        return ModelCheckResult(False, "d-prism", "D_l and D_r do not span a prism")
    return ModelCheckResult(True)


def link_distance(graph: SimplicialGraph, v1: str, v2: str) -> int | float:
    """Hop distance between two vertices; math.inf when not connected."""
    if v1 not in graph or v2 not in graph:
        raise KeyError("both vertices must lie in the graph")
    if v1 == v2:
        return 0
    dist = {v1: 0}
    frontier = [v1]
    while frontier:
        nxt = []
        for u in frontier:
            for w in graph.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w == v2:
                        return dist[w]
                    nxt.append(w)
        frontier = nxt
    return math.inf


def max_clique_size(graph: SimplicialGraph) -> int:
    """Size of a maximum clique (branch and bound with pivoting)."""
    adj = {v: set(graph.neighbors(v)) for v in graph.vertices()}
    best = 0

    def expand(size: int, cands: set[str]) -> None:
        nonlocal best
        if not cands:
            best = max(best, size)
            return
        if size + len(cands) <= best:
            return
        pivot = max(cands, key=lambda u: len(adj[u] & cands))
        for v in sorted(cands - adj[pivot]):
            expand(size + 1, cands & adj[v])
            cands = cands - {v}

    expand(0, set(adj))
    return best
