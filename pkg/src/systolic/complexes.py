"""Cells, balls, and vertex links of the triangulated complex for DA(n).

Geometry conventions, fixed once here and enforced by the test suite:

* A cell is a disk bounded by the two relator paths out of a common start
  (the left tip ``l``, a group element) into a common end (the right tip
  ``r = l * D``).  The upper path spells ``abab...``, the lower ``baba...``.
  The boundary vertex reached after ``k`` letters of the upper path is named
  ``u_k`` for odd ``k`` and ``d_k`` for even ``k``; on the lower path the
  names swap.  So ``u_k`` is the length-``k`` prefix of the upper word for
  odd ``k`` and of the lower word for even ``k``, and symmetrically for
  ``d_k``.

* For ``n >= 3`` the disk carries interior vertices ``c_1 .. c_{n-2}`` on a
  spine ``l - c_1 - ... - c_{n-2} - r``, and ``c_i`` is joined to the
  boundary vertices after ``i`` and ``i+1`` steps on both paths (that is, to
  ``u_i``, ``d_i``, ``u_{i+1}``, ``d_{i+1}``).  For ``n = 2`` there are no
  interior vertices and the square gets the diagonal ``l - r``.

* Distinct cells meet in a connected piece of boundary.  When two cells meet
  in a path of at least two edges, diagonal ("zigzag") edges join their
  interior vertices: for the base pair (cell at the identity, cell at
  ``u_k^-1``) the added edges are ``c_j ~ u_k^-1 c_{j+k}`` for
  ``j <= n-2-k`` and ``c_j ~ u_k^-1 c_{j+k-1}`` for ``j <= n-1-k``; the same
  index pattern applies with ``d_k^-1``, and every other overlapping pair is
  a translate of one of these.  Pairs meeting in a single edge get nothing.
  Omitting the zigzag edges altogether gives the unsystolized variant of the
  complex (``systolize=False`` throughout).

The complex itself is the flag completion of this edge structure, so all
link and dimension computations happen on the 1-skeleton.

Link computations come in two flavors.  ``vertex_link`` builds the link of
any vertex directly from the bounded set of cells that can reach it, using
an algebraic adjacency test; it is exact and cheap for any ``n``.
``build_ball`` materializes every cell whose left tip is within a word-length
radius and supports the same queries inside an explicitly tracked exact
region; the test suite checks the two against each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ExactRegionError, ResourceBudgetError
from .links import SimplicialGraph, max_clique_size
from .words import CanonicalForm, alternating, delta, generator, identity

DEFAULT_MAX_CELLS = 200_000


# ---------------------------------------------------------------------------
# vertices and roles


@dataclass(frozen=True)
class RealVertex:
    """A vertex of the underlying group complex, i.e. a group element."""

    element: CanonicalForm

    @property
    def key(self) -> str:
        return f"R:{self.element.key}"


@dataclass(frozen=True)
class InteriorVertex:
    """The i-th subdivision vertex of the cell whose left tip is `cell_tip`."""

    cell_tip: CanonicalForm
    index: int

    @property
    def key(self) -> str:
        return f"C{self.index}:{self.cell_tip.key}"


VertexId = RealVertex | InteriorVertex


def vertex_key(v: VertexId) -> str:
    return v.key


@lru_cache(maxsize=None)
def _prefix_form(n: int, path: str, k: int) -> CanonicalForm:
    first = "a" if path == "upper" else "b"
    if k == n:
        return delta(n)
    return CanonicalForm(n, 0, alternating(first, k))


def boundary_vertex_element(kind: str, n: int, index: int = 0) -> CanonicalForm:
    """The group element at a named boundary position of the base cell.

    `kind` is one of "l", "r", "u", "d"; `index` is required for "u"/"d".
    The parity rule above decides which relator path the name lives on.
    """
    if kind == "l":
        return identity(n)
    if kind == "r":
        return delta(n)
    if kind in ("u", "d"):
        if not 1 <= index <= n - 1:
            raise ValueError(f"{kind}_{index} out of range for n={n}")
        if kind == "u":
            path = "upper" if index % 2 else "lower"
        else:
            path = "lower" if index % 2 else "upper"
        return _prefix_form(n, path, index)
    raise ValueError(f"not a boundary role: {kind!r} (interior vertices have no element)")


def _position_name(n: int, path: str, k: int) -> tuple[str, int]:
    if k == 0:
        return ("l", 0)
    if k == n:
        return ("r", 0)
    if path == "upper":
        return ("u", k) if k % 2 else ("d", k)
    return ("d", k) if k % 2 else ("u", k)


# ---------------------------------------------------------------------------
# cells


@dataclass(frozen=True)
class Cell:
    """A (subdivided) relator disk, identified by its left tip."""

    tip: CanonicalForm

    @property
    def n(self) -> int:
        return self.tip.n

    def boundary_element(self, path: str, k: int) -> CanonicalForm:
        return self.tip * _prefix_form(self.n, path, k)

    def boundary_vertex(self, path: str, k: int) -> RealVertex:
        return RealVertex(self.boundary_element(path, k))

    def interior(self, i: int) -> InteriorVertex:
        if not 1 <= i <= self.n - 2:
            raise ValueError(f"interior index {i} out of range for n={self.n}")
        return InteriorVertex(self.tip, i)

    def left_tip(self) -> RealVertex:
        return RealVertex(self.tip)

    def right_tip(self) -> RealVertex:
        return self.boundary_vertex("upper", self.n)

    def boundary_vertices(self) -> list[RealVertex]:
        """The 2n boundary vertices, each listed once (tips not repeated)."""
        out = [self.boundary_vertex("upper", k) for k in range(self.n + 1)]
        out += [self.boundary_vertex("lower", k) for k in range(1, self.n)]
        return out

    def vertices(self) -> list[VertexId]:
        verts: list[VertexId] = list(self.boundary_vertices())
        verts += [self.interior(i) for i in range(1, self.n - 1)]
        return verts

    def boundary_edges(self) -> list[tuple[RealVertex, RealVertex]]:
        out = []
        for path in ("upper", "lower"):
            for k in range(self.n):
                out.append((self.boundary_vertex(path, k), self.boundary_vertex(path, k + 1)))
        return out

    def edges(self) -> list[tuple[VertexId, VertexId]]:
        """Every edge of the cell: boundary, spine, facing, or the n=2 diagonal."""
        n = self.n
        out: list[tuple[VertexId, VertexId]] = list(self.boundary_edges())
        if n == 2:
            out.append((self.left_tip(), self.right_tip()))
            return out
        spine: list[VertexId] = [self.left_tip()]
        spine += [self.interior(i) for i in range(1, n - 1)]
        spine.append(self.right_tip())
        out += list(zip(spine, spine[1:]))
        for i in range(1, n - 1):
            c = self.interior(i)
            for path in ("upper", "lower"):
                out.append((c, self.boundary_vertex(path, i)))
                out.append((c, self.boundary_vertex(path, i + 1)))
        return out


def cell_at(element: CanonicalForm) -> Cell:
    return Cell(element)


def base_cell(n: int) -> Cell:
    return Cell(identity(n))


# ---------------------------------------------------------------------------
# cell pairs and zigzag edges


@dataclass(frozen=True)
class ZigzagPairClass:
    """Orbit label of an overlapping cell pair: which tip family, which index."""

    kind: str  # "upper" (u_i) or "lower" (d_i)
    i: int


def zigzag_edges(
    n: int, cls: ZigzagPairClass, tip: CanonicalForm | None = None
) -> list[tuple[InteriorVertex, InteriorVertex]]:
    """Diagonal edges for the pair (cell at `tip`, cell at `tip * g^-1`).

    Here g is ``u_i`` for an "upper" class and ``d_i`` for a "lower" one.
    Classes with ``i = n - 1`` are legal labels but the index ranges are
    empty: such cells share one edge only and get no diagonals.
    """
    if n < 3:
        raise ValueError("zigzag edges exist only for n >= 3")
    if cls.kind not in ("upper", "lower"):
        raise ValueError(f"unknown pair kind {cls.kind!r}")
    if not 1 <= cls.i <= n - 1:
        raise ValueError(f"pair index {cls.i} out of range for n={n}")
    if tip is None:
        tip = identity(n)
    g = boundary_vertex_element("u" if cls.kind == "upper" else "d", n, cls.i)
    partner = tip * g.inverse()
    i = cls.i
    out = []
    for j in range(1, n - 1 - i):
        out.append((InteriorVertex(tip, j), InteriorVertex(partner, j + i)))
    for j in range(1, n - i):
        out.append((InteriorVertex(tip, j), InteriorVertex(partner, j + i - 1)))
    return out


@lru_cache(maxsize=None)
def _pair_table(n: int) -> dict[str, tuple[str, int, bool]]:
    """element key of u_i^{+-1} / d_i^{+-1} -> (kind, i, tip_is_first_cell).

    For tips h1, h2 with h1^-1 h2 = u_i^-1, the first cell plays the base
    role in the zigzag scheme (True); for h1^-1 h2 = u_i the roles swap.
    """
    table: dict[str, tuple[str, int, bool]] = {}
    for kind, name in (("upper", "u"), ("lower", "d")):
        for i in range(1, n):
            g = boundary_vertex_element(name, n, i)
            table[g.inverse().key] = (kind, i, True)
            table[g.key] = (kind, i, False)
    return table


def classify_pair(
    c1: Cell, c2: Cell
) -> tuple[CanonicalForm, ZigzagPairClass] | None:
    """Identify an overlapping cell pair up to the group action.

    Returns ``(alpha, cls)`` where the cell at ``alpha`` plays the base role
    and its partner sits at ``alpha * g^-1``; None when the two cells meet in
    at most a point (their tips do not differ by any ``u_i`` or ``d_i``).
    Pairs with ``i = n - 1`` are classified even though they carry no
    diagonals (they share a single edge).
    """
    if c1.n != c2.n:
        raise ValueError("cells from different complexes")
    if c1.tip == c2.tip:
        raise ValueError("classify_pair needs two distinct cells")
    n = c1.n
    hit = _pair_table(n).get((c1.tip.inverse() * c2.tip).key)
    if hit is None:
        return None
    kind, i, first_is_base = hit
    alpha = c1.tip if first_is_base else c2.tip
    return alpha, ZigzagPairClass(kind, i)


# ---------------------------------------------------------------------------
# algebraic adjacency


class _AdjacencyTables:
    """Per-n lookup data for the algebraic edge test."""

    def __init__(self, n: int):
        self.n = n
        gens = [generator(ch, n) for ch in "ab"]
        self.real_step_keys = {g.key for g in gens} | {g.inverse().key for g in gens}
        if n == 2:
            self.real_step_keys |= {delta(2).key, delta(2).inverse().key}
        # interior i is adjacent to the boundary elements facing it plus the
        # spine endpoints when i is extremal
        self.facing_keys: dict[int, set[str]] = {}
        for i in range(1, n - 1):
            keys = set()
            for name in ("u", "d"):
                keys.add(boundary_vertex_element(name, n, i).key)
                keys.add(boundary_vertex_element(name, n, i + 1).key)
            if i == 1:
                keys.add(identity(n).key)
            if i == n - 2:
                keys.add(delta(n).key)
            self.facing_keys[i] = keys
        self.pair_table = _pair_table(n)
        roles: list[CanonicalForm] = [identity(n), delta(n)]
        for name in ("u", "d"):
            roles += [boundary_vertex_element(name, n, k) for k in range(1, n)]
        self.role_inverses = [r.inverse() for r in roles]
        # tips of all cells overlapping a given one in >= 2 edges
        self.partner_offsets: list[CanonicalForm] = []
        for name in ("u", "d"):
            for k in range(1, n - 1):
                g = boundary_vertex_element(name, n, k)
                self.partner_offsets += [g, g.inverse()]


@lru_cache(maxsize=None)
def _tables(n: int) -> _AdjacencyTables:
    return _AdjacencyTables(n)


def adjacent(v1: VertexId, v2: VertexId, systolize: bool = True) -> bool:
    """Whether two vertices are joined by an edge of the complex.

    Decides all three edge mechanisms algebraically: steps between group
    elements (including the n=2 diagonals), membership of a real vertex on
    the facing boundary of an interior one, and the zigzag scheme between
    interior vertices of overlapping cells.
    """
    if isinstance(v1, RealVertex):
        n = v1.element.n
    else:
        n = v1.cell_tip.n
    t = _tables(n)
    if isinstance(v1, RealVertex) and isinstance(v2, RealVertex):
        if v1.element == v2.element:
            return False
        return (v1.element.inverse() * v2.element).key in t.real_step_keys
    if isinstance(v1, RealVertex):
        v1, v2 = v2, v1
    if isinstance(v2, RealVertex):
        assert isinstance(v1, InteriorVertex)
        step = v1.cell_tip.inverse() * v2.element
        return step.key in t.facing_keys[v1.index]
    assert isinstance(v1, InteriorVertex) and isinstance(v2, InteriorVertex)
    if v1.cell_tip == v2.cell_tip:
        return abs(v1.index - v2.index) == 1
    if not systolize:
        return False
    hit = t.pair_table.get((v1.cell_tip.inverse() * v2.cell_tip).key)
    if hit is None:
        return False
    _, k, first_is_base = hit
    if k > n - 2:
        return False
    if first_is_base:
        j, m = v1.index, v2.index
    else:
        j, m = v2.index, v1.index
    return (m == j + k and j <= n - 2 - k) or (m == j + k - 1 and j <= n - 1 - k)


def neighbors(v: VertexId, systolize: bool = True) -> set[VertexId]:
    """The exact neighbor set of a vertex, assembled from its ambient cells."""
    if isinstance(v, RealVertex):
        n = v.element.n
        t = _tables(n)
        out: set[VertexId] = set()
        for role_inv in t.role_inverses:
            tip = v.element * role_inv
            cell = Cell(tip)
            for a, b in cell.edges():
                if a == v:
                    out.add(b)
                elif b == v:
                    out.add(a)
        return out

    n = v.cell_tip.n
    t = _tables(n)
    h, i = v.cell_tip, v.index
    cell = Cell(h)
    out = set()
    for name in ("u", "d"):
        out.add(RealVertex(h * boundary_vertex_element(name, n, i)))
        out.add(RealVertex(h * boundary_vertex_element(name, n, i + 1)))
    out.add(InteriorVertex(h, i - 1) if i > 1 else cell.left_tip())
    out.add(InteriorVertex(h, i + 1) if i < n - 2 else cell.right_tip())
    if systolize:
        for name in ("u", "d"):
            for k in range(1, n - 1):
                g = boundary_vertex_element(name, n, k)
                back = h * g.inverse()
                if i <= n - 2 - k:
                    out.add(InteriorVertex(back, i + k))
                if i <= n - 1 - k:
                    out.add(InteriorVertex(back, i + k - 1))
                fwd = h * g
                if i - k >= 1:
                    out.add(InteriorVertex(fwd, i - k))
                if i - k + 1 >= 1 and k <= i:
                    out.add(InteriorVertex(fwd, i - k + 1))
    return out


def vertex_link(
    v: VertexId, systolize: bool = True
) -> tuple[SimplicialGraph, dict[str, VertexId]]:
    """The link of a vertex: full subgraph on its neighbors, plus a key map."""
    nbrs = sorted(neighbors(v, systolize), key=vertex_key)
    vmap = {w.key: w for w in nbrs}
    graph = SimplicialGraph(vmap)
    for w1, w2 in itertools.combinations(nbrs, 2):
        if adjacent(w1, w2, systolize):
            graph.add_edge(w1.key, w2.key)
    return graph, vmap


def identity_link(n: int, systolize: bool = True) -> tuple[SimplicialGraph, dict[str, VertexId]]:
    """Link of the identity vertex (every real vertex looks the same)."""
    return vertex_link(RealVertex(identity(n)), systolize)


def interior_link(
    n: int, i: int, systolize: bool = True
) -> tuple[SimplicialGraph, dict[str, VertexId]]:
    """Link of the interior vertex c_i of the base cell."""
    return vertex_link(base_cell(n).interior(i), systolize)


# ---------------------------------------------------------------------------
# the structured six-part partitions of the two link families


def _model_partition(c_l, c_r, u_l, u_r, d_l, d_r):
    from .links import ModelGraphPartition

    return ModelGraphPartition(
        c_l=c_l.key,
        c_r=c_r.key,
        u_l=frozenset(v.key for v in u_l),
        u_r=frozenset(v.key for v in u_r),
        d_l=frozenset(v.key for v in d_l),
        d_r=frozenset(v.key for v in d_r),
    )


def real_link_partition(n: int):
    """The six-part split of the identity link into poles, U-, and D-sides.

    The poles are the interior vertices of the two cells whose tips are the
    identity and r^-1; each side set has n - 1 vertices, one real and n - 2
    interior.  Requires n >= 3 (for n = 2 the link is a plain 6-cycle).
    """
    if n < 3:
        raise ValueError("the six-part split needs n >= 3; n = 2 links are 6-cycles")
    r_inv = delta(n).inverse()

    def u(k):
        return boundary_vertex_element("u", n, k)

    def d(k):
        return boundary_vertex_element("d", n, k)

    c_r = InteriorVertex(identity(n), 1)
    c_l = InteriorVertex(r_inv, n - 2)
    d_l = [RealVertex(r_inv * d(n - 1))] + [
        InteriorVertex(u(j).inverse(), j - 1) for j in range(2, n)
    ]
    d_r = [RealVertex(d(1))] + [InteriorVertex(u(j).inverse(), j) for j in range(1, n - 1)]
    u_l = [RealVertex(r_inv * u(n - 1))] + [
        InteriorVertex(d(j).inverse(), j - 1) for j in range(2, n)
    ]
    u_r = [RealVertex(u(1))] + [InteriorVertex(d(j).inverse(), j) for j in range(1, n - 1)]
    return _model_partition(c_l, c_r, u_l, u_r, d_l, d_r)


def interior_link_partition(n: int, i: int):
    """The six-part split of the link of c_i in the base cell.

    The poles are the spine neighbors c_{i-1} and c_{i+1} (the tips when i is
    extremal).  The cells contributing to the upper sides are those sharing
    the boundary edge faced by c_i on the upper path; their tips are
    x * y_j^-1 where x is the first endpoint of that edge, and the letter
    family of x flips with the parity of i.
    """
    if n < 3:
        raise ValueError("interior vertices need n >= 3")
    if not 1 <= i <= n - 2:
        raise ValueError(f"interior index {i} out of range for n={n}")
    base = base_cell(n)

    def u(k):
        return boundary_vertex_element("u", n, k)

    def d(k):
        return boundary_vertex_element("d", n, k)

    if i % 2:
        top_l, top_r = RealVertex(u(i)), RealVertex(d(i + 1))
        p = lambda j: u(i) * (u(j).inverse() if j else identity(n))
        q = lambda j: d(i) * (d(j).inverse() if j else identity(n))
        bot_l, bot_r = RealVertex(d(i)), RealVertex(u(i + 1))
    else:
        top_l, top_r = RealVertex(d(i)), RealVertex(u(i + 1))
        p = lambda j: d(i) * (d(j).inverse() if j else identity(n))
        q = lambda j: u(i) * (u(j).inverse() if j else identity(n))
        bot_l, bot_r = RealVertex(u(i)), RealVertex(d(i + 1))

    c_l = base.interior(i - 1) if i > 1 else base.left_tip()
    c_r = base.interior(i + 1) if i < n - 2 else base.right_tip()
    u_l = [top_l] + [InteriorVertex(p(j), j) for j in range(1, i)] + [
        InteriorVertex(p(j), j - 1) for j in range(i + 1, n)
    ]
    u_r = [top_r] + [InteriorVertex(p(j), j + 1) for j in range(0, i)] + [
        InteriorVertex(p(j), j) for j in range(i + 1, n - 1)
    ]
    d_l = [bot_l] + [InteriorVertex(q(j), j) for j in range(1, i)] + [
        InteriorVertex(q(j), j - 1) for j in range(i + 1, n)
    ]
    d_r = [bot_r] + [InteriorVertex(q(j), j + 1) for j in range(0, i)] + [
        InteriorVertex(q(j), j) for j in range(i + 1, n - 1)
    ]
    return _model_partition(c_l, c_r, u_l, u_r, d_l, d_r)


def find_unsystolized_five_cycle(n: int) -> tuple[VertexId, ...] | None:
    """An induced 5-cycle through the identity in the unsystolized complex.

    Searches for the configuration that motivates the zigzag edges: a
    chordless cycle [real, interior, interior, real, interior] starting at
    the identity vertex.  All adjacency decisions use the exact algebraic
    test with diagonals disabled, so a returned cycle is a genuine witness
    that the subdivided complex alone is not six-large.  Needs n >= 4.
    """
    v0: VertexId = RealVertex(identity(n))
    n0 = neighbors(v0, systolize=False)
    sort = lambda vs: sorted(vs, key=vertex_key)
    for v1 in sort(x for x in n0 if isinstance(x, InteriorVertex)):
        n1 = neighbors(v1, systolize=False)
        for v2 in sort(x for x in n1 if isinstance(x, InteriorVertex) and x != v0 and x not in n0):
            n2 = neighbors(v2, systolize=False)
            for v3 in sort(
                x
                for x in n2
                if isinstance(x, RealVertex) and x != v0 and x not in n0 and x not in n1
            ):
                n3 = neighbors(v3, systolize=False)
                for v4 in sort(
                    x
                    for x in n3 & n0
                    if isinstance(x, InteriorVertex) and x not in n1 and x not in n2
                ):
                    return (v0, v1, v2, v3, v4)
    return None


def complex_dimension(n: int) -> int:
    """Dimension of the flag complex: one orbit representative per vertex type.

    A maximal simplex through a vertex is that vertex joined to a maximal
    clique of its link, so the dimension is the largest clique size over the
    links of the identity vertex and of each interior vertex c_i.
    """
    best = max_clique_size(identity_link(n)[0])
    for i in range(1, n - 1):
        best = max(best, max_clique_size(interior_link(n, i)[0]))
    return best


# ---------------------------------------------------------------------------
# precell intersections


@dataclass(frozen=True)
class Intersection:
    """The overlap of two cell boundaries, computed by element equality.

    `kind` classifies the overlap: "empty", "vertex" (single point), "path"
    (a simple edge path), or "other" (anything else, which the structure
    theory excludes and the test suite asserts never happens).  `halves`
    records, per cell, which of its boundary halves contain the whole
    overlap.  `endpoint_roles` maps each path endpoint to its role in each
    cell ("l"/"r"/interior boundary name).
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    kind: str
    halves: tuple[frozenset[str], frozenset[str]]
    endpoints: tuple[str, ...]
    endpoint_roles: tuple[dict[str, str], dict[str, str]]

    @property
    def size(self) -> int:
        return len(self.vertices)


@lru_cache(maxsize=None)
def _boundary_data(cell: Cell):
    elems: dict[str, tuple[str, int]] = {}
    halves = {"upper": set(), "lower": set()}
    edges = set()
    for path in ("upper", "lower"):
        prev = None
        for k in range(cell.n + 1):
            key = cell.boundary_element(path, k).key
            halves[path].add(key)
            if key not in elems or k in (0, cell.n):
                elems[key] = _position_name(cell.n, path, k)
            if prev is not None:
                edges.add((min(prev, key), max(prev, key)))
            prev = key
    return elems, halves, edges


def precell_intersection(c1: Cell, c2: Cell) -> Intersection:
    """Intersect the boundary 2n-gons of two cells as vertex and edge sets."""
    if c1.n != c2.n:
        raise ValueError("cells from different complexes")
    elems1, halves1, edges1 = _boundary_data(c1)
    elems2, halves2, edges2 = _boundary_data(c2)
    shared = sorted(elems1.keys() & elems2.keys())
    shared_edges = sorted(edges1 & edges2)

    if not shared:
        kind = "empty"
    elif len(shared) == 1 and not shared_edges:
        kind = "vertex"
    else:
        deg: dict[str, int] = {v: 0 for v in shared}
        for a, b in shared_edges:
            deg[a] += 1
            deg[b] += 1
        ends = [v for v in shared if deg[v] == 1]
        connected = False
        if shared_edges and len(shared_edges) == len(shared) - 1:
            seen = {shared[0]}
            frontier = [shared[0]]
            adj: dict[str, list[str]] = {v: [] for v in shared}
            for a, b in shared_edges:
                adj[a].append(b)
                adj[b].append(a)
            while frontier:
                nxt = []
                for x in frontier:
                    for y in adj[x]:
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            connected = len(seen) == len(shared)
        kind = "path" if connected and len(ends) == 2 and all(d <= 2 for d in deg.values()) else "other"

    halves = tuple(
        frozenset(h for h in ("upper", "lower") if set(shared) <= hs[h])
        for hs in (halves1, halves2)
    )
    if kind == "path":
        endpoints = tuple(sorted(v for v in shared if sum(1 for a, b in shared_edges if v in (a, b)) == 1))
    elif kind == "vertex":
        endpoints = tuple(shared)
    else:
        endpoints = ()
    roles = tuple(
        {v: f"{elems[v][0]}{elems[v][1] or ''}" for v in endpoints if v in elems}
        for elems in (elems1, elems2)
    )
    return Intersection(tuple(shared), tuple(shared_edges), kind, halves, endpoints, roles)


# ---------------------------------------------------------------------------
# balls


@dataclass
class BallComplex:
    """Every cell whose left tip lies within a word-length radius.

    The graph contains all edges witnessed by included cells and by zigzag
    pairs of included cells; links are exact for vertices whose ambient
    cells (and, for interior vertices, overlap partners) are all included,
    which is what `exact_link_region` tests.
    """

    n: int
    radius: int
    systolize: bool
    tips: dict[str, CanonicalForm]
    tip_length: dict[str, int]
    vertices: dict[str, VertexId]
    adj: dict[str, set[str]]
    zigzag: set[tuple[str, str]]

    def cells(self) -> Iterator[Cell]:
        for key in sorted(self.tips):
            yield Cell(self.tips[key])

    def cell_count(self) -> int:
        return len(self.tips)

    def graph(self) -> SimplicialGraph:
        g = SimplicialGraph(self.adj)
        for v, nbrs in self.adj.items():
            for w in nbrs:
                if v < w:
                    g.add_edge(v, w)
        return g

    def exact_link_region(self, v: VertexId) -> bool:
        t = _tables(self.n)
        if isinstance(v, RealVertex):
            return all((v.element * inv).key in self.tips for inv in t.role_inverses)
        if v.cell_tip.key not in self.tips:
            return False
        return all((v.cell_tip * off).key in self.tips for off in t.partner_offsets)

    def link_of(self, v: VertexId) -> SimplicialGraph:
        """Full subgraph on the neighbors of v; exact-region vertices only."""
        if not self.exact_link_region(v):
            raise ExactRegionError(
                f"{v.key} lies outside the exact link region of this ball "
                f"(n={self.n}, radius={self.radius})"
            )
        nbrs = self.adj.get(v.key)
        if nbrs is None:
            raise ExactRegionError(f"{v.key} is not a vertex of this ball")
        link = SimplicialGraph(nbrs)
        for a in nbrs:
            for b in self.adj[a] & nbrs:
                if a < b:
                    link.add_edge(a, b)
        return link

    def max_simplex_dimension(self) -> int:
        """Top simplex dimension over cliques touching the exact region.

        Every maximal simplex through an exact vertex is that vertex joined
        to a clique of its (complete) link, so restricting to exact stars is
        sound and misses nothing the ball can certify.
        """
        best = 0
        for key in sorted(self.vertices):
            v = self.vertices[key]
            if not self.exact_link_region(v):
                continue
            best = max(best, max_clique_size(self.link_of(v)))
        if best == 0:
            raise ExactRegionError("ball has no exact-region vertices; increase the radius")
        return best

    def to_json_dict(self) -> dict:
        vertex_records = []
        for key in sorted(self.vertices):
            v = self.vertices[key]
            if isinstance(v, RealVertex):
                vertex_records.append({"key": key, "kind": "real", "element": v.element.key})
            else:
                vertex_records.append(
                    {"key": key, "kind": "interior", "cell": v.cell_tip.key, "i": v.index}
                )
        edge_records = []
        for v in sorted(self.adj):
            for w in sorted(self.adj[v]):
                if v < w:
                    kind = "zigzag" if (v, w) in self.zigzag else "cell"
                    edge_records.append([v, w, kind])
        return {
            "n": self.n,
            "radius": self.radius,
            "systolized": self.systolize,
            "cell_count": self.cell_count(),
            "vertex_count": len(self.vertices),
            "edge_count": len(edge_records),
            "vertices": vertex_records,
            "edges": edge_records,
        }


def build_ball(
    n: int, radius: int, systolize: bool = True, max_cells: int = DEFAULT_MAX_CELLS
) -> BallComplex:
    """Materialize every cell whose left tip has word length <= radius."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = [generator(ch, n) for ch in "ab"]
    steps = gens + [g.inverse() for g in gens]

    tips: dict[str, CanonicalForm] = {identity(n).key: identity(n)}
    tip_length = {identity(n).key: 0}
    frontier = [identity(n)]
    for r in range(1, radius + 1):
        nxt = []
        for f in frontier:
            for s in steps:
                h = f * s
                if h.key not in tips:
                    tips[h.key] = h
                    tip_length[h.key] = r
                    nxt.append(h)
                    if len(tips) > max_cells:
                        raise ResourceBudgetError(
                            f"ball n={n} radius={radius} needs more than "
                            f"{max_cells} cells (stopped at word length {r})",
                            attempted=len(tips),
                            budget=max_cells,
                        )
        frontier = nxt

    vertices: dict[str, VertexId] = {}
    adj: dict[str, set[str]] = {}

    def add_edge(a: VertexId, b: VertexId) -> None:
        ka, kb = a.key, b.key
        vertices.setdefault(ka, a)
        vertices.setdefault(kb, b)
        adj.setdefault(ka, set()).add(kb)
        adj.setdefault(kb, set()).add(ka)

    for tip in tips.values():
        for a, b in Cell(tip).edges():
            add_edge(a, b)

    zigzag: set[tuple[str, str]] = set()
    if systolize and n >= 3:
        for tip in tips.values():
            for name, kind in (("u", "upper"), ("d", "lower")):
                for i in range(1, n - 1):
                    g = boundary_vertex_element(name, n, i)
                    partner = tip * g.inverse()
                    if partner.key not in tips:
                        continue
                    for a, b in zigzag_edges(n, ZigzagPairClass(kind, i), tip):
                        add_edge(a, b)
                        zigzag.add((min(a.key, b.key), max(a.key, b.key)))

    return BallComplex(n, radius, systolize, tips, tip_length, vertices, adj, zigzag)


def link_of(v: VertexId, ball: BallComplex) -> SimplicialGraph:
    return ball.link_of(v)


def max_simplex_dimension(ball: BallComplex) -> int:
    return ball.max_simplex_dimension()
