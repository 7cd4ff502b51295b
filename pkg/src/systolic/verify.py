"""The per-n verification suites behind the `verify-lemmas` command.

Each check returns a dict ``{"id", "status", "detail", ...}`` with stable key
order; failures carry explicit witnesses.  Check ids name what is verified:

* ``positive-words``        length-graded equality classes of positive words
* ``cell-embedding``        cells have 3n-2 pairwise distinct vertices
* ``precell-intersections`` overlap of any two cells is empty, a point, or a
                            short boundary path ending at tips, and opposite-
                            half overlaps of a common cell are near-disjoint
* ``zigzag-geometry``       diagonal edges exist exactly across shared facing
                            edges, close into triangles, and overlap sizes
                            match the pair classification
* ``adjacency-table``       brute-force adjacency counts between interior
                            vertices of overlapping cells in a ball
* ``real-link``             the identity link is a model graph (a 6-cycle for
                            n = 2) with no induced 4- or 5-cycle
* ``interior-links``        same for every interior vertex
* ``link-distances``        the distance table between the four direction
                            vertices of the identity link
* ``dimension``             the top simplex dimension equals n

With ``systolize=False`` only the real-link check runs, on the subdivided
complex without diagonal edges.  That check then fails with a witness cycle:
the diagonals are exactly what repairs the real-vertex links, while interior
vertices of the plain subdivision already sit in six triangles.
"""

from __future__ import annotations

from .complexes import (
    Cell,
    InteriorVertex,
    RealVertex,
    adjacent,
    base_cell,
    boundary_vertex_element,
    build_ball,
    complex_dimension,
    identity_link,
    interior_link,
    interior_link_partition,
    precell_intersection,
    real_link_partition,
    DEFAULT_MAX_CELLS,
)
from .links import check_model_graph, find_full_short_cycle, link_distance
from .words import CanonicalForm, delta, generator, lower_word, positive_equal_classes, upper_word


def _result(check_id: str, ok: bool, detail: str, **extra) -> dict:
    out = {"id": check_id, "status": "pass" if ok else "fail", "detail": detail}
    out.update(extra)
    return out


def check_positive_words(n: int) -> dict:
    """Equality classes of positive words up to the relator length."""
    problems = []
    for length in range(n + 1):
        classes = positive_equal_classes(length, n)
        nontrivial = [c for c in classes if len(c) > 1]
        if length < n and nontrivial:
            problems.append(f"length {length}: unexpected classes {nontrivial[:3]}")
        if length == n and nontrivial != [[upper_word(n), lower_word(n)]]:
            problems.append(f"length {n}: classes {nontrivial} not exactly the relator halves")
    return _result(
        "positive-words",
        not problems,
        "; ".join(problems) or f"all classes trivial below length {n}, relator halves merge at {n}",
    )


def check_cell_embedding(n: int, radius: int = 2, max_cells: int = DEFAULT_MAX_CELLS) -> dict:
    """Every cell in a small ball has 3n-2 pairwise distinct vertices."""
    ball = build_ball(n, radius, systolize=False, max_cells=max_cells)
    expected = 3 * n - 2 if n >= 3 else 4
    for cell in ball.cells():
        keys = {v.key for v in cell.vertices()}
        if len(keys) != expected:
            return _result(
                "cell-embedding", False,
                f"cell at {cell.tip.key} has {len(keys)} distinct vertices, expected {expected}",
            )
    return _result("cell-embedding", True, f"{ball.cell_count()} cells, {expected} distinct vertices each")


def _boundary_keys(cell: Cell) -> frozenset[str]:
    return frozenset(v.element.key for v in cell.boundary_vertices())


def check_precell_intersections(
    n: int, radius: int | None = None, max_cells: int = DEFAULT_MAX_CELLS
) -> dict:
    """Exhaustive pair and triple overlap checks over a ball.

    Pairs: every nonempty overlap is a point or a connected boundary path,
    lies inside a single half of each cell, is shorter than a half, and when
    it has an edge its two ends are a left tip of one cell and a right tip
    of the other.  Triples: two cells meeting a third along opposite halves
    share at most a point.
    """
    if radius is None:
        radius = 2 * n if n <= 4 else n + 2
    ball = build_ball(n, radius, systolize=False, max_cells=max_cells)
    cells = {key: Cell(tip) for key, tip in ball.tips.items()}
    bkeys = {key: _boundary_keys(cell) for key, cell in cells.items()}

    index: dict[str, list[str]] = {}
    for key, elems in bkeys.items():
        for e in elems:
            index.setdefault(e, []).append(key)
    pairs: set[tuple[str, str]] = set()
    for ks in index.values():
        ks.sort()
        for a in range(len(ks)):
            for b in range(a + 1, len(ks)):
                pairs.add((ks[a], ks[b]))

    checked = 0
    upper_partners: dict[str, list[str]] = {k: [] for k in cells}
    lower_partners: dict[str, list[str]] = {k: [] for k in cells}
    for k1, k2 in sorted(pairs):
        inter = precell_intersection(cells[k1], cells[k2])
        checked += 1
        if inter.kind == "other":
            return _result(
                "precell-intersections", False,
                f"cells {k1} and {k2} overlap in a non-path: {inter.vertices}",
            )
        if inter.kind == "empty":
            continue
        if not inter.halves[0] or not inter.halves[1]:
            return _result(
                "precell-intersections", False,
                f"overlap of {k1} and {k2} is not contained in one half of each cell",
            )
        if inter.kind == "path":
            if len(inter.edges) >= n:
                return _result(
                    "precell-intersections", False,
                    f"overlap of {k1} and {k2} is not properly shorter than a half",
                )
            roles1, roles2 = inter.endpoint_roles
            x, y = inter.endpoints
            tip_ok = False
            for p, q in ((x, y), (y, x)):
                r1, r2 = roles1.get(p, ""), roles2.get(q, "")
                if r1 in ("l", "r") and r2 in ("l", "r") and r1 != r2:
                    tip_ok = True
            if not tip_ok:
                return _result(
                    "precell-intersections", False,
                    f"overlap of {k1} and {k2} does not end at a left tip and a right tip "
                    f"(roles {roles1} / {roles2})",
                )
            # catalogue which half of k2 (resp. k1) carries the shared path
            if "upper" in inter.halves[1]:
                upper_partners[k2].append(k1)
            if "lower" in inter.halves[1]:
                lower_partners[k2].append(k1)
            if "upper" in inter.halves[0]:
                upper_partners[k1].append(k2)
            if "lower" in inter.halves[0]:
                lower_partners[k1].append(k2)

    triples = 0
    for mid in sorted(cells):
        for k1 in upper_partners[mid]:
            for k3 in lower_partners[mid]:
                if k1 == k3:
                    continue
                triples += 1
                if len(bkeys[k1] & bkeys[k3]) > 1:
                    return _result(
                        "precell-intersections", False,
                        f"cells {k1} and {k3} meet {mid} along opposite halves "
                        f"but share more than a point",
                    )
    return _result(
        "precell-intersections", True,
        f"{checked} overlapping pairs and {triples} opposite-half triples verified "
        f"in the radius-{radius} ball ({ball.cell_count()} cells)",
    )


def check_zigzag_geometry(n: int) -> dict:
    """Per overlap class: shared-edge counts, facing criterion, triangles."""
    if n < 3:
        return _result("zigzag-geometry", True, "no diagonal edges for n = 2")
    base = base_cell(n)
    for name in ("u", "d"):
        for k in range(1, n):
            g = boundary_vertex_element(name, n, k)
            partner = Cell(g.inverse())
            inter = precell_intersection(base, partner)
            want_edges = n - k
            if inter.kind != "path" or len(inter.edges) != want_edges:
                return _result(
                    "zigzag-geometry", False,
                    f"{name}_{k}: expected a shared path of {want_edges} edges, got "
                    f"{inter.kind} with {len(inter.edges)}",
                )
            shared_elems = set(inter.vertices)
            shared_edges = set(inter.edges)
            if k <= n - 2:
                # facing criterion: c_j has a diagonal into the partner cell
                # iff one of its faced edges lies in the shared path
                for j in range(1, n - 1):
                    has_diag = any(
                        adjacent(base.interior(j), InteriorVertex(partner.tip, jj))
                        for jj in range(1, n - 1)
                    )
                    faced = set()
                    for path in ("upper", "lower"):
                        e1 = base.boundary_element(path, j).key
                        e2 = base.boundary_element(path, j + 1).key
                        faced.add((min(e1, e2), max(e1, e2)))
                    if has_diag != bool(faced & shared_edges):
                        return _result(
                            "zigzag-geometry", False,
                            f"{name}_{k}: facing criterion fails at c_{j}",
                        )
                # every diagonal closes a triangle with a shared boundary vertex
                for j in range(1, n - 1):
                    for jj in range(1, n - 1):
                        v1, v2 = base.interior(j), InteriorVertex(partner.tip, jj)
                        if not adjacent(v1, v2):
                            continue
                        closes = False
                        for ekey in shared_elems:
                            w = RealVertex(_element_from_key(n, ekey))
                            if adjacent(v1, w) and adjacent(v2, w):
                                closes = True
                                break
                        if not closes:
                            return _result(
                                "zigzag-geometry", False,
                                f"{name}_{k}: diagonal c_{j} ~ partner c_{jj} closes no triangle",
                            )
    return _result("zigzag-geometry", True, f"all overlap classes verified for n={n}")


def _element_from_key(n: int, key: str) -> CanonicalForm:
    power, tail = key.split(".", 1)
    return CanonicalForm(n, int(power), tail)


def check_adjacency_table(n: int, max_cells: int = DEFAULT_MAX_CELLS) -> dict:
    """Brute-force interior adjacency counts between overlapping cells.

    In a radius-n ball, for 1 <= i < j <= n-1 and both letter families:
    the interior vertices of the j-th partner cell adjacent to the i-th
    partner's c_i are exactly two consecutive ones (one when j = n-1), the
    count transposes correctly, and the shifted diagonal is present for
    i >= 2.
    """
    if n < 4:
        return _result("adjacency-table", True, "table is empty below n = 4")
    ball = build_ball(n, n, systolize=True, max_cells=max_cells)

    def interiors_adjacent_to(v: InteriorVertex, tip: CanonicalForm) -> set[str]:
        nbrs = ball.adj.get(v.key, set())
        return {InteriorVertex(tip, x).key for x in range(1, n - 1)} & nbrs

    for name in ("u", "d"):
        elem = lambda k: boundary_vertex_element(name, n, k)
        for i in range(1, n - 1):
            ti = elem(i).inverse()
            vi = InteriorVertex(ti, i)
            for j in range(i + 1, n):
                tj = elem(j).inverse()
                if j <= n - 2:
                    got = interiors_adjacent_to(vi, tj)
                    want = {InteriorVertex(tj, j).key, InteriorVertex(tj, j - 1).key}
                    if got != want:
                        return _result(
                            "adjacency-table", False,
                            f"{name}: interiors of partner {j} adjacent to c_{i} of partner {i}: "
                            f"{sorted(got)} != {sorted(want)}",
                        )
                    back = interiors_adjacent_to(InteriorVertex(tj, j), ti)
                    want_back = {InteriorVertex(ti, i).key, InteriorVertex(ti, i + 1).key}
                    if back != want_back:
                        return _result(
                            "adjacency-table", False,
                            f"{name}: transposed adjacency fails for i={i}, j={j}",
                        )
                else:
                    got = interiors_adjacent_to(vi, tj)
                    want = {InteriorVertex(tj, j - 1).key}
                    if got != want:
                        return _result(
                            "adjacency-table", False,
                            f"{name}: interiors of partner {n-1} adjacent to c_{i} of partner {i}: "
                            f"{sorted(got)} != {sorted(want)}",
                        )
                if i >= 2:
                    if InteriorVertex(ti, i - 1).key not in ball.adj.get(
                        InteriorVertex(tj, j - 1).key, set()
                    ):
                        return _result(
                            "adjacency-table", False,
                            f"{name}: shifted diagonal missing for i={i}, j={j}",
                        )
    return _result("adjacency-table", True, f"all counts verified in the radius-{n} ball")


def check_real_link(n: int, systolize: bool = True) -> dict:
    graph, _ = identity_link(n, systolize)
    witness = find_full_short_cycle(graph)
    if not systolize:
        # reported honestly: without diagonals the 6-large check fails,
        # which is the expected outcome of the negative control
        return _result(
            "real-link",
            witness is None,
            "no induced short cycle" if witness is None
            else "identity link contains an induced short cycle",
            witness=list(witness) if witness else None,
        )
    if n == 2:
        degs = {graph.degree(v) for v in graph.vertices()}
        ok = len(graph) == 6 and degs == {2} and witness is None
        return _result("real-link", ok, f"identity link is a 6-cycle: {ok}")
    problems = []
    if len(graph) != 4 * n - 2:
        problems.append(f"link has {len(graph)} vertices, expected {4 * n - 2}")
    model = check_model_graph(graph, real_link_partition(n))
    if not model.ok:
        problems.append(f"model-graph condition failed: {model.failed}")
    if witness is not None:
        problems.append(f"induced short cycle {witness}")
    return _result(
        "real-link", not problems,
        "; ".join(problems) or f"{4 * n - 2} vertices, model graph, no induced short cycle",
    )


def check_interior_links(n: int) -> dict:
    if n < 3:
        return _result("interior-links", True, "no interior vertices for n = 2")
    problems = []
    for i in range(1, n - 1):
        graph, _ = interior_link(n, i)
        witness = find_full_short_cycle(graph)
        if len(graph) != 4 * n - 2:
            problems.append(f"c_{i}: {len(graph)} vertices, expected {4 * n - 2}")
        part = interior_link_partition(n, i)
        if part.all_vertices() != set(graph.vertices()):
            problems.append(f"c_{i}: partition does not cover the link")
        else:
            model = check_model_graph(graph, part)
            if not model.ok:
                problems.append(f"c_{i}: model-graph condition failed: {model.failed}")
        if witness is not None:
            problems.append(f"c_{i}: induced short cycle {witness}")
    return _result(
        "interior-links", not problems,
        "; ".join(problems) or f"all {n - 2} interior links are model graphs, none has a short cycle",
    )


def check_link_distances(n: int) -> dict:
    graph, _ = identity_link(n)
    r_inv = delta(n).inverse()
    a_minus = RealVertex(generator("a", n)).key
    b_minus = RealVertex(generator("b", n)).key
    a_plus = RealVertex(r_inv * boundary_vertex_element("d", n, n - 1)).key
    b_plus = RealVertex(r_inv * boundary_vertex_element("u", n, n - 1)).key
    d = lambda x, y: link_distance(graph, x, y)
    got = {
        "a+~a-": d(a_plus, a_minus),
        "b+~b-": d(b_plus, b_minus),
        "a+~b+": d(a_plus, b_plus),
        "a+~b-": d(a_plus, b_minus),
        "a-~b+": d(a_minus, b_plus),
        "a-~b-": d(a_minus, b_minus),
    }
    if n == 2:
        want = {"a+~a-": 3, "b+~b-": 3, "a+~b+": 2, "a+~b-": 1, "a-~b+": 1, "a-~b-": 2}
    else:
        want = {"a+~a-": 3, "b+~b-": 3, "a+~b+": 2, "a+~b-": 2, "a-~b+": 2, "a-~b-": 2}
    ok = got == want
    return _result("link-distances", ok, f"distances {got}" + ("" if ok else f", expected {want}"))


def check_dimension(n: int) -> dict:
    dim = complex_dimension(n)
    return _result("dimension", dim == n, f"top simplex dimension {dim}, expected {n}")


def run_checks(
    n: int,
    radius: int | None = None,
    systolize: bool = True,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> dict:
    """The full per-n suite; returns {"n", "status", "checks"}."""
    if systolize:
        checks = [
            check_positive_words(n),
            check_cell_embedding(n, max_cells=max_cells),
            check_precell_intersections(n, radius=radius, max_cells=max_cells),
            check_zigzag_geometry(n),
        ]
        if n >= 4:
            checks.append(check_adjacency_table(n, max_cells=max_cells))
        checks += [
            check_real_link(n),
            check_interior_links(n),
            check_link_distances(n),
            check_dimension(n),
        ]
    else:
        # without diagonals only the real-vertex links break: interior
        # vertices of the plain subdivision sit in exactly six triangles
        checks = [check_real_link(n, systolize=False)]
    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {"n": n, "status": status, "checks": checks}
