"""Acceptance suite: one test per criterion, exact expectations throughout.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the
per-criterion PASS lines).  Every expected value is either trivial, frozen
from an independent brute-force oracle, or checked against one inline.
"""

import itertools
import json
import random

import networkx as nx
import pytest

from oracle import SignedOracle, partitions_agree, signed_words
from systolic.cli import main
from systolic.complexes import (
    RealVertex,
    adjacent,
    boundary_vertex_element,
    complex_dimension,
    find_unsystolized_five_cycle,
    identity_link,
    interior_link,
    interior_link_partition,
    real_link_partition,
)
from systolic.gamma import (
    assemble_real_link,
    certify_systolic_links,
    check_almost_large,
    parse_defining_graph,
)
from systolic.links import check_model_graph, find_full_short_cycle, link_distance
from systolic.verify import (
    check_adjacency_table,
    check_cell_embedding,
    check_precell_intersections,
)
from systolic.words import (
    canonicalize,
    delta,
    generator,
    lower_word,
    positive_equal_classes,
    upper_word,
)

ORACLE_WORD_LENGTH = 8
# universe cap per n: joining equal words may require inserting canceling
# pairs to materialize a relator occurrence, costing up to n extra letters,
# so the closure needs word-length + n headroom to decide equality exactly
ORACLE_UNIVERSE_LENGTH = {3: 10, 4: 12}


def test_acceptance_01_word_oracle_soundness():
    """Canonical-form equality == rewriting-closure equality, n in {3, 4}."""
    for n in (3, 4):
        oracle = SignedOracle(n, ORACLE_UNIVERSE_LENGTH[n])
        keys = {}
        roots = {}
        for w in signed_words(ORACLE_WORD_LENGTH):
            keys[w] = canonicalize(w, n).key
            roots[w] = oracle.root(w)
        assert partitions_agree(keys, roots), f"oracle mismatch for n={n}"
        assert len(keys) == sum(4**k for k in range(ORACLE_WORD_LENGTH + 1))
        del oracle
    print("ACCEPTANCE 1 PASS: canonical forms match the rewriting closure "
          f"on all {len(keys)} words of length <= {ORACLE_WORD_LENGTH}, n in (3, 4)")


def test_acceptance_02_positive_word_classes():
    """Positive classes are singletons below the relator length; the two
    relator halves merge exactly at it."""
    for n in range(2, 6):
        for length in range(n + 1):
            classes = positive_equal_classes(length, n)
            nontrivial = [c for c in classes if len(c) > 1]
            if length < n:
                assert nontrivial == [], (n, length)
            else:
                assert nontrivial == [sorted((upper_word(n), lower_word(n)))], (n, length)
    print("ACCEPTANCE 2 PASS: length-graded positive classes exact for n <= 5")


@pytest.mark.parametrize("n,radius", [(3, 6), (4, 8)])
def test_acceptance_03_precell_corollaries(n, radius):
    """Cells embed, and all cell-pair/triple overlap rules hold in balls."""
    embed = check_cell_embedding(n, radius=2)
    assert embed["status"] == "pass", embed
    res = check_precell_intersections(n, radius=radius)
    assert res["status"] == "pass", res
    print(f"ACCEPTANCE 3 PASS (n={n}, R={radius}): {res['detail']}")


@pytest.mark.parametrize("n", range(3, 9))
def test_acceptance_04_real_links(n):
    """Identity links: 4n-2 vertices, model graph, no induced short cycle."""
    graph, _ = identity_link(n)
    assert len(graph) == 4 * n - 2
    part = real_link_partition(n)
    assert part.all_vertices() == set(graph.vertices())
    result = check_model_graph(graph, part)
    assert result.ok, result
    assert find_full_short_cycle(graph) is None
    print(f"ACCEPTANCE 4 PASS (n={n}): identity link is a {4*n-2}-vertex model graph, 6-large")


@pytest.mark.parametrize("n", range(3, 9))
def test_acceptance_05_interior_links(n):
    """Interior links: model graphs with the interior partition, 6-large."""
    for i in range(1, n - 1):
        graph, _ = interior_link(n, i)
        assert len(graph) == 4 * n - 2
        part = interior_link_partition(n, i)
        assert part.all_vertices() == set(graph.vertices()), (n, i)
        result = check_model_graph(graph, part)
        assert result.ok, (n, i, result)
        assert find_full_short_cycle(graph) is None, (n, i)
    print(f"ACCEPTANCE 5 PASS (n={n}): all {n-2} interior links are model graphs, 6-large")


def test_acceptance_06_distance_table():
    """Distances between the four direction vertices of the identity link."""
    for n in range(2, 9):
        graph, _ = identity_link(n)
        r_inv = delta(n).inverse()
        a_minus = RealVertex(generator("a", n)).key
        b_minus = RealVertex(generator("b", n)).key
        a_plus = RealVertex(r_inv * boundary_vertex_element("d", n, n - 1)).key
        b_plus = RealVertex(r_inv * boundary_vertex_element("u", n, n - 1)).key
        d = lambda x, y: link_distance(graph, x, y)
        assert d(a_plus, a_minus) == 3 and d(b_plus, b_minus) == 3, n
        if n == 2:
            assert d(a_plus, b_minus) == 1 and d(a_minus, b_plus) == 1
            assert d(a_plus, b_plus) == 2 and d(a_minus, b_minus) == 2
        else:
            for x, y in ((a_plus, b_plus), (a_plus, b_minus), (a_minus, b_plus), (a_minus, b_minus)):
                assert d(x, y) == 2, (n, x, y)
    print("ACCEPTANCE 6 PASS: direction-vertex distance table exact for n in 2..8")


def test_acceptance_07_negative_control():
    """Without diagonals the identity link has an induced short cycle for
    every n >= 3, and for n = 7 a [real, interior, interior, real, interior]
    five-cycle through the identity exists in the complex itself."""
    for n in range(3, 9):
        graph, _ = identity_link(n, systolize=False)
        witness = find_full_short_cycle(graph)
        assert witness is not None, n
        assert len(witness) in (4, 5)
    cyc = find_unsystolized_five_cycle(7)
    assert cyc is not None
    kinds = ["R" if isinstance(v, RealVertex) else "C" for v in cyc]
    assert kinds == ["R", "C", "C", "R", "C"]
    for a, b in itertools.combinations(range(5), 2):
        consecutive = (b - a == 1) or (a, b) == (0, 4)
        assert adjacent(cyc[a], cyc[b], systolize=False) == consecutive
    print("ACCEPTANCE 7 PASS: unsystolized links fail 6-largeness for n in 3..8; "
          "n=7 five-cycle pattern witnessed")


def test_acceptance_08_dimension():
    """Top simplex dimension equals the relator half-length."""
    for n in range(2, 7):
        assert complex_dimension(n) == n
    print("ACCEPTANCE 8 PASS: dimension equals n for n in 2..6")


@pytest.mark.parametrize("n", range(4, 8))
def test_acceptance_09_interior_adjacency_table(n):
    """Brute-force adjacency counts between overlapping cells' interiors."""
    res = check_adjacency_table(n)
    assert res["status"] == "pass", res
    print(f"ACCEPTANCE 9 PASS (n={n}): {res['detail']}")


def test_acceptance_10_assembly():
    """Single-edge assembly is the dihedral link; random almost-large-type
    graphs certify; the two canonical rejections produce correct witnesses."""
    g = parse_defining_graph('{"generators":["x","y"],"edges":[{"u":"x","v":"y","m":5}]}')
    assembled = assemble_real_link(g)
    dihedral, _ = identity_link(5)
    g1 = nx.Graph(assembled.graph.edges())
    g2 = nx.Graph(dihedral.edges())
    assert nx.is_isomorphic(g1, g2)

    rng = random.Random(20260810)
    names = ["a", "b", "c", "d", "e", "f"]
    passed = 0
    attempts = 0
    while passed < 20:
        attempts += 1
        assert attempts < 2000
        k = rng.randint(2, 6)
        edges = []
        for i in range(k):
            for j in range(i + 1, k):
                if rng.random() < 0.6:
                    edges.append({"u": names[i], "v": names[j], "m": rng.choice([2, 3, 3, 4, 5, 6, 7])})
        if not edges:
            continue
        candidate = parse_defining_graph(json.dumps({"generators": names[:k], "edges": edges}))
        if not check_almost_large(candidate).ok:
            continue
        report = certify_systolic_links(candidate)
        assert report.verdict == "pass", (edges, report.to_json_dict())
        passed += 1

    tri = parse_defining_graph(
        '{"generators":["a","b","c"],"edges":['
        '{"u":"a","v":"b","m":2},{"u":"b","v":"c","m":3},{"u":"a","v":"c","m":3}]}'
    )
    res = check_almost_large(tri)
    assert not res.ok and res.witness_kind == "triangle"
    assert set(res.witness_vertices) == {"a", "b", "c"} and 2 in res.witness_labels

    sq = parse_defining_graph(
        '{"generators":["a","b","c","d"],"edges":['
        '{"u":"a","v":"b","m":2},{"u":"b","v":"c","m":2},'
        '{"u":"c","v":"d","m":2},{"u":"a","v":"d","m":5}]}'
    )
    res = check_almost_large(sq)
    assert not res.ok and res.witness_kind == "square"
    assert sorted(res.witness_labels) == [2, 2, 2, 5]
    print(f"ACCEPTANCE 10 PASS: single-edge isomorphism, {passed} random graphs certified, "
          "both rejections witnessed")


def test_acceptance_11_determinism(tmp_path):
    """Reports are byte-identical across worker counts."""
    gamma = tmp_path / "gamma.json"
    gamma.write_text(json.dumps({
        "generators": ["a", "b", "c"],
        "edges": [{"u": "a", "v": "b", "m": 5}, {"u": "b", "v": "c", "m": 6}],
    }))
    outs = []
    for workers in ("1", "2"):
        out = tmp_path / f"certify-{workers}.json"
        assert main(["certify", "--gamma", str(gamma), "--workers", workers,
                     "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

    reports = []
    for workers in ("1", "2"):
        out = tmp_path / f"verify-{workers}.json"
        assert main(["verify-lemmas", "--n", "2..3", "--workers", workers,
                     "--out", str(out)]) == 0
        reports.append(out.read_bytes())
    assert reports[0] == reports[1]
    print("ACCEPTANCE 11 PASS: byte-identical reports for 1 and 2 workers")
