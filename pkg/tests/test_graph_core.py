from __future__ import annotations

from fractions import Fraction as F

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtc.graph_core import (
    Graph,
    PLEmbedding,
    RotationSystem,
    essential_vertices,
    euler_face_check,
    format_graph_text,
    is_planar,
    kuratowski_type,
    m_count,
    normalize_loops,
    parse_graph_text,
    rotation_from_embedding,
    subdivide,
    subdivide_embedding,
    trace_faces,
    validate_embedding,
)
from graphtc.named import named_graph, path


def random_multigraph(draw_edges, n):
    return Graph.from_edges([(f"x{i}", str(u), str(v)) for i, (u, v) in enumerate(draw_edges)], [str(i) for i in range(n)])


@st.composite
def multigraphs(draw, max_vertices=6, max_edges=9):
    n = draw(st.integers(1, max_vertices))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return random_multigraph(pairs, n)


# -- essential vertices ------------------------------------------------------


def test_essential_vertices_examples():
    assert essential_vertices(named_graph("k5").graph) == {"0", "1", "2", "3", "4"}
    assert essential_vertices(path(4).graph) == set()
    assert essential_vertices(named_graph("theta").graph) == {"t", "b"}
    assert m_count(named_graph("lollipop").graph) == 1  # the loop adds 2 to the valence


def test_loop_counts_twice_towards_valence():
    g = Graph.from_edges([("l", "v", "v"), ("s", "v", "w")])
    assert g.valence("v") == 3
    assert g.valence("w") == 1


@given(multigraphs(), st.integers(1, 4))
def test_subdivision_preserves_m_and_euler_characteristic(g, parts):
    h = subdivide(g, parts)
    assert m_count(h) == m_count(g)
    assert len(h.vertices) - len(h.edges) == len(g.vertices) - len(g.edges)
    assert len(h.edges) == parts * len(g.edges)


def test_subdivide_examples():
    g = Graph.from_edges([("e", "a", "b")])
    h = subdivide(g, 3)
    assert len(h.vertices) == 4 and len(h.edges) == 3
    loop = Graph.from_edges([("l", "v", "v")])
    h = subdivide(loop, 2)
    assert len(h.vertices) == 2 and len(h.edges) == 2
    assert m_count(subdivide(named_graph("k5").graph, 4)) == 5
    with pytest.raises(ValueError):
        subdivide(g, 0)


def test_normalize_loops_removes_loops():
    g = named_graph("lollipop").graph
    h = normalize_loops(g)
    assert not h.has_loops
    assert m_count(h) == 1


def test_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph(("a",), (("e", "a", "b"),))
    with pytest.raises(ValueError):
        Graph.from_edges([("e", "a", "b"), ("e", "b", "c")])


# -- planarity ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["star", "lollipop", "theta", "tree3", "cycle", "interval"])
def test_planar_named_graphs_get_face_checked_rotation(name):
    g = named_graph(name).graph
    res = is_planar(g)
    assert res.planar
    assert euler_face_check(g, res.rotation)


@pytest.mark.parametrize("name,kind", [("k5", "K5"), ("k33", "K3,3")])
def test_kuratowski_graphs(name, kind):
    res = is_planar(named_graph(name).graph)
    assert not res.planar
    assert res.kind == kind


def test_kuratowski_witness_inside_larger_graph():
    # K3,3 plus a pendant path and a chord subdivided: witness is a subdivision of K3,3
    k33 = named_graph("k33").graph
    g = Graph.from_edges(list(k33.edges) + [("p", "a0", "z"), ("q", "z", "y")])
    res = is_planar(g)
    assert not res.planar and res.kind == "K3,3"
    assert set(e[0] for e in res.kuratowski.edges) <= set(e[0] for e in g.edges)


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=14))
def test_planarity_agrees_with_networkx_and_faces(g):
    simple = nx.MultiGraph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from((u, v) for _, u, v in g.edges)
    expected = nx.check_planarity(nx.Graph(simple.edges()))[0]
    res = is_planar(g)
    assert res.planar == expected
    if res.planar:
        for comp in g.components():
            sub = g.induced_by_edges([e for e, u, _ in g.edges if u in comp])
            if sub.edges:
                rot = RotationSystem.from_mapping({v: res.rotation.at(v) for v in sub.vertices})
                assert euler_face_check(sub, rot)
    else:
        assert kuratowski_type(res.kuratowski) in ("K5", "K3,3")


def test_wrong_rotation_fails_euler_check():
    g = named_graph("k33").graph
    # any rotation of K3,3 is non-planar
    rot = RotationSystem.from_mapping({v: sorted(g.half_edges_at(v)) for v in g.vertices})
    assert not euler_face_check(g, rot)


def test_face_count_of_theta():
    doc = named_graph("theta")
    assert len(trace_faces(doc.graph, doc.rotation)) == 3


# -- embeddings ----------------------------------------------------------------


@pytest.mark.parametrize("name", ["star", "lollipop", "theta", "tree3", "cycle", "interval"])
def test_named_embeddings_are_valid(name):
    doc = named_graph(name)
    assert validate_embedding(doc.graph, doc.embedding)


def test_embedding_rotation_matches_counterclockwise_angles():
    doc = named_graph("star")
    assert rotation_from_embedding(doc.graph, doc.embedding).at("c") == (("e1", 0), ("e2", 0), ("e3", 0))


def test_crossing_edges_rejected():
    g = Graph.from_edges([("e", "a", "b"), ("f", "c", "d")])
    emb = PLEmbedding.build(g, {"a": (0, 0), "b": (2, 2), "c": (0, 2), "d": (2, 0)})
    check = validate_embedding(g, emb)
    assert not check and "crosses" in check.reason


def test_vertex_on_edge_rejected():
    g = Graph.from_edges([("e", "a", "b"), ("f", "c", "d")])
    emb = PLEmbedding.build(g, {"a": (0, 0), "b": (2, 0), "c": (1, 0), "d": (1, 1)})
    assert not validate_embedding(g, emb)


def test_overlapping_parallel_edges_rejected():
    g = Graph.from_edges([("e", "a", "b"), ("f", "a", "b")])
    emb = PLEmbedding.build(g, {"a": (0, 0), "b": (1, 0)})
    assert not validate_embedding(g, emb)


def test_self_crossing_polyline_rejected():
    g = Graph.from_edges([("e", "a", "b")])
    emb = PLEmbedding.build(g, {"a": (0, 0), "b": (2, 0)}, {"e": [(0, 0), (2, 1), (1, -1), (1, 1), (2, 0)]})
    assert not validate_embedding(g, emb)


def test_endpoint_mismatch_rejected():
    g = Graph.from_edges([("e", "a", "b")])
    emb = PLEmbedding.build(g, {"a": (0, 0), "b": (2, 0)}, {"e": [(0, 0), (1, 1), (2, 1)]})
    assert not validate_embedding(g, emb)


def test_touching_at_shared_vertex_allowed():
    doc = named_graph("theta")
    assert validate_embedding(doc.graph, doc.embedding).ok


@pytest.mark.parametrize("parts", [2, 3, 5])
def test_subdivided_embedding_stays_valid(parts):
    doc = named_graph("theta")
    h = subdivide(doc.graph, parts)
    assert validate_embedding(h, subdivide_embedding(doc.graph, doc.embedding, parts))


# -- text format -------------------------------------------------------------


def test_parse_and_format_roundtrip():
    text = """
    # theta with one bent edge
    v t
    v b
    e a t b
    e m t b
    e c t b
    pos t 0 1/2
    pos b 0 -1/2
    poly a 0 1/2 -1/2 0 0 -1/2
    poly c 0 1/2 0.5 0 0 -1/2
    """
    doc = parse_graph_text(text)
    assert doc.embedding.pos["t"] == (F(0), F(1, 2))
    assert doc.embedding.poly["c"][1] == (F(1, 2), F(0))
    assert validate_embedding(doc.graph, doc.embedding)
    again = parse_graph_text(format_graph_text(doc))
    assert again.graph == doc.graph and again.embedding == doc.embedding


def test_rotation_records_roundtrip():
    doc = named_graph("lollipop")
    again = parse_graph_text(format_graph_text(doc))
    assert again.rotation == doc.rotation


@given(multigraphs())
def test_graph_text_roundtrip(g):
    assert parse_graph_text(g.to_text()).graph == g


def test_parse_errors_name_the_line():
    with pytest.raises(ValueError, match="line 2"):
        parse_graph_text("v a\nq nonsense\n")


def test_digest_is_stable_and_sensitive():
    g = named_graph("k5").graph
    assert g.digest() == named_graph("k5").graph.digest()
    h = Graph.from_edges(list(g.edges)[:-1])
    assert h.digest() != g.digest()
