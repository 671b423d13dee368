from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from graphtc.errors import PreconditionError
from graphtc.euclid_cohomology import PairSet, orthogonal_pair
from graphtc.graph_core import Graph, PLEmbedding
from graphtc.named import named_graph
from graphtc.tc_certificate import (
    TCQuery,
    build_witness_diagram,
    exact_tc,
    lower_bound,
    replay,
)


def expected_bounds(k: int, r: int, m: int) -> tuple[int, int | None]:
    """Closed-form oracle for the certified interval."""
    return r * min(k // 2, m), (r * m if k >= m else None)


def query(name: str, k: int, r: int):
    doc = named_graph(name)
    return TCQuery(doc.graph, k, r), doc.embedding


def planar_k4():
    g = Graph.from_edges([(f"{a}{b}", a, b) for a, b in ["pq", "pr", "ps", "qr", "qs", "rs"]])
    emb = PLEmbedding.build(g, {"p": (0, 0), "q": (4, 0), "r": (2, 4), "s": (2, 1)})
    return g, emb


def bent_theta():
    # a theta whose middle edge wiggles close to the bottom vertex
    g = Graph.from_edges([("a", "t", "b"), ("m", "t", "b"), ("c", "t", "b")])
    emb = PLEmbedding.build(
        g,
        {"t": (0, 2), "b": (0, -2)},
        {
            "a": [(0, 2), (-2, 0), (0, -2)],
            "m": [(0, 2), (F(1, 5), 0), (F(-1, 3), F(-3, 2)), (0, -2)],
            "c": [(0, 2), (2, 0), (0, -2)],
        },
    )
    return g, emb


# -- bounds ---------------------------------------------------------------------


@pytest.mark.parametrize("r", [2, 3, 4])
def test_theta_is_exact_at_k4(r):
    q, emb = query("theta", 4, r)
    value, cert = exact_tc(q, emb)
    assert value == 2 * r
    assert cert.valid and cert.exact
    assert cert.data["upper_provenance"]


@pytest.mark.parametrize("k,r", [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2)])
def test_tree3_bounds_match_the_closed_form(k, r):
    q, emb = query("tree3", k, r)
    low, cert = lower_bound(q, emb)
    assert cert.valid
    assert (low, cert.upper) == expected_bounds(k, r, 3)
    value, _ = exact_tc(q, emb)
    assert value == (3 * r if k >= 6 else None)
    assert cert.exact == (k >= 6)


def test_bounds_are_monotone():
    lows = {}
    for k in range(4, 9):
        for r in (2, 3):
            q, emb = query("tree3", k, r)
            lows[k, r] = lower_bound(q, emb)[0]
    for (k, r), v in lows.items():
        if (k + 1, r) in lows:
            assert lows[k + 1, r] >= v
        if (k, r + 1) in lows:
            assert lows[k, r + 1] >= v


def test_planar_k4_with_inner_vertex():
    g, emb = planar_k4()
    value, cert = exact_tc(TCQuery(g, 8, 2), emb)
    assert value == 8 and cert.valid
    low, cert = lower_bound(TCQuery(g, 5, 2), emb)
    assert low == 4 and cert.upper == 8 and not cert.exact


def test_bent_edges_shrink_the_disks():
    g, emb = bent_theta()
    value, cert = exact_tc(TCQuery(g, 5, 2), emb)
    assert value == 4 and cert.valid
    radii = {d["vertex"]: F(d["radius"]) for d in cert.data["disks"]}
    assert radii["b"] < radii["t"]
    assert cert.data["arc"] is not None and len(cert.data["arc_points"]) == 1


# -- preconditions ----------------------------------------------------------------


def test_query_validation():
    g = named_graph("theta").graph
    with pytest.raises(PreconditionError):
        TCQuery(g, 0, 2)
    with pytest.raises(PreconditionError):
        TCQuery(g, 4, 1)


@pytest.mark.parametrize(
    "name,k,hypothesis",
    [("lollipop", 4, "m(Γ) ≥ 2"), ("theta", 3, "k ≥ 4"), ("k5", 4, "Γ planar"), ("star", 4, "m(Γ) ≥ 2")],
)
def test_out_of_scope_queries(name, k, hypothesis):
    doc = named_graph(name)
    emb = doc.embedding or PLEmbedding.build(doc.graph, {v: (i, i * i) for i, v in enumerate(doc.graph.vertices)})
    with pytest.raises(PreconditionError) as err:
        lower_bound(TCQuery(doc.graph, k, 2), emb)
    assert err.value.hypothesis == hypothesis


def test_disconnected_graph_rejected():
    g = Graph.from_edges([("a", "x", "y"), ("b", "u", "w")])
    emb = PLEmbedding.build(g, {"x": (0, 0), "y": (1, 0), "u": (0, 1), "w": (1, 1)})
    with pytest.raises(PreconditionError, match="disconnected"):
        lower_bound(TCQuery(g, 4, 2), emb)


def test_crossing_embedding_rejected():
    g, _ = planar_k4()
    emb = PLEmbedding.build(g, {"p": (0, 0), "q": (4, 0), "r": (4, 4), "s": (0, 4)})
    with pytest.raises(PreconditionError) as err:
        lower_bound(TCQuery(g, 4, 2), emb)
    assert err.value.hypothesis == "valid planar embedding"


def test_witness_diagram_preconditions():
    doc = named_graph("tree3")
    l1, l2 = orthogonal_pair(2)
    with pytest.raises(PreconditionError) as err:
        build_witness_diagram(doc.graph, doc.embedding, ["a", "b"], [l1, l2], 3)
    assert err.value.hypothesis == "2d ≤ k"
    with pytest.raises(PreconditionError) as err:
        build_witness_diagram(doc.graph, doc.embedding, ["a", "b"], [l1, l1], 4)
    assert err.value.hypothesis == "λ_1 ⊥ λ_2"
    with pytest.raises(PreconditionError):
        build_witness_diagram(doc.graph, doc.embedding, ["a", "a1"], [l1, l2], 4)
    with pytest.raises(PreconditionError):
        build_witness_diagram(doc.graph, doc.embedding, ["a", "b"], [l1, l2, PairSet.of(4, [(1, 2)])], 4)


def test_witness_diagram_transcript():
    doc = named_graph("tree3")
    l1, l2 = orthogonal_pair(2)
    diagram = build_witness_diagram(doc.graph, doc.embedding, ["c", "a"], [l1, l2], 6)
    assert diagram.valid
    assert diagram.W == ["a", "c"]
    assert diagram.windings == {"a": 1, "c": 1}
    assert diagram.torus == [[[1, 0], [0, 1]]] * 2
    assert len(diagram.arc_points) == 2
    names = {c["name"] for c in diagram.checks}
    assert {"embedding_valid", "disks_pairwise_disjoint", "pairing", "torus_realization:1"} <= names


# -- serialization and replay --------------------------------------------------------


@pytest.mark.parametrize("name,k,r", [("theta", 4, 2), ("theta", 5, 3), ("tree3", 4, 2), ("tree3", 7, 3)])
def test_replay_is_byte_identical(name, k, r):
    q, emb = query(name, k, r)
    _, cert = lower_bound(q, emb)
    text = cert.to_json()
    again = replay(text)
    assert again.to_json() == text
    assert again.valid


def test_json_is_stable_and_exact():
    q, emb = query("tree3", 6, 2)
    a = lower_bound(q, emb)[1].to_json()
    b = lower_bound(q, emb)[1].to_json()
    assert a == b
    data = json.loads(a)
    assert all("/" in d["radius"] or d["radius"].lstrip("-").isdigit() for d in data["disks"])
    assert list(data) == sorted(data)


def tampered(text: str, edit) -> str:
    data = json.loads(text)
    edit(data)
    return json.dumps(data)


def test_tampered_certificates_fail_replay():
    q, emb = query("tree3", 5, 2)
    text = lower_bound(q, emb)[1].to_json()

    def grow_radius(d):
        d["disks"][0]["radius"] = "10"

    def move_arc(d):
        d["arc_points"][0] = ["100", "100"]

    def mirror_star(d):
        for arm in d["stars"][0]["arms"]:
            for p in arm:
                p[0] = str(-F(p[0]) + 2 * F(d["stars"][0]["arms"][0][0][0]))

    def collapse_bijection(d):
        b = d["bijections"][0]
        v1, v2 = sorted(b)
        b[v2] = b[v1]

    def foreign_pairs(d):
        b = d["bijections"][0]
        v1, v2 = sorted(b)
        b[v1], b[v2] = [1, 3], [2, 4]

    def change_graph(d):
        d["graph_hash"] = "0" * len(d["graph_hash"])

    for edit in (grow_radius, move_arc, mirror_star, collapse_bijection, foreign_pairs, change_graph):
        assert not replay(tampered(text, edit)).valid, edit.__name__
