from __future__ import annotations

from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtc.algebra import F2, Z, homology
from graphtc.discrete_config import (
    CubeComplex,
    cycle_from_motion,
    discretize,
    edge_path,
    path_moves,
    projected_cell_count,
)
from graphtc.errors import MotionError, ResourceLimitError
from graphtc.graph_core import Graph
from graphtc.named import named_graph


def brute_force_counts(g: Graph, k: int) -> list[int]:
    """Cells by dimension from all k-tuples of graph cells with disjoint closures."""
    cells = [("v", v, frozenset([v])) for v in g.vertices] + [("e", e, frozenset([u, v])) for e, u, v in g.edges]
    counts = Counter()
    for tup in product(cells, repeat=k):
        closures = [c[2] for c in tup]
        if sum(len(c) for c in closures) == len(frozenset().union(*closures)):
            counts[sum(1 for c in tup if c[0] == "e")] += 1
    return [counts[d] for d in range(k + 1)]


def conf2_euler_characteristic(g: Graph) -> int:
    """chi(G x G) minus the cells whose closures meet (simple graph)."""
    v, e = len(g.vertices), len(g.edges)
    chi = v - e
    return chi * chi - v + 5 * e - sum(g.valence(x) ** 2 for x in g.vertices)


@pytest.mark.parametrize("name,k", [("star", 2), ("theta", 2), ("lollipop", 2), ("theta", 3), ("interval", 3)])
def test_cell_counts_match_brute_force(name, k):
    c, cert = discretize(named_graph(name).graph, k)
    assert c.counts() == brute_force_counts(cert.graph, k)


def test_unsubdivided_star_has_twelve_vertices_and_edges():
    c, cert = discretize(named_graph("star").graph, 2, parts=1)
    assert c.counts() == [12, 12, 0]
    assert not cert.conservative


def test_default_subdivision_is_conservative():
    c, cert = discretize(named_graph("star").graph, 2)
    assert cert.parts == 3 and cert.conservative
    assert c.counts() == [90, 144, 54]


@pytest.mark.parametrize("name", ["star", "theta", "lollipop", "k5", "k33", "tree3"])
def test_euler_characteristic_formula(name):
    c, cert = discretize(named_graph(name).graph, 2)
    chi = sum((-1) ** d * n for d, n in enumerate(c.counts()))
    assert chi == conf2_euler_characteristic(cert.graph)


@pytest.mark.parametrize("name,k", [("theta", 2), ("theta", 3), ("k5", 2), ("tree3", 2)])
def test_boundary_squares_to_zero(name, k):
    c, _ = discretize(named_graph(name).graph, k)
    for d in range(2, k + 1):
        comp = Counter()
        for j, col in enumerate(c.boundary(d)):
            comp.clear()
            for r, s in col:
                for r2, s2 in c.boundary(d - 1)[r]:
                    comp[r2] += s * s2
            assert not any(comp.values()), (d, j)


def test_triplets_cover_the_boundary():
    c, _ = discretize(named_graph("star").graph, 2)
    trip = c.triplets(1)
    assert len(trip) == 2 * c.num_cells(1)
    assert {t[0] for t in trip} == {1}
    assert all(t[3] in (1, -1) for t in trip)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=5), st.integers(1, 3))
def test_random_graph_counts(pairs, parts):
    g = Graph.from_edges([(f"x{i}", str(u), str(v)) for i, (u, v) in enumerate(pairs)])
    c, cert = discretize(g, 2, parts)
    assert c.counts() == brute_force_counts(cert.graph, 2)
    chi = sum((-1) ** d * n for d, n in enumerate(c.counts()))
    if parts >= 2:  # the formula needs a simple graph
        assert chi == conf2_euler_characteristic(cert.graph)


def test_resource_ceiling():
    with pytest.raises(ResourceLimitError):
        discretize(named_graph("k5").graph, 3, max_cells=10_000)
    g = named_graph("k5").graph
    assert projected_cell_count(discretize(g, 2)[1].graph, 2) > 0


def test_k5_conservative_complex_is_well_under_the_ceiling():
    c, _ = discretize(named_graph("k5").graph, 2)
    assert sum(c.counts()) < 5_000_000


# -- homology of small models (oracles: known homotopy types) -----------------


def test_conf2_of_star_is_a_circle():
    for parts in (1, 3, 4):
        c, _ = discretize(named_graph("star").graph, 2, parts)
        assert homology(c, Z).betti == [1, 1, 0]


def test_conf2_of_interval_has_two_contractible_components():
    c, _ = discretize(named_graph("interval").graph, 2)
    h = homology(c, F2)
    assert h.betti[0] == 2 and h.betti[1] == 0


def test_conf2_of_circle_is_a_circle_times_interval():
    c, _ = discretize(named_graph("cycle").graph, 2)
    assert homology(c, Z).betti == [1, 1, 0]


@pytest.mark.parametrize("name,genus", [("k5", 6), ("k33", 4)])
def test_conf2_of_kuratowski_graphs_is_a_closed_orientable_surface(name, genus):
    c, _ = discretize(named_graph(name).graph, 2)
    h = homology(c, Z)
    assert h.betti == [1, 2 * genus, 1]
    assert h.torsion == [(), (), ()]


# -- motions -----------------------------------------------------------------


def test_cycle_from_motion_on_star_is_a_cycle():
    c, cert = discretize(named_graph("star").graph, 2)
    g = cert.graph
    # particle 0 walks out along e1 and back while particle 1 waits at leaf l2
    out = ["c", "e1.1", "e1.2", "l1"]
    moves = path_moves(g, 0, out) + path_moves(g, 0, out[::-1])
    chain = cycle_from_motion(c, ["c", "l2"], moves)
    assert chain == {}  # back-and-forth cancels


def test_blocked_move_raises():
    c, cert = discretize(named_graph("star").graph, 2)
    with pytest.raises(MotionError, match="blocks"):
        cycle_from_motion(c, ["c", "e1.1"], [(0, "e1:0")])


def test_open_motion_raises():
    c, cert = discretize(named_graph("star").graph, 2)
    with pytest.raises(MotionError, match="return"):
        cycle_from_motion(c, ["c", "l2"], [(0, "e1:0")])


def test_edge_path_follows_edges():
    _, cert = discretize(named_graph("star").graph, 2)
    assert edge_path(cert.graph, "c", ["e1:0", "e1:1"]) == ["c", "e1.1", "e1.2"]


def test_complex_rejects_loops():
    with pytest.raises(ValueError):
        CubeComplex(named_graph("lollipop").graph, 2)
