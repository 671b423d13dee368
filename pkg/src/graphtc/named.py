"""Named graphs used throughout: stars, lollipop, theta, K5, K3,3, and small trees.

Planar ones come with a hand-coded exact PL embedding.  The lollipop loop and
the theta edges are drawn so that the cycle runs counterclockwise.
"""

from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations

from .graph_core import Graph, GraphDocument, PLEmbedding, RotationSystem, rotation_from_embedding


def _doc(g: Graph, emb: PLEmbedding | None, name: str) -> GraphDocument:
    rot = rotation_from_embedding(g, emb) if emb is not None else _sorted_rotation(g)
    return GraphDocument(g, rot, emb, name=name)


def _sorted_rotation(g: Graph) -> RotationSystem:
    return RotationSystem.from_mapping({v: sorted(g.half_edges_at(v)) for v in g.vertices})


def star(n: int = 3) -> GraphDocument:
    """Star with center ``c`` and leaves ``l1..ln``; arms drawn counterclockwise from 90 degrees."""
    g = Graph.from_edges([(f"e{i}", "c", f"l{i}") for i in range(1, n + 1)], ["c"])
    if n == 3:
        pos = {"c": (0, 0), "l1": (0, 1), "l2": (F(-866, 1000), F(-1, 2)), "l3": (F(866, 1000), F(-1, 2))}
    else:
        pos = {"c": (0, 0)}
        square = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
        if n > len(square):
            return _doc(g, None, f"star{n}")
        for i in range(1, n + 1):
            pos[f"l{i}"] = square[(i - 1) * len(square) // n]
    return _doc(g, PLEmbedding.build(g, pos), "star" if n == 3 else f"star{n}")


def lollipop() -> GraphDocument:
    """Loop ``c`` at the essential vertex ``v`` plus the stem ``s`` to the leaf ``w``."""
    g = Graph.from_edges([("c", "v", "v"), ("s", "v", "w")])
    pos = {"v": (0, F(-1, 2)), "w": (0, -1)}
    polys = {"c": [(0, F(-1, 2)), (F(1, 2), 0), (0, F(1, 2)), (F(-1, 2), 0), (0, F(-1, 2))]}
    return _doc(g, PLEmbedding.build(g, pos, polys), "lollipop")


def theta() -> GraphDocument:
    """Top vertex ``t``, bottom vertex ``b``, edges ``a`` (left), ``m`` (middle), ``c`` (right)."""
    g = Graph.from_edges([("a", "t", "b"), ("m", "t", "b"), ("c", "t", "b")])
    pos = {"t": (0, F(1, 2)), "b": (0, F(-1, 2))}
    polys = {
        "a": [(0, F(1, 2)), (F(-1, 2), 0), (0, F(-1, 2))],
        "c": [(0, F(1, 2)), (F(1, 2), 0), (0, F(-1, 2))],
    }
    return _doc(g, PLEmbedding.build(g, pos, polys), "theta")


def complete(n: int = 5) -> GraphDocument:
    g = Graph.from_edges([(f"{i}{j}", str(i), str(j)) for i, j in combinations(range(n), 2)])
    return _doc(g, None, f"K{n}")


def complete_bipartite(a: int = 3, b: int = 3) -> GraphDocument:
    g = Graph.from_edges([(f"a{i}b{j}", f"a{i}", f"b{j}") for i in range(a) for j in range(b)])
    return _doc(g, None, f"K{a},{b}")


def tree3() -> GraphDocument:
    """Path a-b-c with two extra leaves at each of a, b, c (three essential vertices)."""
    edges = [("ab", "a", "b"), ("bc", "b", "c")]
    for x in "abc":
        edges += [(f"{x}1", x, f"{x}1"), (f"{x}2", x, f"{x}2")]
    g = Graph.from_edges(edges)
    pos = {
        "a": (0, 0), "b": (2, 0), "c": (4, 0),
        "a1": (-1, 1), "a2": (-1, -1),
        "b1": (2, 1), "b2": (2, -1),
        "c1": (5, 1), "c2": (5, -1),
    }
    return _doc(g, PLEmbedding.build(g, pos), "tree3")


def path(n: int) -> GraphDocument:
    """Path on ``n`` vertices along the x-axis."""
    g = Graph.from_edges([(f"p{i}", str(i), str(i + 1)) for i in range(n - 1)], ["0"])
    return _doc(g, PLEmbedding.build(g, {str(i): (i, 0) for i in range(n)}), f"path{n}")


def interval() -> GraphDocument:
    return path(2)


def cycle(n: int = 3) -> GraphDocument:
    """Cycle on ``n >= 3`` vertices drawn as a counterclockwise polygon."""
    square = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    g = Graph.from_edges([(f"c{i}", str(i), str((i + 1) % n)) for i in range(n)])
    if n <= len(square):
        pos = {str(i): square[i * len(square) // n] for i in range(n)}
        return _doc(g, PLEmbedding.build(g, pos), f"cycle{n}")
    return _doc(g, None, f"cycle{n}")


NAMED = {
    "star": star,
    "s3": star,
    "lollipop": lollipop,
    "theta": theta,
    "k5": complete,
    "k33": complete_bipartite,
    "k3,3": complete_bipartite,
    "tree3": tree3,
    "interval": interval,
    "cycle": cycle,
}


def named_graph(name: str) -> GraphDocument:
    try:
        return NAMED[name.lower()]()
    except KeyError:
        raise KeyError(f"unknown graph name {name!r}; choose from {sorted(NAMED)}") from None
