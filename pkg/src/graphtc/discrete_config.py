"""Discretized ordered configuration spaces of graphs as cube complexes.

A cell of the complex is an ordered k-tuple of closed cells (vertices or edges)
of a subdivided graph whose closures are pairwise disjoint.  Its dimension is
the number of edge coordinates.  The boundary of a cube replaces one edge
coordinate by its head (+) or tail (-) with the usual alternating cubical sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MotionError, ResourceLimitError
from .graph_core import Graph, normalize_loops, subdivide

DEFAULT_MAX_CELLS = 5_000_000

Chain = dict[int, int]


@dataclass(frozen=True)
class SubdivisionCertificate:
    parts: int
    k: int
    graph: Graph

    @property
    def conservative(self) -> bool:
        """Whether the subdivision meets the k + 1 parts-per-edge sufficiency rule."""
        return self.parts >= self.k + 1


class CubeComplex:
    """Cube complex model of Conf_k of a (loop-free) graph.

    ``cells[d]`` lists the d-cubes as tuples of indices into ``gcells``;
    ``boundary(d)`` gives, for each d-cube, its signed (d-1)-faces.
    """

    def __init__(self, graph: Graph, k: int, max_cells: int = DEFAULT_MAX_CELLS):
        if graph.has_loops:
            raise ValueError("cube complexes are built on loop-free graphs")
        if k < 1:
            raise ValueError("k must be >= 1")
        self.graph = graph
        self.k = k
        self.gcells: list[tuple[str, str]] = [("v", v) for v in graph.vertices] + [("e", e[0]) for e in graph.edges]
        self.gindex = {c: i for i, c in enumerate(self.gcells)}
        nv = len(graph.vertices)
        vidx = {v: i for i, v in enumerate(graph.vertices)}
        self.closure: list[frozenset[int]] = [frozenset([i]) for i in range(nv)]
        self.ends: list[tuple[int, int] | None] = [None] * nv
        for eid, u, v in graph.edges:
            self.closure.append(frozenset((vidx[u], vidx[v])))
            self.ends.append((vidx[u], vidx[v]))
        self.num_graph_vertices = nv

        self.cells: list[list[tuple[int, ...]]] = [[] for _ in range(k + 1)]
        self._enumerate(max_cells)
        self.index: list[dict[tuple[int, ...], int]] = [
            {c: i for i, c in enumerate(cs)} for cs in self.cells
        ]
        self._boundary: list[list[list[tuple[int, int]]]] = [[] for _ in range(k + 1)]
        for d in range(1, k + 1):
            self._boundary[d] = [self._cube_boundary(c, d) for c in self.cells[d]]

    def _enumerate(self, max_cells: int) -> None:
        n = len(self.gcells)
        closure = self.closure
        nv = self.num_graph_vertices
        k = self.k
        total = 0
        prefix: list[int] = []

        def rec(used: frozenset[int]):
            nonlocal total
            if len(prefix) == k:
                dim = sum(1 for x in prefix if x >= nv)
                self.cells[dim].append(tuple(prefix))
                total += 1
                if total > max_cells:
                    raise ResourceLimitError(f"cell count exceeds ceiling {max_cells}")
                return
            for x in range(n):
                cl = closure[x]
                if used.isdisjoint(cl):
                    prefix.append(x)
                    rec(used | cl)
                    prefix.pop()

        rec(frozenset())

    def _cube_boundary(self, cell: tuple[int, ...], d: int) -> list[tuple[int, int]]:
        idx = self.index[d - 1]
        out = []
        j = 0
        for pos, x in enumerate(cell):
            if x < self.num_graph_vertices:
                continue
            tail, head = self.ends[x]
            sign = 1 if j % 2 == 0 else -1
            for vert, s in ((head, sign), (tail, -sign)):
                face = cell[:pos] + (vert,) + cell[pos + 1:]
                out.append((idx[face], s))
            j += 1
        return out

    # -- accessors ---------------------------------------------------------

    def num_cells(self, d: int) -> int:
        return len(self.cells[d]) if 0 <= d <= self.k else 0

    def boundary(self, d: int) -> list[list[tuple[int, int]]]:
        """Columns of the boundary map C_d -> C_{d-1} (empty for d <= 0 or d > k)."""
        if d <= 0 or d > self.k:
            return []
        return self._boundary[d]

    def describe(self, d: int, i: int) -> tuple[tuple[str, str], ...]:
        return tuple(self.gcells[x] for x in self.cells[d][i])

    def cell_of(self, described: Sequence[tuple[str, str]]) -> tuple[int, int]:
        """(dimension, index) of the cube given as a tuple of ('v'|'e', id)."""
        t = tuple(self.gindex[tuple(s)] for s in described)
        d = sum(1 for x in t if x >= self.num_graph_vertices)
        return d, self.index[d][t]

    def chain_boundary(self, chain: Chain, d: int) -> Chain:
        out: Chain = {}
        cols = self.boundary(d)
        for i, c in chain.items():
            for r, s in cols[i]:
                out[r] = out.get(r, 0) + s * c
        return {r: c for r, c in out.items() if c}

    def counts(self) -> list[int]:
        return [len(cs) for cs in self.cells]

    def triplets(self, d: int) -> list[tuple[int, int, int, int]]:
        """Sparse boundary entries ``(dim, row, col, sign)`` of the map out of degree d."""
        return [(d, r, col, s) for col, entries in enumerate(self.boundary(d)) for r, s in entries]


def discretize(
    g: Graph, k: int, parts: int | None = None, max_cells: int = DEFAULT_MAX_CELLS
) -> tuple[CubeComplex, SubdivisionCertificate]:
    """Subdivide ``g`` (default k + 1 parts per edge) and build its cube complex for k particles.

    Loops are first subdivided once, so subdivision is applied to a loop-free graph.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    parts = k + 1 if parts is None else parts
    if parts < 1:
        raise ValueError("parts must be >= 1")
    base = normalize_loops(g)
    sub = subdivide(base, parts)
    projected = projected_cell_count(sub, k)
    if projected > max_cells:
        raise ResourceLimitError(f"projected cell count {projected} exceeds ceiling {max_cells}")
    return CubeComplex(sub, k, max_cells=max_cells), SubdivisionCertificate(parts, k, sub)


def projected_cell_count(g: Graph, k: int) -> int:
    """Upper bound on the cube count: ordered k-tuples of distinct graph cells."""
    nv, ne = len(g.vertices), len(g.edges)
    total = 1
    for i in range(k):
        total *= max(nv + ne - i, 0)
    return total


def cycle_from_motion(
    c: CubeComplex, start: Sequence[str], moves: Iterable[tuple[int, str]]
) -> Chain:
    """Signed sum of 1-cells traversed by a closed sequence of single-particle moves.

    ``start`` gives the vertex of each particle; each move ``(i, eid)`` slides
    particle ``i`` (0-based) across edge ``eid`` of ``c.graph`` while the
    others rest.  Returns a 1-chain as ``{cell index: coefficient}``.
    """
    g = c.graph
    if len(start) != c.k:
        raise MotionError("start configuration has the wrong number of particles")
    vidx = {v: i for i, v in enumerate(g.vertices)}
    config = [vidx[v] for v in start]
    if len(set(config)) != len(config):
        raise MotionError("start configuration has coincident particles")
    origin = tuple(config)
    chain: Chain = {}
    for step, (i, eid) in enumerate(moves):
        if ("e", eid) not in c.gindex:
            raise MotionError(f"move {step}: unknown edge {eid}")
        x = c.gindex[("e", eid)]
        tail, head = c.ends[x]
        here = config[i]
        if here not in (tail, head):
            raise MotionError(f"move {step}: particle {i} is not at an end of {eid}")
        for j, other in enumerate(config):
            if j != i and other in (tail, head):
                raise MotionError(f"move {step}: particle {j} blocks edge {eid}")
        cube = tuple(config[:i]) + (x,) + tuple(config[i + 1:])
        col = c.index[1][cube]
        sign = 1 if here == tail else -1
        chain[col] = chain.get(col, 0) + sign
        config[i] = head if here == tail else tail
    if tuple(config) != origin:
        raise MotionError("motion does not return to its starting configuration")
    return {k: v for k, v in chain.items() if v}


def path_moves(g: Graph, particle: int, vertices: Sequence[str]) -> list[tuple[int, str]]:
    """Moves sending ``particle`` along a vertex path (consecutive vertices must be adjacent)."""
    moves = []
    for a, b in zip(vertices, vertices[1:]):
        eid = edge_between(g, a, b)
        moves.append((particle, eid))
    return moves


def edge_between(g: Graph, a: str, b: str) -> str:
    for eid, u, v in g.edges:
        if {u, v} == {a, b}:
            return eid
    raise MotionError(f"no edge between {a} and {b}")


def edge_path(g: Graph, start: str, eids: Sequence[str]) -> list[str]:
    """Vertices visited walking from ``start`` along the given edges."""
    out = [start]
    for eid in eids:
        out.append(g.other_end(eid, out[-1]))
    return out
