"""Finite multigraphs, subdivision, rotation systems, planarity, and exact PL embeddings.

A graph is a finite 1-dimensional CW complex: vertices plus edges ``(eid, u, v)``.
Loops and parallel edges are allowed.  A *half-edge* is a pair ``(eid, end)``
where ``end`` is 0 at the tail ``u`` and 1 at the head ``v``.
"""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from . import geometry as geo
from .geometry import Point

HalfEdge = tuple[str, int]


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        ids = [e[0] for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge id")
        vs = set(self.vertices)
        for eid, u, v in self.edges:
            if u not in vs or v not in vs:
                raise ValueError(f"edge {eid} has an undeclared endpoint")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, str]], vertices: Iterable[str] = ()) -> "Graph":
        edges = [tuple(map(str, e)) for e in edges]
        seen = list(dict.fromkeys(map(str, vertices)))
        for _, u, v in edges:
            for x in (u, v):
                if x not in seen:
                    seen.append(x)
        return cls(tuple(seen), tuple(edges))

    @cached_property
    def edge_map(self) -> dict[str, tuple[str, str]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    def endpoints(self, eid: str) -> tuple[str, str]:
        return self.edge_map[eid]

    def half_edge_vertex(self, h: HalfEdge) -> str:
        return self.edge_map[h[0]][h[1]]

    @cached_property
    def _incidence(self) -> dict[str, list[HalfEdge]]:
        inc: dict[str, list[HalfEdge]] = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            inc[u].append((eid, 0))
            inc[v].append((eid, 1))
        return inc

    def half_edges_at(self, v: str) -> list[HalfEdge]:
        return list(self._incidence[v])

    def valence(self, v: str) -> int:
        return len(self._incidence[v])

    def other_end(self, eid: str, v: str) -> str:
        u, w = self.edge_map[eid]
        return w if u == v else u

    @property
    def has_loops(self) -> bool:
        return any(u == v for _, u, v in self.edges)

    def components(self) -> list[set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for _, u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen: set[str] = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            comp = {root}
            stack = [root]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced_by_edges(self, eids: Iterable[str], keep_isolated: bool = False) -> "Graph":
        keep = set(eids)
        edges = tuple(e for e in self.edges if e[0] in keep)
        if keep_isolated:
            return Graph(self.vertices, edges)
        used = {x for _, u, v in edges for x in (u, v)}
        return Graph(tuple(v for v in self.vertices if v in used), edges)

    def to_text(self) -> str:
        lines = [f"v {v}" for v in self.vertices]
        lines += [f"e {eid} {u} {v}" for eid, u, v in self.edges]
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def essential_vertices(g: Graph) -> set[str]:
    """Vertices of valence at least 3 (a loop counts twice)."""
    return {v for v in g.vertices if g.valence(v) >= 3}


def m_count(g: Graph) -> int:
    return len(essential_vertices(g))


def piece_names(eid: str, parts: int) -> tuple[list[str], list[str]]:
    """Interior vertex ids and piece edge ids used when ``eid`` is cut into ``parts``."""
    if parts == 1:
        return [], [eid]
    return [f"{eid}.{j}" for j in range(1, parts)], [f"{eid}:{j}" for j in range(parts)]


def subdivide(g: Graph, parts_per_edge: int) -> Graph:
    """Replace each edge by a path of ``parts_per_edge`` edges, oriented tail to head."""
    if parts_per_edge < 1:
        raise ValueError("parts_per_edge must be >= 1")
    if parts_per_edge == 1:
        return g
    vertices = list(g.vertices)
    edges = []
    for eid, u, v in g.edges:
        inner, pieces = piece_names(eid, parts_per_edge)
        vertices.extend(inner)
        chain = [u, *inner, v]
        edges.extend((pieces[j], chain[j], chain[j + 1]) for j in range(parts_per_edge))
    return Graph(tuple(vertices), tuple(edges))


def normalize_loops(g: Graph) -> Graph:
    """Subdivide every loop once, leaving other edges untouched."""
    if not g.has_loops:
        return g
    vertices = list(g.vertices)
    edges = []
    for eid, u, v in g.edges:
        if u != v:
            edges.append((eid, u, v))
            continue
        inner, pieces = piece_names(eid, 2)
        vertices.extend(inner)
        edges.append((pieces[0], u, inner[0]))
        edges.append((pieces[1], inner[0], v))
    return Graph(tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# rotation systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    """Counterclockwise cyclic order of half-edges around each vertex."""

    order: tuple[tuple[str, tuple[HalfEdge, ...]], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Sequence[HalfEdge]]) -> "RotationSystem":
        return cls(tuple((v, tuple(tuple(h) for h in hs)) for v, hs in mapping.items()))

    @cached_property
    def as_dict(self) -> dict[str, tuple[HalfEdge, ...]]:
        return dict(self.order)

    def at(self, v: str) -> tuple[HalfEdge, ...]:
        return self.as_dict.get(v, ())

    def check(self, g: Graph) -> None:
        for v in g.vertices:
            if sorted(self.at(v)) != sorted(g.half_edges_at(v)):
                raise ValueError(f"rotation at {v} does not list its half-edges exactly once")

    def reversed(self) -> "RotationSystem":
        return RotationSystem(tuple((v, tuple(reversed(hs))) for v, hs in self.order))


def trace_faces(g: Graph, rot: RotationSystem) -> list[list[HalfEdge]]:
    """Face boundary walks as lists of darts (half-edges leaving a vertex)."""
    rot.check(g)
    succ: dict[HalfEdge, HalfEdge] = {}
    for v in g.vertices:
        hs = rot.at(v)
        for i, h in enumerate(hs):
            succ[h] = hs[(i + 1) % len(hs)]
    faces = []
    seen: set[HalfEdge] = set()
    for eid, _, _ in g.edges:
        for end in (0, 1):
            start = (eid, end)
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = succ[(d[0], 1 - d[1])]
            faces.append(walk)
    return faces


def euler_face_check(g: Graph, rot: RotationSystem) -> bool:
    """True iff face tracing yields V - E + F = 2 (g connected)."""
    faces = trace_faces(g, rot)
    f = max(len(faces), 1)
    return len(g.vertices) - len(g.edges) + f == 2


# ---------------------------------------------------------------------------
# planarity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    rotation: RotationSystem | None = None
    kuratowski: Graph | None = None
    kind: str | None = None

    def __bool__(self) -> bool:
        return self.planar


def _simple_model(g: Graph) -> tuple[nx.Graph, dict[str, HalfEdge]]:
    """Simple graph homeomorphic to g plus a map midpoint-vertex -> half-edge at its branch end."""
    h = subdivide(normalize_loops(g), 2)
    model = nx.Graph()
    model.add_nodes_from(h.vertices)
    model.add_edges_from((u, v) for _, u, v in h.edges)
    mid: dict[str, HalfEdge] = {}
    for eid, u, v in g.edges:
        if u == v:
            loop_pieces = piece_names(eid, 2)[1]
            mid[piece_names(loop_pieces[0], 2)[0][0]] = (eid, 0)
            mid[piece_names(loop_pieces[1], 2)[0][0]] = (eid, 1)
        else:
            # the single midpoint is adjacent to both ends; resolved by vertex below
            mid[piece_names(eid, 2)[0][0]] = (eid, -1)
    return model, mid


def _nx_planar(g: Graph) -> bool:
    model, _ = _simple_model(g)
    return nx.check_planarity(model)[0]


def kuratowski_type(g: Graph) -> str | None:
    """'K5' or 'K3,3' if g (isolated vertices ignored) is a subdivision of one, else None."""
    g = normalize_loops(g)
    deg = {v: g.valence(v) for v in g.vertices}
    if any(d == 1 for d in deg.values()):
        return None
    branch = sorted(v for v, d in deg.items() if d >= 3)
    # follow threads of degree-2 vertices between branch vertices
    branch_edges = []
    used: set[str] = set()
    for b in branch:
        for eid, end in g.half_edges_at(b):
            if eid in used:
                continue
            cur, e = b, eid
            while True:
                used.add(e)
                nxt = g.other_end(e, cur)
                if nxt in branch or nxt == b:
                    break
                e = next(h[0] for h in g.half_edges_at(nxt) if h[0] != e)
                cur = nxt
            branch_edges.append(tuple(sorted((b, nxt))))
    if len(used) != len(g.edges):
        return None  # a component without branch vertices
    if len(set(branch_edges)) != len(branch_edges) or any(a == b for a, b in branch_edges):
        return None
    if len(branch) == 5 and all(deg[v] == 4 for v in branch) and len(branch_edges) == 10:
        return "K5"
    if len(branch) == 6 and all(deg[v] == 3 for v in branch) and len(branch_edges) == 9:
        bg = nx.Graph(branch_edges)
        if nx.is_bipartite(bg):
            left, right = nx.bipartite.sets(bg)
            if len(left) == len(right) == 3:
                return "K3,3"
    return None


def _kuratowski_witness(g: Graph) -> Graph:
    kept = [e[0] for e in g.edges]
    for eid in [e[0] for e in g.edges]:
        trial = [x for x in kept if x != eid]
        if not _nx_planar(g.induced_by_edges(trial)):
            kept = trial
    return g.induced_by_edges(kept)


def _rotation_from_nx(g: Graph) -> RotationSystem:
    model, mid = _simple_model(g)
    ok, emb = nx.check_planarity(model)
    assert ok
    rot = {}
    for v in g.vertices:
        if g.valence(v) == 0:
            rot[v] = ()
            continue
        hs = []
        for w in reversed(list(emb.neighbors_cw_order(v))):
            eid, end = mid[w]
            if end == -1:
                end = 0 if g.endpoints(eid)[0] == v else 1
            hs.append((eid, end))
        rot[v] = tuple(hs)
    return RotationSystem.from_mapping(rot)


def is_planar(g: Graph) -> PlanarityResult:
    """Decide planarity; return a face-checked rotation system or a Kuratowski subgraph."""
    if _nx_planar(g):
        return PlanarityResult(True, rotation=_rotation_from_nx(g))
    witness = _kuratowski_witness(g)
    return PlanarityResult(False, kuratowski=witness, kind=kuratowski_type(witness))


# ---------------------------------------------------------------------------
# PL embeddings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PLEmbedding:
    positions: tuple[tuple[str, Point], ...]
    polylines: tuple[tuple[str, tuple[Point, ...]], ...]

    @classmethod
    def build(cls, g: Graph, positions: Mapping[str, Sequence], polylines: Mapping[str, Sequence] | None = None) -> "PLEmbedding":
        pos = {v: geo.point(*positions[v]) for v in g.vertices if v in positions}
        polys = {}
        polylines = polylines or {}
        for eid, u, v in g.edges:
            if eid in polylines:
                polys[eid] = tuple(geo.point(*p) for p in polylines[eid])
            else:
                polys[eid] = (pos[u], pos[v])
        return cls(tuple(pos.items()), tuple(polys.items()))

    @cached_property
    def pos(self) -> dict[str, Point]:
        return dict(self.positions)

    @cached_property
    def poly(self) -> dict[str, tuple[Point, ...]]:
        return dict(self.polylines)

    def half_edge_path(self, g: Graph, h: HalfEdge) -> tuple[Point, ...]:
        """Polyline of the edge read away from the vertex of half-edge ``h``."""
        pts = self.poly[h[0]]
        return pts if h[1] == 0 else tuple(reversed(pts))

    def initial_direction(self, g: Graph, h: HalfEdge) -> Point:
        pts = self.half_edge_path(g, h)
        return geo.sub(pts[1], pts[0])

    def to_text(self) -> str:
        lines = [f"pos {v} {_fmt(p[0])} {_fmt(p[1])}" for v, p in self.positions]
        for eid, pts in self.polylines:
            coords = " ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts)
            lines.append(f"poly {eid} {coords}")
        return "\n".join(lines) + "\n"


def _fmt(x: Fraction) -> str:
    return str(x)


def rotation_from_embedding(g: Graph, emb: PLEmbedding) -> RotationSystem:
    """Counterclockwise order of half-edges by their initial segment directions."""
    rot = {}
    for v in g.vertices:
        hs = g.half_edges_at(v)
        dirs = [emb.initial_direction(g, h) for h in hs]
        rot[v] = tuple(hs[i] for i in geo.ccw_sorted(dirs))
    return RotationSystem.from_mapping(rot)


def subdivide_embedding(g: Graph, emb: PLEmbedding, parts: int) -> PLEmbedding:
    """Embedding of ``subdivide(g, parts)`` with pieces cut at equal polyline parameters."""
    if parts == 1:
        return emb
    pos = dict(emb.pos)
    polys = {}
    for eid, u, v in g.edges:
        pts = emb.poly[eid]
        inner, pieces = piece_names(eid, parts)
        for j, name in enumerate(inner, start=1):
            pos[name] = geo.polyline_point(pts, Fraction(j, parts))
        for j, name in enumerate(pieces):
            polys[name] = tuple(geo.polyline_slice(pts, Fraction(j, parts), Fraction(j + 1, parts)))
    return PLEmbedding(tuple(pos.items()), tuple(polys.items()))


def normalize_loops_embedding(g: Graph, emb: PLEmbedding) -> PLEmbedding:
    if not g.has_loops:
        return emb
    pos = dict(emb.pos)
    polys = {}
    for eid, u, v in g.edges:
        pts = emb.poly[eid]
        if u != v:
            polys[eid] = pts
            continue
        inner, pieces = piece_names(eid, 2)
        half = Fraction(1, 2)
        pos[inner[0]] = geo.polyline_point(pts, half)
        polys[pieces[0]] = tuple(geo.polyline_slice(pts, 0, half))
        polys[pieces[1]] = tuple(geo.polyline_slice(pts, half, 1))
    return PLEmbedding(tuple(pos.items()), tuple(polys.items()))


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    reason: str | None = None
    segments: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_embedding(g: Graph, emb: PLEmbedding) -> EmbeddingCheck:
    """Check the embedding invariants with exact rational arithmetic."""
    pos = emb.pos
    for v in g.vertices:
        if v not in pos:
            return EmbeddingCheck(False, f"vertex {v} has no position")
    if len(set(pos[v] for v in g.vertices)) != len(g.vertices):
        return EmbeddingCheck(False, "two vertices share a position")
    segs = []  # (eid, index, a, b, vertex-end points)
    for eid, u, v in g.edges:
        pts = emb.poly.get(eid)
        if pts is None or len(pts) < 2:
            return EmbeddingCheck(False, f"edge {eid} has no polyline")
        if pts[0] != pos[u] or pts[-1] != pos[v]:
            return EmbeddingCheck(False, f"edge {eid} polyline does not end at its vertices")
        n = len(pts) - 1
        for i in range(n):
            a, b = pts[i], pts[i + 1]
            if a == b:
                return EmbeddingCheck(False, f"edge {eid} has a degenerate segment", ((eid, i),))
            ends = set()
            if i == 0:
                ends.add(a)
            if i == n - 1:
                ends.add(b)
            segs.append((eid, i, a, b, frozenset(ends), n))
    vertex_points = {pos[v]: v for v in g.vertices}
    for eid, i, a, b, ends, _ in segs:
        for p, x in vertex_points.items():
            if p not in ends and p not in (a, b) and geo.on_segment(p, a, b):
                return EmbeddingCheck(False, f"vertex {x} lies on edge {eid}", ((eid, i),))
            if p in (a, b) and p not in ends:
                return EmbeddingCheck(False, f"edge {eid} passes through vertex {x}", ((eid, i),))
    for s in range(len(segs)):
        e1, i1, a1, b1, ends1, n1 = segs[s]
        for t in range(s + 1, len(segs)):
            e2, i2, a2, b2, ends2, n2 = segs[t]
            hit = geo.segment_intersection(a1, b1, a2, b2)
            if hit is None:
                continue
            allowed = set(ends1 & ends2)
            if e1 == e2 and abs(i1 - i2) == 1:
                allowed.add(b1 if i2 == i1 + 1 else a1)
            if isinstance(hit, tuple) and len(hit) == 2 and not isinstance(hit[0], Fraction):
                return EmbeddingCheck(False, f"segments of {e1} and {e2} overlap", ((e1, i1), (e2, i2)))
            if hit not in allowed:
                what = "is not injective" if e1 == e2 else f"crosses edge {e2}"
                return EmbeddingCheck(False, f"edge {e1} {what}", ((e1, i1), (e2, i2)))
    return EmbeddingCheck(True)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphDocument:
    graph: Graph
    rotation: RotationSystem | None = None
    embedding: PLEmbedding | None = None
    name: str | None = field(default=None, compare=False)


def _parse_half_edge(token: str, g_edges: dict[str, tuple[str, str]], v: str) -> HalfEdge:
    if "@" in token:
        eid, end = token.rsplit("@", 1)
        return (eid, int(end))
    u, w = g_edges[token]
    if u == w:
        raise ValueError(f"half-edge of loop {token} needs an explicit @0/@1 end")
    return (token, 0 if u == v else 1)


def parse_graph_text(text: str) -> GraphDocument:
    """Parse the line-based graph format (``v``, ``e``, ``rot``, ``pos``, ``poly``)."""
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    rot_lines: list[tuple[str, list[str]]] = []
    pos: dict[str, tuple] = {}
    polys: dict[str, list] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        try:
            if kind == "v":
                vertices.append(tok[1])
            elif kind == "e":
                edges.append((tok[1], tok[2], tok[3]))
            elif kind == "rot":
                rot_lines.append((tok[1], tok[2:]))
            elif kind == "pos":
                pos[tok[1]] = (geo.rational(tok[2]), geo.rational(tok[3]))
            elif kind == "poly":
                nums = [geo.rational(x) for x in tok[2:]]
                if len(nums) % 2:
                    raise ValueError("odd number of coordinates")
                polys[tok[1]] = list(zip(nums[::2], nums[1::2]))
            else:
                raise ValueError(f"unknown record {kind!r}")
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    g = Graph.from_edges(edges, vertices)
    rotation = None
    if rot_lines:
        emap = g.edge_map
        rotation = RotationSystem.from_mapping(
            {v: [_parse_half_edge(t, emap, v) for t in toks] for v, toks in rot_lines}
        )
    embedding = None
    if pos:
        embedding = PLEmbedding.build(g, pos, polys)
    return GraphDocument(g, rotation, embedding)


def format_graph_text(doc: GraphDocument) -> str:
    out = doc.graph.to_text()
    if doc.rotation is not None:
        for v, hs in doc.rotation.order:
            out += "rot " + v + " " + " ".join(f"{e}@{end}" for e, end in hs) + "\n"
    if doc.embedding is not None:
        out += doc.embedding.to_text()
    return out


def adjacency(g: Graph) -> dict[str, list[tuple[str, str]]]:
    """vertex -> list of (edge id, neighbour), loops listed twice."""
    adj: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for eid, u, v in g.edges:
        adj[u].append((eid, v))
        adj[v].append((eid, u))
    return adj
