"""Star classes in H_1(Conf_2(G)) and the non-planarity obstruction suite.

All computations use the cube-complex model of Conf_2 with every edge cut
into ``parts`` pieces (default 3).  Stars are transported through the first
piece of each chosen half-edge, so the motion stays next to the hub.

"Clockwise" and "counterclockwise" refer to the counterclockwise rotation
system of the graph document (derived from its embedding when there is one).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import geometry as geo
from .algebra import F2, Z, HomologyResult, chain_add, class_equal, homology
from .discrete_config import (
    DEFAULT_MAX_CELLS,
    Chain,
    CubeComplex,
    cycle_from_motion,
    discretize,
    edge_between,
    path_moves,
)
from .errors import EmbeddingError, PreconditionError, ResourceLimitError
from .graph_core import (
    Graph,
    GraphDocument,
    HalfEdge,
    PLEmbedding,
    essential_vertices,
    is_planar,
    normalize_loops,
    normalize_loops_embedding,
    piece_names,
    subdivide_embedding,
    validate_embedding,
)
from .star_gauss import STANDARD, eps_motion, gauss_winding

CLOCKWISE = "clockwise"
COUNTERCLOCKWISE = "counterclockwise"


@dataclass
class StarClass:
    hub: str
    half_edges: tuple[HalfEdge, ...]
    chain: Chain
    orientation: str | None = None


@dataclass
class LollipopClasses:
    beta1: Chain
    beta2: Chain
    beta12: Chain


class Conf2Model:
    """Cube-complex model of Conf_2 of a graph document, with cached homology."""

    def __init__(self, doc: GraphDocument, parts: int = 3, max_cells: int = DEFAULT_MAX_CELLS):
        if parts < 2:
            raise PreconditionError("star transport needs every edge cut at least in two", "parts >= 2")
        self.doc = doc
        self.graph = doc.graph
        self.parts = parts
        self.base = normalize_loops(doc.graph)
        self.complex, self.certificate = discretize(doc.graph, 2, parts, max_cells=max_cells)
        self.sub = self.certificate.graph
        self._homology: dict[str, HomologyResult] = {}

    def homology(self, coefficients: str = Z) -> HomologyResult:
        if coefficients not in self._homology:
            self._homology[coefficients] = homology(self.complex, coefficients)
        return self._homology[coefficients]

    # -- naming between the original and the subdivided graph ----------

    def normalized_half_edge(self, h: HalfEdge) -> HalfEdge:
        eid, end = h
        u, v = self.graph.endpoints(eid)
        if u != v:
            return h
        pieces = piece_names(eid, 2)[1]
        return (pieces[0], 0) if end == 0 else (pieces[1], 1)

    def stub(self, h: HalfEdge) -> list[str]:
        """Vertex path of the first piece of half-edge ``h``, starting at its vertex."""
        ne, end = self.normalized_half_edge(h)
        u, v = self.base.endpoints(ne)
        pieces = piece_names(ne, self.parts)[1]
        piece = pieces[0] if end == 0 else pieces[-1]
        start = u if end == 0 else v
        return [start, self.sub.other_end(piece, start)]

    def edge_pieces(self, eid: str) -> list[str]:
        """Subdivided edge ids of an original edge, from its tail to its head."""
        u, v = self.graph.endpoints(eid)
        if u != v:
            return piece_names(eid, self.parts)[1]
        halves = piece_names(eid, 2)[1]
        return piece_names(halves[0], self.parts)[1] + piece_names(halves[1], self.parts)[1]

    def edge_vertices(self, eid: str) -> list[str]:
        out = [self.graph.endpoints(eid)[0]]
        for piece in self.edge_pieces(eid):
            out.append(self.sub.other_end(piece, out[-1]))
        return out

    # -- classes ---------------------------------------------------------

    def ordered_star(self, hub: str, half_edges: Sequence[HalfEdge], orientation: str | None) -> tuple[HalfEdge, ...]:
        hs = tuple(tuple(h) for h in half_edges)
        if orientation is None:
            return hs
        rot = self.doc.rotation
        if rot is None:
            raise PreconditionError("orienting a star needs rotation data", "rotation system given")
        ccw = [h for h in rot.at(hub) if h in hs]
        if len(ccw) != 3:
            raise ValueError("star half-edges must be incident to the hub")
        return tuple(ccw) if orientation == COUNTERCLOCKWISE else tuple(reversed(ccw))

    def star_class(self, hub: str, half_edges: Sequence[HalfEdge], orientation: str | None = None) -> StarClass:
        """1-cycle of the hexagonal loop transported through the star at ``hub``.

        With an orientation the arms are relabelled so that arms 1, 2, 3 run in
        that rotational sense around the hub; otherwise the given order is used.
        """
        if len(half_edges) != 3 or len({tuple(h) for h in half_edges}) != 3:
            raise PreconditionError("a star needs three distinct half-edges", "three distinct half-edges")
        for h in half_edges:
            if self.graph.half_edge_vertex(tuple(h)) != hub:
                raise PreconditionError(f"half-edge {h} is not at {hub}", "half-edges incident to the hub")
        hs = self.ordered_star(hub, half_edges, orientation)
        arms = [self.stub(h) for h in hs]
        if len({a[-1] for a in arms}) != 3:
            raise PreconditionError("star arms are not edge-disjoint at the hub", "edge-disjoint arms")
        start, legs = eps_motion(arms)
        moves = []
        for particle, path in legs:
            moves += path_moves(self.sub, particle, path)
        chain = cycle_from_motion(self.complex, start, moves)
        return StarClass(hub, hs, chain, orientation)

    def circuit_chain(self, vertex_cycle: Sequence[str], parked: str, moving: int) -> Chain:
        """One particle runs once around a closed vertex path while the other stays at ``parked``."""
        start = [None, None]
        start[moving] = vertex_cycle[0]
        start[1 - moving] = parked
        return cycle_from_motion(self.complex, start, path_moves(self.sub, moving, vertex_cycle))

    def antipodal_chain(self, vertex_cycle: Sequence[str]) -> Chain:
        """Both particles run once around a closed vertex path, half a turn apart."""
        cyc = list(vertex_cycle[:-1])
        n = len(cyc)
        if n % 2 or n < 4:
            raise PreconditionError("antipodal motion needs an even cycle of length >= 4", "even cycle, length >= 4")
        h = n // 2
        moves = []
        for i in range(n):
            moves.append((0, edge_between(self.sub, cyc[i], cyc[(i + 1) % n])))
            moves.append((1, edge_between(self.sub, cyc[(i + h) % n], cyc[(i + h + 1) % n])))
        return cycle_from_motion(self.complex, [cyc[0], cyc[h]], moves)


# ---------------------------------------------------------------------------
# lollipop and theta relations
# ---------------------------------------------------------------------------


def _lollipop_parts(doc: GraphDocument) -> tuple[str, str, str, str]:
    g = doc.graph
    loops = [e for e in g.edges if e[1] == e[2]]
    if len(loops) != 1 or len(g.edges) != 2:
        raise PreconditionError("expected a lollipop: one loop and one stem", "graph is a lollipop")
    loop = loops[0][0]
    hub = loops[0][1]
    stem = next(e for e in g.edges if e[0] != loop)
    leaf = stem[2] if stem[1] == hub else stem[1]
    return loop, stem[0], hub, leaf


def lollipop_classes(model: Conf2Model) -> LollipopClasses:
    """beta_i: particle i circles the loop (in its drawn direction) with the other on the leaf;
    beta_12: both circle it antipodally."""
    loop, _, _, leaf = _lollipop_parts(model.doc)
    cyc = model.edge_vertices(loop)
    return LollipopClasses(
        beta1=model.circuit_chain(cyc, leaf, 0),
        beta2=model.circuit_chain(cyc, leaf, 1),
        beta12=model.antipodal_chain(cyc),
    )


def lollipop_star(model: Conf2Model, orientation: str = CLOCKWISE) -> StarClass:
    _, _, hub, _ = _lollipop_parts(model.doc)
    return model.star_class(hub, model.graph.half_edges_at(hub), orientation)


def verify_2Q(doc: GraphDocument | None = None, parts: int = 3, model: Conf2Model | None = None) -> bool:
    """sigma == beta_1 + beta_2 - beta_12 in H_1(Conf_2(L); Z), sigma oriented clockwise."""
    if model is None:
        from .named import lollipop

        model = Conf2Model(doc or lollipop(), parts)
    b = lollipop_classes(model)
    sigma = lollipop_star(model)
    rhs = chain_add((1, b.beta1), (1, b.beta2), (-1, b.beta12))
    return class_equal(model.homology(Z), sigma.chain, rhs)


def theta_stars(model: Conf2Model, orientation: str = CLOCKWISE) -> tuple[StarClass, StarClass]:
    """Star classes at the top and bottom vertex of a theta graph."""
    g = model.graph
    ess = [v for v in g.vertices if g.valence(v) == 3]
    if len(ess) != 2 or len(g.edges) != 3:
        raise PreconditionError("expected a theta graph", "graph is a theta graph")
    if model.doc.embedding is not None:
        ess.sort(key=lambda v: -model.doc.embedding.pos[v][1])
    return tuple(model.star_class(v, g.half_edges_at(v), orientation) for v in ess)


def verify_2Theta(doc: GraphDocument | None = None, parts: int = 3, model: Conf2Model | None = None) -> bool:
    """sigma_1 == sigma_2 in H_1(Conf_2(Theta); Z), both oriented clockwise."""
    if model is None:
        from .named import theta

        model = Conf2Model(doc or theta(), parts)
    s1, s2 = theta_stars(model)
    return class_equal(model.homology(Z), s1.chain, s2.chain)


# ---------------------------------------------------------------------------
# vanishing of star classes
# ---------------------------------------------------------------------------


def all_stars(g: Graph) -> list[tuple[str, tuple[HalfEdge, ...]]]:
    out = []
    for v in g.vertices:
        hs = sorted(g.half_edges_at(v))
        for triple in combinations(hs, 3):
            out.append((v, triple))
    return out


def star_vanishing_suite(doc: GraphDocument, parts: int = 3, model: Conf2Model | None = None) -> dict:
    """Check every embedded star (hub x 3 incident half-edges) for bounding, plus H_1 torsion.

    Non-planar graphs pass when every star class bounds and H_1 is torsion-free;
    planar graphs pass when no star class bounds.
    """
    model = model or Conf2Model(doc, parts)
    hz = model.homology(Z)
    planar = bool(is_planar(doc.graph))
    stars = []
    for hub, hs in all_stars(doc.graph):
        sc = model.star_class(hub, hs)
        stars.append({
            "hub": hub,
            "half_edges": [list(h) for h in sc.half_edges],
            "bounds": hz.is_boundary(sc.chain),
        })
    torsion_free = not hz.torsion[1]
    bounding = sum(s["bounds"] for s in stars)
    if planar:
        valid = bounding == 0
    else:
        valid = bounding == len(stars) and torsion_free
    return {
        "graph": doc.name or doc.graph.digest()[:12],
        "planar": planar,
        "h1_rank": hz.betti[1],
        "h1_torsion": list(hz.torsion[1]),
        "torsion_free": torsion_free,
        "stars": stars,
        "num_stars": len(stars),
        "num_bounding": bounding,
        "valid": valid,
    }


# ---------------------------------------------------------------------------
# cohomological planarity
# ---------------------------------------------------------------------------


def gauss_cochain(c: CubeComplex, emb: PLEmbedding) -> dict[int, int]:
    """Integer 1-cochain: signed ray crossings of x2 - x1 as one particle slides along its edge.

    Summed over a 1-cycle it gives the winding number of the Gauss map of the
    realized loop.
    """
    out = {}
    nv = c.num_graph_vertices
    for idx, cell in enumerate(c.cells[1]):
        pos_e = 0 if cell[0] >= nv else 1
        eid = c.gcells[cell[pos_e]][1]
        q = emb.pos[c.gcells[cell[1 - pos_e]][1]]
        pts = emb.poly[eid]
        if pos_e == 0:
            diffs = [geo.sub(q, p) for p in pts]
        else:
            diffs = [geo.sub(p, q) for p in pts]
        out[idx] = sum(geo.crossing_count(a, b) for a, b in zip(diffs, diffs[1:]))
    return out


def evaluate(cochain: dict[int, int], chain: Chain) -> int:
    return sum(cochain.get(i, 0) * x for i, x in chain.items())


def cocycle_defects(c: CubeComplex, cochain: dict[int, int]) -> list[int]:
    """2-cells on whose boundary the cochain does not vanish."""
    return [j for j, col in enumerate(c.boundary(2)) if sum(cochain[r] * s for r, s in col)]


def spanning_trees(g: Graph, limit: int = 10_000) -> list[tuple[str, ...]]:
    """All spanning trees of a connected loop-free multigraph, as sorted edge-id tuples."""
    edges = list(g.edges)
    n = len(g.vertices)
    out: list[tuple[str, ...]] = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i: int, chosen: list[str], parent: dict[str, str]):
        if len(chosen) == n - 1:
            out.append(tuple(sorted(chosen)))
            if len(out) > limit:
                raise ResourceLimitError(f"more than {limit} spanning trees")
            return
        if len(edges) - i < n - 1 - len(chosen):
            return
        eid, u, v = edges[i]
        ru, rv = find(parent, u), find(parent, v)
        if ru != rv:
            p2 = dict(parent)
            p2[ru] = rv
            chosen.append(eid)
            rec(i + 1, chosen, p2)
            chosen.pop()
        rec(i + 1, chosen, parent)

    rec(0, [], {v: v for v in g.vertices})
    return out


def topological_tree(model: Conf2Model, tree: Iterable[str]) -> Graph:
    """Subdivided graph minus the middle piece of every edge outside ``tree`` (edges of the
    loop-normalized graph).  Contains every vertex and every stub at a vertex."""
    tree = set(tree)
    cut = set()
    for eid, _, _ in model.base.edges:
        if eid not in tree:
            pieces = piece_names(eid, model.parts)[1]
            cut.add(pieces[len(pieces) // 2])
    sub = model.sub
    return sub.induced_by_edges([e for e, _, _ in sub.edges if e not in cut], keep_isolated=True)


def _map_chain(src: CubeComplex, dst: CubeComplex, chain: Chain, d: int = 1) -> Chain:
    out = {}
    for i, x in chain.items():
        described = src.describe(d, i)
        _, j = dst.cell_of(described)
        out[j] = x
    return out


def cohomological_planarity(
    doc: GraphDocument, parts: int = 3, max_trees: int = 10_000, max_cells: int = DEFAULT_MAX_CELLS
) -> dict:
    """Planar input: a tree T, its embedding, and the class alpha^G_12, with the restriction
    identity checked on a cycle basis of Conf_2(T).  Non-planar input: for every topological
    spanning tree, a star in T that bounds in G but pairs to 1 with any planar Gauss class."""
    if parts < 3:
        raise PreconditionError("topological spanning trees need three pieces per edge", "parts >= 3")
    if not doc.graph.is_connected():
        raise PreconditionError("graph must be connected", "G connected")
    model = Conf2Model(doc, parts, max_cells=max_cells)
    planar = is_planar(doc.graph)
    if planar:
        return _planar_witness(model)
    return _refutation(model, max_trees)


def _first_tree(g: Graph) -> tuple[str, ...]:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    chosen = []
    for eid, u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(eid)
    return tuple(sorted(chosen))


def _planar_witness(model: Conf2Model) -> dict:
    doc = model.doc
    if doc.embedding is None:
        raise PreconditionError("planar graph supplied without an embedding", "planar embedding given")
    check = validate_embedding(doc.graph, doc.embedding)
    if not check:
        raise EmbeddingError(check.reason)
    emb = subdivide_embedding(model.base, normalize_loops_embedding(doc.graph, doc.embedding), model.parts)
    alpha = gauss_cochain(model.complex, emb)
    defects = cocycle_defects(model.complex, alpha)

    tree = _first_tree(model.base)
    t_graph = topological_tree(model, tree)
    t_complex = CubeComplex(t_graph, 2)
    t_emb = PLEmbedding(
        tuple((v, emb.pos[v]) for v in t_graph.vertices),
        tuple((e, emb.poly[e]) for e, _, _ in t_graph.edges),
    )
    phi_alpha = gauss_cochain(t_complex, t_emb)
    basis = homology(t_complex, F2).representatives(1)
    rows = []
    for z in basis:
        # F2 representatives lift to integral cycles only up to sign; orient them first
        zi = _integral_lift(t_complex, z)
        lhs = evaluate(alpha, _map_chain(t_complex, model.complex, zi)) % 2
        rhs = evaluate(phi_alpha, zi) % 2
        rows.append({"restricted": lhs, "pullback": rhs, "agree": lhs == rhs})

    ess = sorted(essential_vertices(doc.graph))
    star_value = None
    if ess:
        sc = model.star_class(ess[0], sorted(doc.graph.half_edges_at(ess[0]))[:3], COUNTERCLOCKWISE)
        star_value = evaluate(alpha, sc.chain)
    valid = not defects and all(r["agree"] for r in rows) and (star_value in (None, 1))
    return {
        "planar": True,
        "tree_edges": list(tree),
        "cut_pieces": sorted(e for e, _, _ in model.sub.edges if e not in set(x for x, _, _ in t_graph.edges)),
        "cocycle_defects": len(defects),
        "basis_checks": rows,
        "star_pairing": star_value,
        "valid": valid,
    }


def _integral_lift(c: CubeComplex, z: Chain) -> Chain:
    """Signs making an F2 1-cycle an integral cycle, found by walking its components.

    On a graph-like 1-cycle in which every vertex has even degree, following
    edges greedily produces closed walks; orienting cells along the walk gives
    an integral cycle with the same mod-2 reduction.
    """
    ends = {}
    for i in z:
        (a, _), (b, _) = c.boundary(1)[i]
        ends[i] = (a, b)
    incident: dict[int, list[int]] = {}
    for i, (a, b) in ends.items():
        incident.setdefault(a, []).append(i)
        incident.setdefault(b, []).append(i)
    unused = set(ends)
    out: Chain = {}
    while unused:
        i0 = min(unused)
        head, tail = ends[i0]
        start = tail
        cur = tail
        i = i0
        while True:
            unused.discard(i)
            a, b = ends[i]  # boundary = (+1) a + (-1) b ; walking from b to a is +1
            if cur == b:
                out[i] = 1
                cur = a
            else:
                out[i] = -1
                cur = b
            if cur == start:
                break
            i = next(j for j in incident[cur] if j in unused)
        # a vertex may close a sub-walk before all its cells are used; the outer loop restarts
    if c.chain_boundary(out, 1):
        raise ArithmeticError("failed to orient an F2 cycle")
    return out


def _refutation(model: Conf2Model, max_trees: int) -> dict:
    g = model.graph
    hz = model.homology(Z)
    hf = model.homology(F2)
    hub = sorted(essential_vertices(g))[0]
    hs = tuple(sorted(g.half_edges_at(hub))[:3])
    sigma = model.star_class(hub, hs)
    bounds_z = hz.is_boundary(sigma.chain)
    bounds_f2 = hf.is_boundary(sigma.chain)
    # any planar embedding of T restricts to a star embedding near the hub; both
    # orientation classes have odd Gauss degree
    degrees = {"preserving": gauss_winding(STANDARD), "reversing": gauss_winding(STANDARD.mirror())}
    functional_value = int(all(d % 2 == 1 for d in degrees.values()))
    trees = []
    for tree in spanning_trees(model.base, limit=max_trees):
        t_graph = topological_tree(model, tree)
        t_complex = CubeComplex(t_graph, 2)
        t_sigma = _map_chain(model.complex, t_complex, sigma.chain)
        nonzero_in_tree = not homology(t_complex, F2).is_boundary(t_sigma)
        trees.append({
            "tree_edges": list(tree),
            "star_in_tree": True,
            "nonzero_in_tree": nonzero_in_tree,
            "refuted": bool(bounds_f2 and nonzero_in_tree and functional_value),
        })
    return {
        "planar": False,
        "hub": hub,
        "half_edges": [list(h) for h in hs],
        "star_bounds_z": bounds_z,
        "star_bounds_f2": bounds_f2,
        "star_degrees": degrees,
        "functional_value": functional_value,
        "num_trees": len(trees),
        "trees": trees,
        "valid": bool(trees) and all(t["refuted"] for t in trees),
    }
