"""Certified bounds on TC_r(Conf_k(G)) for connected planar graphs.

The lower bound r * d comes from a witness diagram: d essential vertices W,
each with a small disk and an orientation-preserving star inside it, one
bijection between W and the pairs of each binary partition lambda_j, and the
orthogonal pairing value of the zeta-product.  The upper bound r * m(G) uses
the cited fact that Conf_k(G) has the homotopy type of an m(G)-dimensional
complex once k >= m(G).

Certificates serialize to byte-stable JSON and can be replayed from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import geometry as geo
from .euclid_cohomology import PairSet, orthogonal_pair, verify_orthogonal_lemma
from .errors import EmbeddingError, PreconditionError
from .geometry import Point
from .graph_core import (
    Graph,
    HalfEdge,
    PLEmbedding,
    essential_vertices,
    is_planar,
    rotation_from_embedding,
    validate_embedding,
)
from .star_gauss import PRESERVING, StarEmbedding, gauss_winding, loop_samples, orientation_class

UPPER_PROVENANCE = "cited: dimension m(G)"


@dataclass(frozen=True)
class TCQuery:
    graph: Graph
    k: int
    r: int

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError(f"k = {self.k}", "k ≥ 1")
        if self.r < 2:
            raise PreconditionError(f"r = {self.r}", "r ≥ 2")


@dataclass
class TCCertificate:
    data: dict[str, Any]

    @property
    def valid(self) -> bool:
        return bool(self.data["valid"])

    @property
    def lower(self) -> int:
        return self.data["lower"]

    @property
    def upper(self) -> int | None:
        return self.data["upper"]

    @property
    def exact(self) -> bool:
        return bool(self.data["exact"])

    def to_json(self) -> str:
        return dumps(self.data)


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def _q(x: Fraction) -> str:
    return str(x)


def _pt(p: Point) -> list[str]:
    return [_q(p[0]), _q(p[1])]


def _unpt(p: Sequence[str]) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def _embedding_json(g: Graph, emb: PLEmbedding) -> dict:
    return {
        "vertices": [[v] + _pt(emb.pos[v]) for v in g.vertices],
        "edges": [[eid, u, v] for eid, u, v in g.edges],
        "polylines": {eid: [_pt(p) for p in emb.poly[eid]] for eid, _, _ in g.edges},
    }


def _embedding_from_json(d: dict) -> tuple[Graph, PLEmbedding]:
    g = Graph.from_edges([tuple(e) for e in d["edges"]], [x[0] for x in d["vertices"]])
    emb = PLEmbedding(
        tuple((x[0], _unpt(x[1:])) for x in d["vertices"]),
        tuple((eid, tuple(_unpt(p) for p in pts)) for eid, pts in d["polylines"].items()),
    )
    return g, emb


# ---------------------------------------------------------------------------
# the witness diagram
# ---------------------------------------------------------------------------


def _initial_segments(g: Graph, emb: PLEmbedding, v: str) -> set[tuple[str, int]]:
    out = set()
    for eid, end in g.half_edges_at(v):
        n = len(emb.poly[eid]) - 1
        out.add((eid, 0 if end == 0 else n - 1))
    return out


def _segments(g: Graph, emb: PLEmbedding):
    for eid, _, _ in g.edges:
        pts = emb.poly[eid]
        for i, (a, b) in enumerate(zip(pts, pts[1:])):
            yield eid, i, a, b


def _clearance2(g: Graph, emb: PLEmbedding, v: str) -> Fraction:
    """Squared distance from v to the nearest other vertex or segment not starting at v."""
    c = emb.pos[v]
    initial = _initial_segments(g, emb, v)
    best = None
    for u in g.vertices:
        if u != v:
            d2 = geo.norm2(geo.sub(emb.pos[u], c))
            best = d2 if best is None else min(best, d2)
    for eid, i, a, b in _segments(g, emb):
        if (eid, i) not in initial:
            d2 = geo.point_segment_dist2(c, a, b)
            best = d2 if best is None else min(best, d2)
    if best is None or best == 0:
        raise EmbeddingError(f"no admissible disk radius at {v}")
    return best


def _disk_checks(g: Graph, emb: PLEmbedding, disks: dict[str, tuple[Point, Fraction]]) -> list[dict]:
    checks = []
    names = sorted(disks)
    for v in names:
        c, rho = disks[v]
        rho2 = rho * rho
        initial = _initial_segments(g, emb, v)
        vertex_free = rho > 0 and all(
            geo.norm2(geo.sub(emb.pos[u], c)) > rho2 for u in g.vertices if u != v
        )
        radial = True
        for eid, i, a, b in _segments(g, emb):
            if (eid, i) in initial:
                # the disk must cut this segment once: its far end lies outside
                far = b if a == c else a
                radial = radial and geo.norm2(geo.sub(far, c)) > rho2
            else:
                radial = radial and geo.point_segment_dist2(c, a, b) > rho2
        checks.append({"name": f"disk_vertex_free:{v}", "ok": vertex_free})
        checks.append({"name": f"disk_meets_graph_in_stubs:{v}", "ok": radial and c == emb.pos[v]})
    disjoint = True
    for i, v in enumerate(names):
        for w in names[i + 1:]:
            (c1, r1), (c2, r2) = disks[v], disks[w]
            if geo.norm2(geo.sub(c1, c2)) <= (r1 + r2) ** 2:
                disjoint = False
    checks.append({"name": "disks_pairwise_disjoint", "ok": disjoint})
    return checks


def _stub_star(g: Graph, emb: PLEmbedding, v: str, rho: Fraction) -> tuple[list[HalfEdge], StarEmbedding]:
    """First three half-edges at v in counterclockwise order, cut to length below rho / 2."""
    rot = rotation_from_embedding(g, emb).at(v)
    if len(rot) < 3:
        raise PreconditionError(f"vertex {v} has valence {len(rot)}", "W consists of essential vertices")
    hs = list(rot[:3])
    c = emb.pos[v]
    leaves = []
    for h in hs:
        d = emb.initial_direction(g, h)
        s = geo.shrink_ratio(geo.norm2(d), (rho / 2) ** 2)
        leaves.append(geo.add(c, geo.scale(d, s)))
    return hs, StarEmbedding.from_directions(c, leaves)


def _star_checks(g: Graph, emb: PLEmbedding, v: str, hs, star: StarEmbedding, rho: Fraction) -> list[dict]:
    c = emb.pos[v]
    inside = all(geo.norm2(geo.sub(a[-1], c)) < rho * rho for a in star.arms)
    on_graph = True
    for h, arm in zip(hs, star.arms):
        path = emb.half_edge_path(g, tuple(h))
        if arm[0] != path[0] or not geo.on_segment(arm[-1], path[0], path[1]) or arm[-1] == path[0]:
            on_graph = False
    orient = orientation_class(star) == PRESERVING
    return [
        {"name": f"star_on_graph:{v}", "ok": on_graph},
        {"name": f"star_in_disk:{v}", "ok": inside},
        {"name": f"star_orientation_preserving:{v}", "ok": orient},
    ]


def _find_arc(g: Graph, emb: PLEmbedding, disks: dict[str, tuple[Point, Fraction]]) -> tuple[str, Point, Point] | None:
    """A sub-segment of some edge, free of vertices and outside every closed disk."""
    for eid, i, a, b in _segments(g, emb):
        for j in range(1, 7):
            p = geo.add(a, geo.scale(geo.sub(b, a), Fraction(j, 8)))
            q = geo.add(a, geo.scale(geo.sub(b, a), Fraction(j + 1, 8)))
            if _arc_clear(disks, p, q):
                return eid, p, q
    return None


def _arc_clear(disks, p: Point, q: Point) -> bool:
    return all(geo.point_segment_dist2(c, p, q) > rho * rho for c, rho in disks.values())


def _arc_points(p: Point, q: Point, n: int) -> list[Point]:
    return [geo.add(p, geo.scale(geo.sub(q, p), Fraction(i + 1, n + 1))) for i in range(n)]


def _bijection_checks(W: Sequence[str], lambdas: Sequence[PairSet], assignments) -> list[dict]:
    out = []
    for j, (lam, assign) in enumerate(zip(lambdas, assignments), start=1):
        pairs = sorted(tuple(p) for p in assign.values())
        ok = sorted(assign) == sorted(W) and pairs == sorted(tuple(p) for p in lam.sorted_pairs())
        out.append({"name": f"bijection:{j}", "ok": ok})
    if len(assignments) != len(lambdas):
        out.append({"name": "bijection_count", "ok": False})
    return out


def _torus_matrix(
    stars: dict[str, StarEmbedding], assign: dict[str, tuple[int, int]], stationary: dict[int, Point]
) -> list[list[int]]:
    """Winding of gamma_q along the loop of pair p, for pairs p, q of one partition.

    Pair p = (i, j) at vertex v runs the hexagonal loop of its star (i as the
    first particle); every other particle rests at its base point.
    """
    base: dict[int, Point] = dict(stationary)
    for v, (i, j) in assign.items():
        x1, x2 = loop_samples(stars[v])[0]
        base[i], base[j] = x1, x2
    pairs = [assign[v] for v in sorted(assign)]
    out = []
    for v in sorted(assign):
        i, j = assign[v]
        samples = loop_samples(stars[v])
        row = []
        for a, b in pairs:
            poly = []
            for x1, x2 in samples:
                pos = dict(base)
                pos[i], pos[j] = x1, x2
                poly.append(geo.sub(pos[b], pos[a]))
            row.append(geo.winding_number(poly))
        out.append(row)
    return out


@dataclass
class WitnessDiagram:
    W: list[str]
    lambdas: list[PairSet]
    assignments: list[dict[str, tuple[int, int]]]
    disks: dict[str, tuple[Point, Fraction]]
    stars: dict[str, tuple[list[HalfEdge], StarEmbedding]]
    arc: tuple[str, Point, Point] | None
    arc_points: list[Point]
    windings: dict[str, int]
    torus: list[list[list[int]]]
    pairing_value: int
    checks: list[dict] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(c["ok"] for c in self.checks)


def build_witness_diagram(
    g: Graph, emb: PLEmbedding, W: Sequence[str], lambdas: Sequence[PairSet], k: int
) -> WitnessDiagram:
    """Disks, stars, stationary arc and verification transcript for one choice of (W, lambdas)."""
    d = len(W)
    if k - 2 * d < 0:
        raise PreconditionError(f"k = {k} < 2d = {2 * d}", "2d ≤ k")
    if len(lambdas) < 2 or not lambdas[0].orthogonal_to(lambdas[1]):
        raise PreconditionError("lambda_1 and lambda_2 share a pair", "λ_1 ⊥ λ_2")
    ess = essential_vertices(g)
    for v in W:
        if v not in ess:
            raise PreconditionError(f"{v} is not essential", "W consists of essential vertices")
    for lam in lambdas:
        if lam.k != 2 * d or len(lam) != d or not (lam.is_partition and lam.is_cover):
            raise PreconditionError("each lambda_j must be a binary partition of {1..2d}", "λ_j partitions {1..2d}")

    W = sorted(W)
    disks = {}
    for v in W:
        rho = geo.rational_below_sqrt(_clearance2(g, emb, v) / 4)
        disks[v] = (emb.pos[v], rho)
    checks = [{"name": "embedding_valid", "ok": bool(validate_embedding(g, emb))}]
    checks += _disk_checks(g, emb, disks)

    stars = {}
    windings = {}
    for v in W:
        hs, star = _stub_star(g, emb, v, disks[v][1])
        stars[v] = (hs, star)
        checks += _star_checks(g, emb, v, hs, star, disks[v][1])
        windings[v] = gauss_winding(star)
        checks.append({"name": f"gauss_winding:{v}", "ok": windings[v] == 1, "value": windings[v]})

    rest = k - 2 * d
    arc = None
    points: list[Point] = []
    if rest:
        arc = _find_arc(g, emb, disks)
        if arc is None:
            raise EmbeddingError("no edge segment clear of the disks; refine the embedding")
        points = _arc_points(arc[1], arc[2], rest)
        checks.append({"name": "arc_outside_disks", "ok": _arc_clear(disks, arc[1], arc[2])})
        checks.append({"name": "arc_points_on_arc", "ok": points == _arc_points(arc[1], arc[2], rest)})

    assignments = [dict(zip(W, [tuple(p) for p in lam.sorted_pairs()])) for lam in lambdas]
    checks += _bijection_checks(W, lambdas, assignments)
    stationary = {2 * d + 1 + i: p for i, p in enumerate(points)}
    star_embs = {v: s for v, (_, s) in stars.items()}
    torus = []
    for j, assign in enumerate(assignments, start=1):
        m = _torus_matrix(star_embs, assign, stationary)
        torus.append(m)
        ident = all(m[a][b] == (1 if a == b else 0) for a in range(d) for b in range(d))
        checks.append({"name": f"torus_realization:{j}", "ok": ident})

    pairing = verify_orthogonal_lemma(list(lambdas))
    checks.append({"name": "pairing", "ok": pairing == 1, "value": pairing})
    return WitnessDiagram(W, list(lambdas), assignments, disks, stars, arc, points, windings, torus, pairing, checks)


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def _check_planar_query(q: TCQuery, emb: PLEmbedding) -> int:
    g = q.graph
    m = len(essential_vertices(g))
    if not g.is_connected():
        raise PreconditionError("graph is disconnected", "Γ connected")
    if m < 2:
        raise PreconditionError(f"m(Γ) = {m}", "m(Γ) ≥ 2")
    if q.k < 4:
        raise PreconditionError(f"k = {q.k}", "k ≥ 4")
    if not is_planar(g):
        raise PreconditionError("graph is not planar", "Γ planar")
    check = validate_embedding(g, emb)
    if not check:
        raise PreconditionError(f"invalid embedding: {check.reason}", "valid planar embedding")
    return m


def _certificate(q: TCQuery, emb: PLEmbedding, m: int) -> TCCertificate:
    g = q.graph
    d = min(q.k // 2, m)
    W = sorted(essential_vertices(g))[:d]
    l1, l2 = orthogonal_pair(d)
    lambdas = [l1, l2] + [l1] * (q.r - 2)
    diagram = build_witness_diagram(g, emb, W, lambdas, q.k)
    return TCCertificate(_assemble(q, g, emb, m, d, diagram))


def _bounds(k: int, r: int, m: int, d: int) -> tuple[int, int | None, bool]:
    lower = r * d
    upper = r * m if k >= m else None
    return lower, upper, upper is not None and lower == upper


def _assemble(q: TCQuery, g: Graph, emb: PLEmbedding, m: int, d: int, diagram: WitnessDiagram) -> dict:
    lower, upper, exact = _bounds(q.k, q.r, m, d)
    checks = list(diagram.checks)
    checks.append({"name": "zeta_factor_count", "ok": lower == q.r * len(diagram.W), "value": q.r * len(diagram.W)})
    checks.append({"name": "bounds_ordered", "ok": upper is None or lower <= upper})
    data = {
        "graph_hash": g.digest(),
        "k": q.k,
        "r": q.r,
        "m": m,
        "d": d,
        "W": diagram.W,
        "lambdas": [lam.sorted_pairs() for lam in diagram.lambdas],
        "bijections": [{v: list(p) for v, p in a.items()} for a in diagram.assignments],
        "pairing_value": diagram.pairing_value,
        "windings": [{"vertex": v, "value": diagram.windings[v]} for v in diagram.W],
        "disks": [{"vertex": v, "center": _pt(c), "radius": _q(rho)} for v, (c, rho) in sorted(diagram.disks.items())],
        "stars": [
            {"vertex": v, "half_edges": [list(h) for h in hs], "arms": [[_pt(p) for p in a] for a in s.arms]}
            for v, (hs, s) in sorted(diagram.stars.items())
        ],
        "arc": None if diagram.arc is None else {"edge": diagram.arc[0], "ends": [_pt(diagram.arc[1]), _pt(diagram.arc[2])]},
        "arc_points": [_pt(p) for p in diagram.arc_points],
        "torus_windings": diagram.torus,
        "embedding": _embedding_json(g, emb),
        "lower": lower,
        "upper": upper,
        "upper_provenance": UPPER_PROVENANCE if upper is not None else None,
        "exact": exact,
        "checks": checks,
    }
    data["valid"] = all(c["ok"] for c in checks)
    return data


def lower_bound(q: TCQuery, emb: PLEmbedding) -> tuple[int, TCCertificate]:
    """r * min(floor(k/2), m(G)) with its witness-diagram certificate."""
    m = _check_planar_query(q, emb)
    cert = _certificate(q, emb, m)
    return cert.lower, cert


def exact_tc(q: TCQuery, emb: PLEmbedding) -> tuple[int | None, TCCertificate]:
    """TC_r = r * m(G) when k >= 2 m(G); otherwise (None, bounds-only certificate)."""
    m = _check_planar_query(q, emb)
    cert = _certificate(q, emb, m)
    if q.k >= 2 * m and cert.exact:
        return cert.upper, cert
    return None, cert


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------


def replay(text: str) -> TCCertificate:
    """Re-run every transcript check using only the serialized choices.

    The graph, embedding, W, lambdas, disks, stars and arc come from the JSON;
    nothing is re-chosen.  The returned certificate has freshly computed checks
    and should serialize byte-identically to the input.
    """
    data = json.loads(text)
    g, emb = _embedding_from_json(data["embedding"])
    k, r, m, d = data["k"], data["r"], data["m"], data["d"]
    W = list(data["W"])
    lambdas = [PairSet.of(2 * d, pairs) for pairs in data["lambdas"]]
    disks = {x["vertex"]: (_unpt(x["center"]), Fraction(x["radius"])) for x in data["disks"]}
    stars = {}
    for x in data["stars"]:
        arms = tuple(tuple(_unpt(p) for p in a) for a in x["arms"])
        stars[x["vertex"]] = ([tuple(h) for h in x["half_edges"]], StarEmbedding(arms[0][0], arms))

    checks = [{"name": "embedding_valid", "ok": bool(validate_embedding(g, emb))}]
    checks += _disk_checks(g, emb, disks)
    windings = {}
    for v in W:
        hs, star = stars[v]
        checks += _star_checks(g, emb, v, hs, star, disks[v][1])
        windings[v] = gauss_winding(star)
        checks.append({"name": f"gauss_winding:{v}", "ok": windings[v] == 1, "value": windings[v]})
    arc = None
    points = [_unpt(p) for p in data["arc_points"]]
    if data["arc"] is not None:
        a = data["arc"]
        arc = (a["edge"], _unpt(a["ends"][0]), _unpt(a["ends"][1]))
        on_edge = any(
            geo.on_segment(arc[1], p, q) and geo.on_segment(arc[2], p, q)
            for p, q in zip(emb.poly[arc[0]], emb.poly[arc[0]][1:])
        )
        checks.append({"name": "arc_outside_disks", "ok": _arc_clear(disks, arc[1], arc[2]) and on_edge})
        checks.append({"name": "arc_points_on_arc", "ok": points == _arc_points(arc[1], arc[2], k - 2 * d)})
    elif points or k != 2 * d:
        checks.append({"name": "arc_points_on_arc", "ok": False})
    assignments = [{v: tuple(p) for v, p in b.items()} for b in data["bijections"]]
    checks += _bijection_checks(W, lambdas, assignments)
    stationary = {2 * d + 1 + i: p for i, p in enumerate(points)}
    star_embs = {v: s for v, (_, s) in stars.items()}
    torus = []
    for j, assign in enumerate(assignments, start=1):
        mat = _torus_matrix(star_embs, assign, stationary)
        torus.append(mat)
        ident = all(mat[a][b] == (1 if a == b else 0) for a in range(d) for b in range(d))
        checks.append({"name": f"torus_realization:{j}", "ok": ident})
    pairing = verify_orthogonal_lemma(lambdas)
    checks.append({"name": "pairing", "ok": pairing == 1, "value": pairing})
    diagram = WitnessDiagram(W, lambdas, assignments, disks, stars, arc, points, windings, torus, pairing, checks)
    q = TCQuery(g, k, r)
    out = _assemble(q, g, emb, m, d, diagram)
    if out["graph_hash"] != data["graph_hash"]:
        out["checks"].append({"name": "graph_hash", "ok": False})
        out["valid"] = False
    return TCCertificate(out)
