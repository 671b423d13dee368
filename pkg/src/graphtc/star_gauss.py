"""The star S3, its hexagonal loop in Conf_2(S3), and the Gauss-map degree of planar star embeddings.

Plane orientation: counterclockwise is positive, and the canonical cyclic order
of the star's edges is (1, 2, 3) counterclockwise.  With these conventions an
orientation-preserving embedding has Gauss-map degree +1 along the loop.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import geometry as geo
from .errors import EmbeddingError, ResourceLimitError
from .geometry import Point
from .graph_core import Graph, PLEmbedding, validate_embedding


class StarPoint(NamedTuple):
    """A point of S3: ``edge`` in {1, 2, 3} with parameter ``t`` in (0, 1], or the center (edge None)."""

    edge: int | None
    t: Fraction

    @classmethod
    def make(cls, edge: int, t) -> "StarPoint":
        t = Fraction(t)
        return CENTER if t == 0 else cls(edge, t)

    @property
    def is_center(self) -> bool:
        return self.edge is None

    def coordinates(self) -> tuple[Fraction, Fraction, Fraction]:
        out = [Fraction(0)] * 3
        if self.edge is not None:
            out[self.edge - 1] = self.t
        return tuple(out)


CENTER = StarPoint(None, Fraction(0))


@dataclass(frozen=True)
class HexLoop:
    """Six segments of (path of particle 1, path of particle 2); +i is e_i, -i its reverse."""

    segments: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.segments) != 6:
            raise ValueError("the loop has six segments")
        ends = [self._ends(s) for s in self.segments]
        for (_, s_end), (t_start, _) in zip(ends, ends[1:] + ends[:1]):
            if s_end != t_start:
                raise ValueError("segments do not concatenate into a closed loop")
        for a, b in self.segments:
            if abs(a) == abs(b):
                raise ValueError("the two particles share an edge")

    @staticmethod
    def _path_point(p: int, u) -> StarPoint:
        return StarPoint.make(abs(p), u if p > 0 else 1 - Fraction(u))

    def _ends(self, seg):
        start = tuple(self._path_point(p, 0) for p in seg)
        end = tuple(self._path_point(p, 1) for p in seg)
        return start, end


EPS = HexLoop(((1, -2), (-1, 3), (2, -3), (-2, 1), (3, -1), (-3, 2)))


def eps_eval(t) -> tuple[StarPoint, StarPoint]:
    """Configuration of the two particles at time t in [0, 1] (six equal constant-speed pieces)."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    s = min(int(t * 6), 5)
    u = t * 6 - s
    a, b = EPS.segments[s]
    return HexLoop._path_point(a, u), HexLoop._path_point(b, u)


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StarEmbedding:
    """Center plus three arm polylines, each starting at the center."""

    center: Point
    arms: tuple[tuple[Point, ...], tuple[Point, ...], tuple[Point, ...]]

    @classmethod
    def build(cls, center, arms) -> "StarEmbedding":
        c = geo.point(*center)
        out = []
        for arm in arms:
            pts = tuple(geo.point(*p) for p in arm)
            if pts[0] != c:
                pts = (c,) + pts
            out.append(pts)
        return cls(c, tuple(out))

    @classmethod
    def from_directions(cls, center, leaves) -> "StarEmbedding":
        return cls.build(center, [[center, leaf] for leaf in leaves])

    def locate(self, p: StarPoint) -> Point:
        if p.is_center:
            return self.center
        return geo.polyline_point(self.arms[p.edge - 1], p.t)

    def as_graph(self) -> tuple[Graph, PLEmbedding]:
        g = Graph.from_edges([(f"e{i}", "c", f"l{i}") for i in (1, 2, 3)], ["c"])
        pos = {"c": self.center}
        for i, arm in enumerate(self.arms, start=1):
            pos[f"l{i}"] = arm[-1]
        return g, PLEmbedding.build(g, pos, {f"e{i}": arm for i, arm in enumerate(self.arms, start=1)})

    def is_valid(self) -> bool:
        return bool(validate_embedding(*self.as_graph()))

    @property
    def straight(self) -> bool:
        return all(len(a) == 2 for a in self.arms)

    def mirror(self) -> "StarEmbedding":
        f = lambda p: (-p[0], p[1])
        return StarEmbedding(f(self.center), tuple(tuple(map(f, a)) for a in self.arms))

    def transform(self, rotation: tuple[Fraction, Fraction] = (Fraction(1), Fraction(0)), scale=1, shift=(0, 0)) -> "StarEmbedding":
        """Apply x -> scale * R x + shift with R the rotation (cos, sin), cos**2 + sin**2 = 1."""
        c, s = map(Fraction, rotation)
        if c * c + s * s != 1:
            raise ValueError("rotation must be a unit vector")
        k = Fraction(scale)
        dx, dy = map(Fraction, shift)
        f = lambda p: (k * (c * p[0] - s * p[1]) + dx, k * (s * p[0] + c * p[1]) + dy)
        return StarEmbedding(f(self.center), tuple(tuple(map(f, a)) for a in self.arms))

    def subdivide_arms(self, times: int = 1) -> "StarEmbedding":
        """Insert midpoints into every arm segment (same image, finer polyline)."""
        arms = []
        for arm in self.arms:
            pts = list(arm)
            for _ in range(times):
                fine = [pts[0]]
                for a, b in zip(pts, pts[1:]):
                    fine += [geo.scale(geo.add(a, b), Fraction(1, 2)), b]
                pts = fine
            arms.append(tuple(pts))
        return StarEmbedding(self.center, tuple(arms))


PRESERVING = "preserving"
REVERSING = "reversing"


def orientation_class(emb: StarEmbedding) -> str:
    """Compare the counterclockwise order of the initial arm directions with (1, 2, 3)."""
    dirs = [geo.sub(a[1], a[0]) for a in emb.arms]
    for i in range(3):
        for j in range(i + 1, 3):
            if geo.cross(dirs[i], dirs[j]) == 0 and geo.dot(dirs[i], dirs[j]) > 0:
                raise EmbeddingError(f"arms {i + 1} and {j + 1} leave the center in the same direction")
    order = geo.ccw_sorted(dirs)
    return PRESERVING if geo.cyclic_sign(order) > 0 else REVERSING


def is_standard(emb: StarEmbedding) -> bool:
    if not emb.straight:
        raise EmbeddingError("standardness is defined for straight-line stars")
    leaves = [geo.sub(a[-1], emb.center) for a in emb.arms]
    independent = all(geo.cross(leaves[i], leaves[j]) != 0 for i in range(3) for j in range(i + 1, 3))
    return independent and orientation_class(emb) == PRESERVING


def _segment_breaks(emb: StarEmbedding, seg: tuple[int, int]) -> list[Fraction]:
    breaks = set()
    for p in seg:
        n = len(emb.arms[abs(p) - 1]) - 1
        for j in range(n + 1):
            breaks.add(Fraction(j, n) if p > 0 else 1 - Fraction(j, n))
    return sorted(breaks)


def loop_samples(emb: StarEmbedding, loop: HexLoop = EPS) -> list[tuple[Point, Point]]:
    """Particle positions at every breakpoint of the loop (last point omitted, it equals the first).

    Between consecutive samples both particles move linearly.
    """
    out: list[tuple[Point, Point]] = []
    for seg in loop.segments:
        a, b = seg
        for u in _segment_breaks(emb, seg)[:-1]:
            out.append((emb.locate(HexLoop._path_point(a, u)), emb.locate(HexLoop._path_point(b, u))))
    return out


def difference_polygon(emb: StarEmbedding, loop: HexLoop = EPS) -> list[Point]:
    """Vertices of the closed PL curve t -> emb(x2(t)) - emb(x1(t)) along the loop."""
    return [geo.sub(x2, x1) for x1, x2 in loop_samples(emb, loop)]


def gauss_winding(emb: StarEmbedding, max_steps: int = 100_000) -> int:
    """Degree of the Gauss map along the hexagonal loop, by angle accumulation.

    Steps are bisected until consecutive difference vectors make an acute angle,
    so each step's angle is below pi/2 and the accumulated total is an exact
    multiple of 2 pi up to float rounding far smaller than pi.
    """
    poly = difference_polygon(emb)
    poly.append(poly[0])
    for a, b in zip(poly, poly[1:]):
        if geo.on_segment(geo.ORIGIN, a, b):
            raise EmbeddingError("the particles collide: arms are not disjoint")
    total = 0.0
    steps = 0
    stack = [(a, b) for a, b in zip(poly, poly[1:])][::-1]
    while stack:
        a, b = stack.pop()
        if geo.dot(a, b) <= 0:
            m = geo.scale(geo.add(a, b), Fraction(1, 2))
            stack.append((m, b))
            stack.append((a, m))
            steps += 1
            if steps > max_steps:
                raise ResourceLimitError("winding refinement exceeded its step budget")
            continue
        total += math.atan2(float(geo.cross(a, b)), float(geo.dot(a, b)))
    turns = total / (2 * math.pi)
    w = round(turns)
    if abs(turns - w) > 1e-6:
        raise ArithmeticError(f"accumulated angle {total} is not a multiple of 2 pi")
    return int(w)


def exact_gauss_winding(emb: StarEmbedding) -> int:
    """Same degree by exact signed ray crossings of the difference polygon."""
    return geo.winding_number(difference_polygon(emb))


STANDARD = StarEmbedding.from_directions(
    (0, 0), [(0, 1), (Fraction(-866, 1000), Fraction(-1, 2)), (Fraction(866, 1000), Fraction(-1, 2))]
)


def random_star_embedding(rng: random.Random, max_bends: int = 3, preserving: bool = True) -> StarEmbedding:
    """Random bent star: each arm is a polyline with increasing radius inside its own 100-degree wedge."""
    while True:
        base = rng.uniform(0, 360)
        arms = []
        for i in range(3):
            mid = base + 120 * i
            r = 0.0
            pts = [(0, 0)]
            for _ in range(rng.randint(1, max_bends + 1)):
                r += rng.uniform(0.3, 1.5)
                theta = math.radians(mid + rng.uniform(-50, 50))
                pts.append((_q(r * math.cos(theta)), _q(r * math.sin(theta))))
            arms.append(pts)
        cx, cy = _q(rng.uniform(-5, 5)), _q(rng.uniform(-5, 5))
        emb = StarEmbedding.build((0, 0), arms).transform(shift=(cx, cy))
        if not emb.is_valid():
            continue
        if (orientation_class(emb) == PRESERVING) != preserving:
            emb = emb.mirror()
        return emb


def _q(x: float) -> Fraction:
    return Fraction(x).limit_denominator(1000)


# ---------------------------------------------------------------------------
# the loop inside a subdivided graph
# ---------------------------------------------------------------------------


def eps_motion(arm_paths: Sequence[Sequence[str]]) -> tuple[list[str], list[tuple[int, list[str]]]]:
    """Discrete hexagonal loop for a star with arms given as vertex paths from the hub.

    Returns the start configuration (particle 1 at the hub, particle 2 at the
    end of arm 2) and a list of ``(particle, vertex path)`` legs.  In each
    segment the particle leaving the hub moves first.
    """
    hub = arm_paths[0][0]
    if any(p[0] != hub for p in arm_paths) or len(arm_paths) != 3:
        raise ValueError("need three arms starting at a common hub")
    legs: list[tuple[int, list[str]]] = []
    for a, b in EPS.segments:
        moves = []
        for particle, p in ((0, a), (1, b)):
            path = list(arm_paths[abs(p) - 1])
            moves.append((p > 0, particle, path if p > 0 else path[::-1]))
        moves.sort(key=lambda m: not m[0])  # outward move first
        legs.extend((particle, path) for _, particle, path in moves)
    return [hub, arm_paths[1][-1]], legs


def standard_family() -> list[StarEmbedding]:
    """Three straight orientation-preserving stars: the canonical one, a rotated and scaled copy, and an axis star."""
    return [
        STANDARD,
        STANDARD.transform(rotation=(Fraction(3, 5), Fraction(4, 5)), scale=2, shift=(1, -3)),
        StarEmbedding.from_directions((0, 0), [(1, 0), (-1, 1), (0, -1)]),
    ]


@dataclass
class DegreeReport:
    rows: list[dict]

    @property
    def ok(self) -> bool:
        return all(r["winding"] == 1 and r["mirror_winding"] == -1 for r in self.rows)


def star_degree_suite(rng: random.Random, randomized: int = 7) -> DegreeReport:
    """Gauss-map degree of standard and random bent stars and of their mirror images."""
    family = [("standard", e) for e in standard_family()]
    family += [("random", random_star_embedding(rng)) for _ in range(randomized)]
    rows = []
    for kind, emb in family:
        rows.append({
            "kind": kind,
            "orientation": orientation_class(emb),
            "winding": gauss_winding(emb),
            "mirror_winding": gauss_winding(emb.mirror()),
        })
    return DegreeReport(rows)
