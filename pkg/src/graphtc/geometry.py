"""Exact rational plane geometry: orientation, segment predicates, polylines, winding."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]

# plain ints mix exactly with Fractions and keep integer-only inputs fast
ORIGIN: Point = (0, 0)


def rational(value) -> Fraction:
    """Parse an int, Fraction, or ``p/q`` / decimal string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return Fraction(value)


def point(x, y) -> Point:
    return (rational(x), rational(y))


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, s) -> Point:
    return (a[0] * s, a[1] * s)


def cross(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def norm2(u: Point) -> Fraction:
    return dot(u, u)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c (+1 counterclockwise, -1 clockwise, 0 collinear)."""
    value = cross(sub(b, a), sub(c, a))
    return (value > 0) - (value < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segment_intersection(a: Point, b: Point, c: Point, d: Point):
    """Intersection of closed segments ab and cd.

    Returns ``None`` (disjoint), a single Point, or a tuple ``(p, q)`` with p != q
    when the segments overlap collinearly along a sub-segment.
    """
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if d1 == d2 == d3 == d4 == 0:
        # collinear: project on the dominant axis
        axis = 0 if a[0] != b[0] or c[0] != d[0] else 1
        lo1, hi1 = sorted((a, b), key=lambda p: (p[axis], p[1 - axis]))
        lo2, hi2 = sorted((c, d), key=lambda p: (p[axis], p[1 - axis]))
        lo = max(lo1, lo2, key=lambda p: (p[axis], p[1 - axis]))
        hi = min(hi1, hi2, key=lambda p: (p[axis], p[1 - axis]))
        key_lo = (lo[axis], lo[1 - axis])
        key_hi = (hi[axis], hi[1 - axis])
        if key_lo > key_hi:
            return None
        if lo == hi:
            return lo
        return (lo, hi)
    if d1 * d2 > 0 or d3 * d4 > 0:
        return None
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    if denom == 0:
        # collinear-but-not-overlapping handled above; parallel disjoint here
        return None
    t = cross(sub(c, a), s) / denom
    return add(a, scale(r, t))


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    """Squared Euclidean distance from p to the closed segment ab."""
    ab = sub(b, a)
    denom = norm2(ab)
    if denom == 0:
        return norm2(sub(p, a))
    t = dot(sub(p, a), ab) / denom
    t = min(max(t, Fraction(0)), Fraction(1))
    return norm2(sub(p, add(a, scale(ab, t))))


def segment_segment_dist2(a: Point, b: Point, c: Point, d: Point) -> Fraction:
    if segment_intersection(a, b, c, d) is not None:
        return Fraction(0)
    return min(
        point_segment_dist2(a, c, d),
        point_segment_dist2(b, c, d),
        point_segment_dist2(c, a, b),
        point_segment_dist2(d, a, b),
    )


def polyline_point(pts: Sequence[Point], s) -> Point:
    """Point at parameter s in [0, 1], each segment receiving an equal share."""
    s = rational(s)
    n = len(pts) - 1
    if s <= 0:
        return pts[0]
    if s >= 1:
        return pts[-1]
    x = s * n
    i = int(x)  # floor for positive Fractions
    frac = x - i
    if frac == 0:
        return pts[i]
    return add(pts[i], scale(sub(pts[i + 1], pts[i]), frac))


def polyline_slice(pts: Sequence[Point], s0, s1) -> list[Point]:
    """Sub-polyline between parameters s0 < s1, keeping interior bend points."""
    s0, s1 = rational(s0), rational(s1)
    n = len(pts) - 1
    out = [polyline_point(pts, s0)]
    for i in range(1, n):
        if s0 < Fraction(i, n) < s1:
            out.append(pts[i])
    out.append(polyline_point(pts, s1))
    return out


def polyline_breakpoints(pts: Sequence[Point]) -> list[Fraction]:
    n = len(pts) - 1
    return [Fraction(i, n) for i in range(n + 1)]


def crossing_count(a: Point, b: Point, center: Point = ORIGIN) -> int:
    """Signed crossings of segment a -> b over the ray from ``center`` towards +x.

    Half-open convention (a vertex on the ray counts as above), so summing over
    the edges of a closed polygon avoiding ``center`` gives its winding number.
    """
    if a[1] - center[1] <= 0 < b[1] - center[1]:
        if orient(a, b, center) > 0:
            return 1
    elif b[1] - center[1] <= 0 < a[1] - center[1]:
        if orient(a, b, center) < 0:
            return -1
    return 0


def winding_number(poly: Iterable[Point], center: Point = ORIGIN) -> int:
    """Exact winding number of a closed polygon (first point need not repeat)."""
    pts = list(poly)
    if len(pts) < 2:
        return 0
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    for a, b in zip(pts, pts[1:]):
        if on_segment(center, a, b):
            raise ValueError("polygon passes through the winding center")
    return sum(crossing_count(a, b, center) for a, b in zip(pts, pts[1:]))


def direction_key(v: Point):
    """Sort key giving the counterclockwise angle order of a nonzero vector, from +x."""
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    return half, _AngleCmp(v)


class _AngleCmp:
    __slots__ = ("v",)

    def __init__(self, v: Point):
        self.v = v

    def __lt__(self, other: "_AngleCmp") -> bool:
        return cross(self.v, other.v) > 0

    def __eq__(self, other) -> bool:
        return cross(self.v, other.v) == 0 and dot(self.v, other.v) > 0


def ccw_sorted(vectors: Sequence[Point]) -> list[int]:
    """Indices of ``vectors`` in counterclockwise angular order starting from +x."""
    return sorted(range(len(vectors)), key=lambda i: direction_key(vectors[i]))


def cyclic_sign(order: Sequence[int]) -> int:
    """+1 if the cyclic sequence of three distinct labels is a rotation of (0, 1, 2)."""
    rotations = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
    return 1 if tuple(order) in rotations else -1


def shrink_ratio(length2: Fraction, radius2: Fraction) -> Fraction:
    """Largest 2**-n with (2**-n)**2 * length2 < radius2, for positive arguments."""
    s = Fraction(1)
    while s * s * length2 >= radius2:
        s /= 2
    return s


def rational_below_sqrt(x2: Fraction) -> Fraction:
    """A positive rational rho with rho**2 < x2 (x2 > 0), within a factor 2 of sqrt(x2)."""
    rho = Fraction(1)
    while rho * rho >= x2:
        rho /= 2
    while (2 * rho) * (2 * rho) < x2:
        rho *= 2
    return rho
