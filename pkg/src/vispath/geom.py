"""Exact planar primitives.

All coordinates are ``gmpy2.mpq`` rationals. Nothing in this module rounds:
decimal input text is parsed to the exact rational it denotes, and every
construction (intersection points, ray hits) is returned exactly.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from gmpy2 import mpq

from .errors import ParseError, RayExitsImmediately

Rational = type(mpq())

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$|^[+-]?\d+/\d+$")


def rational(value) -> mpq:
    """Convert ``value`` to an exact rational.

    Strings may be decimals (``"0.25"``, ``"1e-3"``) or fractions (``"1/3"``).
    Floats are converted through their shortest repr, so ``0.1`` becomes
    exactly 1/10 rather than its binary expansion.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        return mpq(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not _NUMBER.match(text):
            raise ParseError(f"not a number: {value!r}")
        return mpq(text)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


class Point(NamedTuple):
    x: mpq
    y: mpq

    def __repr__(self) -> str:
        return f"Point({fmt(self.x)}, {fmt(self.y)})"


def pt(x, y) -> Point:
    return Point(rational(x), rational(y))


def as_point(p) -> Point:
    if isinstance(p, Point) and isinstance(p.x, Rational) and isinstance(p.y, Rational):
        return p
    return pt(p[0], p[1])


def fmt(q: mpq) -> str:
    """Display a rational: exact decimal when it terminates, else 12 significant
    digits followed by ``~``."""
    q = rational(q)
    den = q.denominator
    d = int(den)
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{float(q):.12g}~"
    if den == 1:
        return str(q.numerator)
    digits = max(twos, fives)
    scaled = abs(q.numerator) * (10**digits // int(den))
    sign = "-" if q < 0 else ""
    whole, frac = divmod(int(scaled), 10**digits)
    return f"{sign}{whole}.{str(frac).rjust(digits, '0').rstrip('0')}"


def exact_text(q: mpq) -> str:
    """Lossless text: terminating decimal where possible, else ``p/q``."""
    s = fmt(q)
    return f"{q.numerator}/{q.denominator}" if s.endswith("~") else s


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


def cross(o: Point, a: Point, b: Point) -> mpq:
    """Twice the signed area of triangle oab (positive for a left turn)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def cross_vec(u: Point, v: Point) -> mpq:
    return u[0] * v[1] - u[1] * v[0]


def dot_vec(u: Point, v: Point) -> mpq:
    return u[0] * v[0] + u[1] * v[1]


def sub(a: Point, b: Point) -> Point:
    return Point(a[0] - b[0], a[1] - b[1])


def lerp(a: Point, b: Point, t: mpq) -> Point:
    return Point(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def midpoint(a: Point, b: Point) -> Point:
    return Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def dist2(a: Point, b: Point) -> mpq:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


def orient(p: Point, q: Point, r: Point) -> Orientation:
    c = cross(p, q, r)
    if c > 0:
        return Orientation.COUNTERCLOCKWISE
    if c < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """Closed-segment membership."""
    if cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_param(p: Point, a: Point, b: Point) -> mpq:
    """Parameter of ``p`` along a->b, assuming p is on the line."""
    dx = b[0] - a[0]
    if dx != 0:
        return (p[0] - a[0]) / dx
    return (p[1] - a[1]) / (b[1] - a[1])


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    @property
    def degenerate(self) -> bool:
        return self.a == self.b


class IntersectionKind(enum.Enum):
    NONE = "NONE"
    POINT = "POINT"
    OVERLAP = "OVERLAP"


@dataclass(frozen=True)
class Intersection:
    kind: IntersectionKind
    point: Point | None = None
    segment: Segment | None = None


NO_INTERSECTION = Intersection(IntersectionKind.NONE)


def _point_hit(p: Point) -> Intersection:
    return Intersection(IntersectionKind.POINT, point=p)


def segment_intersection(s1, s2) -> Intersection:
    """Closed-set intersection of two segments.

    Touching endpoints count as a POINT; collinear overlaps return the shared
    sub-segment with endpoints in lexicographic order, so the result does not
    depend on argument order.
    """
    a, b = (s1.a, s1.b) if isinstance(s1, Segment) else s1
    c, d = (s2.a, s2.b) if isinstance(s2, Segment) else s2
    if a == b:
        return _point_hit(a) if on_segment(a, c, d) else NO_INTERSECTION
    if c == d:
        return _point_hit(c) if on_segment(c, a, b) else NO_INTERSECTION
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    if d1 == 0 and d2 == 0:
        lo1, hi1 = sorted((a, b))
        lo2, hi2 = sorted((c, d))
        lo = max(lo1, lo2)
        hi = min(hi1, hi2)
        if lo > hi:
            return NO_INTERSECTION
        if lo == hi:
            return _point_hit(lo)
        return Intersection(IntersectionKind.OVERLAP, segment=Segment(lo, hi))
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return NO_INTERSECTION
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return NO_INTERSECTION
    if d1 == 0:
        return _point_hit(c)
    if d2 == 0:
        return _point_hit(d)
    if d3 == 0:
        return _point_hit(a)
    if d4 == 0:
        return _point_hit(b)
    return _point_hit(lerp(a, b, d3 / (d3 - d4)))


def proper_crossing(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the segments cross at a single point interior to both."""
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    if not ((d1 > 0 > d2) or (d1 < 0 < d2)):
        return False
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    return (d3 > 0 > d4) or (d3 < 0 < d4)


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point | None:
    """Intersection of the infinite lines ab and cd, or None if parallel."""
    den = cross_vec(sub(b, a), sub(d, c))
    if den == 0:
        return None
    t = cross_vec(sub(c, a), sub(d, c)) / den
    return lerp(a, b, t)


# ---------------------------------------------------------------------------
# polygon-level predicates (operate on any vertex sequence)


class Location(enum.Enum):
    INSIDE = "INSIDE"
    BOUNDARY = "BOUNDARY"
    OUTSIDE = "OUTSIDE"


def _vertices(poly) -> Sequence[Point]:
    return poly.vertices if hasattr(poly, "vertices") else poly


def signed_area2(vertices: Sequence[Point]) -> mpq:
    """Twice the signed area; positive for counterclockwise order."""
    total = mpq(0)
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i - 1]
        x1, y1 = vertices[i]
        total += x0 * y1 - x1 * y0
    return total


def point_in_polygon(poly, p: Point) -> Location:
    """Exact closed classification of ``p`` against a simple polygon.

    Works for either vertex orientation.
    """
    verts = _vertices(poly)
    px, py = p
    inside = False
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i - 1]
        bx, by = verts[i]
        if (ay > py) != (by > py):
            c = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
            if c == 0:
                return Location.BOUNDARY
            # crossing is to the right of p
            if (c > 0) == (by > ay):
                inside = not inside
        elif ay == py == by:
            if min(ax, bx) <= px <= max(ax, bx):
                return Location.BOUNDARY
        elif (ay == py and ax == px) or (by == py and bx == px):
            return Location.BOUNDARY
    return Location.INSIDE if inside else Location.OUTSIDE


def in_open_cw_wedge(start: Point, end: Point, d: Point) -> bool:
    """Is direction ``d`` strictly inside the wedge swept clockwise from
    ``start`` to ``end``?"""
    c = cross_vec(start, end)
    if c < 0:
        return cross_vec(start, d) < 0 and cross_vec(d, end) < 0
    if c > 0:
        return not (cross_vec(start, d) >= 0 and cross_vec(d, end) >= 0)
    if dot_vec(start, end) > 0:
        return cross_vec(start, d) != 0 or dot_vec(start, d) < 0
    return cross_vec(start, d) < 0


def enters_interior(vertices: Sequence[Point], p: Point, d: Point) -> bool:
    """For ``p`` in a clockwise polygon, does the open ray p + t*d (small t>0)
    lie in the interior?"""
    n = len(vertices)
    for i in range(n):
        v = vertices[i]
        if v == p:
            prev = vertices[i - 1]
            nxt = vertices[(i + 1) % n]
            return in_open_cw_wedge(sub(nxt, v), sub(prev, v), d)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        if on_segment(p, a, b):
            return cross_vec(sub(b, a), d) < 0
    return point_in_polygon(vertices, p) is Location.INSIDE


@dataclass(frozen=True)
class RayHit:
    point: Point
    t: mpq
    edges: tuple[int, ...]
    vertex: int | None = None


def ray_shoot(poly, origin: Point, direction: Point) -> RayHit:
    """First boundary point strictly beyond ``origin`` along ``direction``.

    The polygon must be clockwise. Raises RayExitsImmediately when the open
    ray does not start into the interior. A hit on a vertex reports both
    incident edge indices (edge i runs from vertex i to vertex i+1).
    """
    verts = _vertices(poly)
    origin = as_point(origin)
    direction = as_point(direction)
    if direction == (0, 0):
        raise ValueError("zero direction")
    if not enters_interior(verts, origin, direction):
        raise RayExitsImmediately(f"ray from {origin} along {direction} leaves the polygon")
    ox, oy = origin
    dx, dy = direction
    best = None
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        den = dx * ey - dy * ex
        wx, wy = ax - ox, ay - oy
        if den != 0:
            t = (wx * ey - wy * ex) / den
            if t <= 0 or (best is not None and t >= best):
                continue
            s = (wx * dy - wy * dx) / den
            if 0 <= s <= 1:
                best = t
        elif wx * dy - wy * dx == 0:
            dd = dx * dx + dy * dy
            for t in ((wx * dx + wy * dy) / dd, ((bx - ox) * dx + (by - oy) * dy) / dd):
                if t > 0 and (best is None or t < best):
                    best = t
    if best is None:
        raise RayExitsImmediately("ray never meets the boundary (polygon not closed?)")
    hit = Point(ox + dx * best, oy + dy * best)
    edges = tuple(i for i in range(n) if on_segment(hit, verts[i], verts[(i + 1) % n]))
    vertex = next((i for i in range(n) if verts[i] == hit), None)
    return RayHit(hit, best, edges, vertex)
