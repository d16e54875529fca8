"""Validated simple polygons in clockwise order."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import is_square, isqrt, mpq

from .errors import Degenerate, NotOnBoundary, NotSimple, TooFewVertices
from .geom import (
    Location,
    Point,
    as_point,
    cross,
    dist2,
    on_segment,
    point_in_polygon,
    segment_intersection,
    segment_param,
    signed_area2,
    IntersectionKind,
)

log = logging.getLogger(__name__)


def exact_sqrt(q: mpq) -> mpq | None:
    """sqrt(q) if it is rational, else None."""
    num, den = q.numerator, q.denominator
    if is_square(num) and is_square(den):
        return mpq(isqrt(num), isqrt(den))
    return None


@dataclass(frozen=True)
class Polygon:
    """A simple polygon with vertices in clockwise order.

    Edge ``i`` runs from ``vertices[i]`` to ``vertices[i + 1]`` (cyclically).
    Construct through :func:`validate` unless the vertices are known good.
    """

    vertices: tuple[Point, ...]
    was_reversed: bool = field(default=False, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        v = self.vertices
        return v[i % len(v)], v[(i + 1) % len(v)]

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        return tuple(self.edge(i) for i in range(self.n))

    @cached_property
    def reflex(self) -> tuple[bool, ...]:
        v = self.vertices
        n = len(v)
        # clockwise boundary: a left turn means the interior angle exceeds pi
        return tuple(cross(v[i - 1], v[i], v[(i + 1) % n]) > 0 for i in range(n))

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.vertices)}

    @cached_property
    def area(self) -> mpq:
        return -signed_area2(self.vertices) / 2

    @cached_property
    def edge_lengths(self) -> tuple[float, ...]:
        return tuple(math.sqrt(dist2(a, b)) for a, b in self.edges)

    @cached_property
    def perimeter(self) -> float:
        return math.fsum(self.edge_lengths)

    @cached_property
    def bbox(self) -> tuple[mpq, mpq, mpq, mpq]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def locate(self, p: Point) -> Location:
        return point_in_polygon(self.vertices, p)


def validate(points: Iterable) -> Polygon:
    """Check simplicity and orientation; return a clockwise Polygon.

    Counterclockwise input is reversed (keeping vertex 0 first) and logged.
    """
    pts = [as_point(p) for p in points]
    n = len(pts)
    if n < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {n}")
    if len(set(pts)) != n:
        raise Degenerate("repeated vertex")
    for i in range(n):
        if cross(pts[i - 1], pts[i], pts[(i + 1) % n]) == 0:
            raise Degenerate(f"vertices {(i - 1) % n}, {i}, {(i + 1) % n} are collinear")
    check_simple(pts)
    area2 = signed_area2(pts)
    if area2 > 0:
        log.info("input polygon is counterclockwise; reversing to clockwise")
        return Polygon(tuple([pts[0]] + pts[:0:-1]), was_reversed=True)
    return Polygon(tuple(pts))


def check_simple(pts: Sequence[Point]) -> None:
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = pts[j], pts[(j + 1) % n]
            hit = segment_intersection((a, b), (c, d))
            if hit.kind is IntersectionKind.NONE:
                continue
            if j == i + 1:
                if hit.kind is IntersectionKind.POINT and hit.point == b:
                    continue
            elif i == 0 and j == n - 1:
                if hit.kind is IntersectionKind.POINT and hit.point == a:
                    continue
            raise NotSimple(f"edges {i} and {j} intersect")


def reflex_vertices(poly: Polygon) -> list[int]:
    return [i for i, r in enumerate(poly.reflex) if r]


@dataclass(frozen=True, order=True)
class BoundaryCoord:
    """Position on the boundary as (edge index, fraction along the edge).

    The pair orders exactly like clockwise arc length from vertex 0, which is
    irrational in general; :meth:`arc_length` recovers it.
    """

    edge: int
    frac: mpq

    def point(self, poly: Polygon) -> Point:
        a, b = poly.edge(self.edge)
        return Point(a.x + (b.x - a.x) * self.frac, a.y + (b.y - a.y) * self.frac)

    def arc_length(self, poly: Polygon):
        """Exact rational when every edge involved has rational length, else float."""
        exact = []
        for i in range(self.edge + (1 if self.frac else 0)):
            exact.append(exact_sqrt(dist2(*poly.edge(i))))
        if all(e is not None for e in exact):
            total = sum(exact[: self.edge], mpq(0))
            if self.frac:
                total += exact[self.edge] * self.frac
            return total
        return math.fsum(poly.edge_lengths[: self.edge]) + float(self.frac) * poly.edge_lengths[self.edge]


def boundary_coord(poly: Polygon, p: Point) -> BoundaryCoord:
    p = as_point(p)
    i = poly.index.get(p)
    if i is not None:
        return BoundaryCoord(i, mpq(0))
    for i, (a, b) in enumerate(poly.edges):
        if on_segment(p, a, b):
            return BoundaryCoord(i, segment_param(p, a, b))
    raise NotOnBoundary(f"{p} is not on the polygon boundary")


def boundary_point(poly: Polygon, bc: BoundaryCoord) -> Point:
    return bc.point(poly)


@dataclass(frozen=True)
class Kernel:
    """Convex region of points that see the whole polygon (closed semantics).

    ``region`` is a convex vertex list; it may collapse to a segment or a
    single point, and is empty iff the polygon is not star-shaped.
    """

    region: tuple[Point, ...]

    @property
    def empty(self) -> bool:
        return not self.region

    def contains(self, p: Point) -> bool:
        r = self.region
        if not r:
            return False
        if len(r) == 1:
            return r[0] == p
        if len(r) == 2:
            return on_segment(p, r[0], r[1])
        return point_in_polygon(r, p) is not Location.OUTSIDE


def _clip(region: list[Point], a: Point, b: Point) -> list[Point]:
    # keep the closed right side of a->b (interior side of a clockwise edge)
    out: list[Point] = []
    m = len(region)
    for i in range(m):
        p = region[i]
        q = region[(i + 1) % m]
        cp = cross(a, b, p)
        cq = cross(a, b, q)
        if cp <= 0:
            out.append(p)
        if (cp < 0 < cq) or (cq < 0 < cp):
            t = cp / (cp - cq)
            out.append(Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t))
    dedup: list[Point] = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def kernel(poly: Polygon) -> Kernel:
    """Intersect the inner half-planes of all edges by successive clipping."""
    x0, y0, x1, y1 = poly.bbox
    region = [Point(x0, y0), Point(x0, y1), Point(x1, y1), Point(x1, y0)]
    for a, b in poly.edges:
        region = _clip(region, a, b)
        if not region:
            break
    # drop collinear interior points of a collapsed region
    if len(region) > 2:
        keep = [region[i] for i in range(len(region))
                if cross(region[i - 1], region[i], region[(i + 1) % len(region)]) != 0]
        if len(keep) < 3:
            pts = sorted(set(region))
            keep = [pts[0], pts[-1]]
        region = keep
    return Kernel(tuple(region))


def is_star_shaped(poly: Polygon) -> bool:
    return not kernel(poly).empty
