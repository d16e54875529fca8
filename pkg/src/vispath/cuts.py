"""Cuts, pockets and the essential (nonredundant) cut filter."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, replace
from functools import lru_cache

from gmpy2 import mpq

from .geom import Location, Point, point_in_polygon, ray_shoot, sub
from .polygon import BoundaryCoord, Polygon, boundary_coord, reflex_vertices


class Essentiality(enum.Enum):
    UNKNOWN = "UNKNOWN"
    ESSENTIAL = "ESSENTIAL"
    REDUNDANT = "REDUNDANT"


def _cyc_key(bc: BoundaryCoord, origin: BoundaryCoord) -> tuple:
    return (0, bc) if bc >= origin else (1, bc)


@dataclass(frozen=True)
class Pocket:
    """Boundary arc running clockwise from ``start`` to ``end``, closed off by
    the cut chord. ``region`` lists the arc's points in clockwise order."""

    start: BoundaryCoord
    end: BoundaryCoord
    region: tuple[Point, ...]

    def arc_contains(self, bc: BoundaryCoord) -> bool:
        return _cyc_key(bc, self.start) <= _cyc_key(self.end, self.start)

    def contains_point(self, p: Point) -> bool:
        return point_in_polygon(self.region, p) is not Location.OUTSIDE


@dataclass(frozen=True)
class Cut:
    """Cut generated by edge u-v at reflex vertex v, ending at boundary hit w."""

    v: Point
    w: Point
    u: Point
    v_index: int
    u_index: int
    w_edges: tuple[int, ...]
    pocket: Pocket
    essential: Essentiality = Essentiality.UNKNOWN

    @property
    def direction(self) -> tuple[Point, Point]:
        """(tail, head) oriented so the pocket lies to the right."""
        return self.pocket.region[-1], self.pocket.region[0]

    @property
    def segment(self) -> tuple[Point, Point]:
        return self.v, self.w

    @property
    def key(self) -> tuple[int, int]:
        return self.v_index, self.u_index

    @property
    def midpoint(self) -> Point:
        return Point((self.v.x + self.w.x) / 2, (self.v.y + self.w.y) / 2)

    def __repr__(self) -> str:
        return f"Cut({self.v}->{self.w}, gen u={self.u}, {self.essential.value})"


def arc_points(poly: Polygon, start: BoundaryCoord, end: BoundaryCoord) -> tuple[Point, ...]:
    """Points of the clockwise boundary arc start..end: both ends plus every
    vertex strictly between them."""
    n = poly.n
    pts = [start.point(poly)]
    k = (start.edge + 1) % n
    end_key = _cyc_key(end, start)
    for _ in range(n):
        bc = BoundaryCoord(k, mpq(0))
        if _cyc_key(bc, start) >= end_key or bc == start:
            break
        pts.append(poly.vertices[k])
        k = (k + 1) % n
    last = end.point(poly)
    if pts[-1] != last:
        pts.append(last)
    return tuple(pts)


def make_cut(poly: Polygon, v_index: int, u_index: int) -> Cut:
    verts = poly.vertices
    v = verts[v_index]
    u = verts[u_index]
    hit = ray_shoot(poly, v, sub(v, u))
    w = hit.point
    bv = BoundaryCoord(v_index, mpq(0))
    bw = boundary_coord(poly, w)
    if u_index == (v_index - 1) % poly.n:
        start, end = bw, bv
    else:
        start, end = bv, bw
    pocket = Pocket(start, end, arc_points(poly, start, end))
    return Cut(v, w, u, v_index, u_index, hit.edges, pocket)


@lru_cache(maxsize=256)
def generate_cuts(poly: Polygon) -> tuple[Cut, ...]:
    """Two cuts per reflex vertex: extend each incident edge beyond it."""
    out = []
    n = poly.n
    for i in reflex_vertices(poly):
        out.append(make_cut(poly, i, (i - 1) % n))
        out.append(make_cut(poly, i, (i + 1) % n))
    return tuple(out)


def pocket_contains(a: Pocket, b: Pocket) -> bool:
    """True iff pocket ``b`` is strictly inside pocket ``a``.

    Pockets are bounded by one boundary arc and one chord, so region
    containment reduces to arc containment; equal arcs mean equal chords.
    """
    if (a.start, a.end) == (b.start, b.end):
        return False
    if not a.arc_contains(b.start) or not a.arc_contains(b.end):
        return False
    return _cyc_key(b.start, a.start) <= _cyc_key(b.end, a.start)


def _order_key(poly: Polygon, cut: Cut):
    return (BoundaryCoord(cut.v_index, mpq(0)), boundary_coord(poly, cut.w))


@lru_cache(maxsize=256)
def classify_cuts(poly: Polygon) -> tuple[Cut, ...]:
    """All cuts, each flagged ESSENTIAL or REDUNDANT.

    O(k^2) pairwise filter: a cut is redundant iff its pocket strictly
    contains some other cut's pocket. Identical pockets do not make each
    other redundant.
    """
    cuts = generate_cuts(poly)
    out = []
    for c in cuts:
        redundant = any(pocket_contains(c.pocket, d.pocket) for d in cuts if d is not c)
        out.append(replace(c, essential=Essentiality.REDUNDANT if redundant else Essentiality.ESSENTIAL))
    return tuple(sorted(out, key=lambda c: _order_key(poly, c)))


def essential_cuts(poly: Polygon) -> list[Cut]:
    """Essential cuts ordered by the boundary position of v (then of w)."""
    return [c for c in classify_cuts(poly) if c.essential is Essentiality.ESSENTIAL]


# ---------------------------------------------------------------------------
# sampling oracle, independent of the arc-interval test


def sample_region(region: tuple[Point, ...], count: int, rng: random.Random) -> list[Point]:
    """``count`` random interior points of ``region`` plus all its vertices."""
    xs = [p.x for p in region]
    ys = [p.y for p in region]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pts: list[Point] = []
    tries = 0
    while len(pts) < count and tries < count * 200:
        tries += 1
        q = Point(x0 + (x1 - x0) * mpq(rng.randrange(1 << 20), 1 << 20),
                  y0 + (y1 - y0) * mpq(rng.randrange(1 << 20), 1 << 20))
        if point_in_polygon(region, q) is Location.INSIDE:
            pts.append(q)
    return pts + list(region)


def pocket_contains_sampled(a: Pocket, b: Pocket, count: int = 200, seed: int = 0) -> bool:
    """Brute-force containment: every sample of b lies in a, and some sample
    of a lies outside b."""
    rng = random.Random(seed)
    if not all(a.contains_point(q) for q in sample_region(b.region, count, rng)):
        return False
    return any(not b.contains_point(q) for q in sample_region(a.region, count, rng))
