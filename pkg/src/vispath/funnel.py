"""Geodesics inside the polygon, funnels toward a cut, and per-vertex
visibility certificates for essential pockets."""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Sequence

import gmpy2
from gmpy2 import mpfr, mpq

from .cuts import Cut, classify_cuts
from .errors import NoWitness, NotPocketVertex, PointOutside, RayExitsImmediately
from .geom import (
    IntersectionKind,
    Location,
    Point,
    as_point,
    cross,
    dist2,
    line_intersection,
    on_segment,
    point_in_polygon,
    ray_shoot,
    segment_intersection,
    sub,
)
from .polygon import Polygon, reflex_vertices
from .visibility import _visible, _waypoints

_PRECISIONS = (64, 128, 256, 512, 1024)


@total_ordering
class Length:
    """Exact sum of square roots of rationals, compared by interval
    refinement. Sums that stay inseparable at 1024 bits compare equal."""

    __slots__ = ("terms", "_approx")

    def __init__(self, terms: Sequence[mpq] = ()):
        self.terms = tuple(t for t in terms if t != 0)
        self._approx: dict[int, mpfr] = {}

    def __add__(self, other: "Length") -> "Length":
        return Length(self.terms + other.terms)

    def plus(self, sq: mpq) -> "Length":
        return Length(self.terms + (sq,))

    def approx(self, prec: int = 64) -> mpfr:
        v = self._approx.get(prec)
        if v is None:
            with gmpy2.context(gmpy2.get_context(), precision=prec + 8):
                v = sum((gmpy2.sqrt(mpfr(t)) for t in self.terms), mpfr(0))
            self._approx[prec] = v
        return v

    def _cmp(self, other: "Length") -> int:
        if sorted(self.terms) == sorted(other.terms):
            return 0
        for prec in _PRECISIONS:
            a, b = self.approx(prec), other.approx(prec)
            # each term carries relative error below 2**-prec
            slack = (a + b + 1) * mpfr(2) ** (-prec + 4) * (len(self.terms) + len(other.terms) + 1)
            if a + slack < b:
                return -1
            if b + slack < a:
                return 1
        return 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Length) and self._cmp(other) == 0

    def __lt__(self, other: "Length") -> bool:
        return self._cmp(other) < 0

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def __float__(self) -> float:
        return float(self.approx(64))

    def __repr__(self) -> str:
        return f"Length({float(self):.12g})"


@dataclass(frozen=True)
class GeodesicPath:
    waypoints: tuple[Point, ...]
    length: Length

    @property
    def start(self) -> Point:
        return self.waypoints[0]

    @property
    def end(self) -> Point:
        return self.waypoints[-1]


def path_length(points: Sequence[Point]) -> Length:
    return Length([dist2(a, b) for a, b in zip(points, points[1:])])


def normalize(points: Sequence[Point]) -> tuple[Point, ...]:
    """Drop repeated points and straight-through interior waypoints."""
    out: list[Point] = []
    for p in points:
        if out and out[-1] == p:
            continue
        while len(out) >= 2 and cross(out[-2], out[-1], p) == 0 and on_segment(out[-1], out[-2], p):
            out.pop()
        out.append(p)
    return tuple(out)


@lru_cache(maxsize=64)
def _reflex_graph(poly: Polygon) -> dict[int, tuple[int, ...]]:
    verts = poly.vertices
    rs = reflex_vertices(poly)
    adj: dict[int, list[int]] = {i: [] for i in rs}
    for a_i, i in enumerate(rs):
        for j in rs[a_i + 1:]:
            if _visible(verts, verts[i], verts[j]):
                adj[i].append(j)
                adj[j].append(i)
    return {i: tuple(v) for i, v in adj.items()}


def _check_inside(poly: Polygon, *pts: Point) -> None:
    for p in pts:
        if point_in_polygon(poly.vertices, p) is Location.OUTSIDE:
            raise PointOutside(f"{p} is outside the polygon")


def geodesic_tree(poly: Polygon, x: Point) -> tuple[dict[int, Length], dict[int, int | None]]:
    """Dijkstra from ``x`` over the reflex vertices.

    Returns distances and parent links; parent None means the vertex is seen
    directly from x. Geodesics bend only at reflex vertices, so other
    vertices never need to be graph nodes.
    """
    verts = poly.vertices
    graph = _reflex_graph(poly)
    dist: dict[int, Length] = {}
    parent: dict[int, int | None] = {}
    heap: list = []
    for i in graph:
        if _visible(verts, x, verts[i]):
            d = Length([dist2(x, verts[i])])
            dist[i] = d
            parent[i] = None
            heap.append((d, i))
    heapq.heapify(heap)
    done: set[int] = set()
    while heap:
        d, i = heapq.heappop(heap)
        if i in done:
            continue
        done.add(i)
        for j in graph[i]:
            if j in done:
                continue
            nd = d.plus(dist2(verts[i], verts[j]))
            if j not in dist or nd < dist[j]:
                dist[j] = nd
                parent[j] = i
                heapq.heappush(heap, (nd, j))
    return dist, parent


def _chain(poly: Polygon, parent: dict[int, int | None], i: int) -> list[Point]:
    out = []
    k: int | None = i
    while k is not None:
        out.append(poly.vertices[k])
        k = parent[k]
    return out[::-1]


def shortest_path(poly: Polygon, x, y) -> GeodesicPath:
    """Euclidean shortest path from x to y inside the closed polygon."""
    x, y = as_point(x), as_point(y)
    _check_inside(poly, x, y)
    verts = poly.vertices
    if _visible(verts, x, y):
        wps = normalize([x, y])
        return GeodesicPath(wps, path_length(wps))
    dist, parent = geodesic_tree(poly, x)
    best = None
    best_i = None
    for i in sorted(dist):
        if not _visible(verts, verts[i], y):
            continue
        total = dist[i].plus(dist2(verts[i], y))
        if best is None or total < best:
            best, best_i = total, i
    if best_i is None:
        raise PointOutside(f"no path from {x} to {y}")
    wps = normalize([x] + _chain(poly, parent, best_i) + [y])
    return GeodesicPath(wps, path_length(wps))


# ---------------------------------------------------------------------------
# funnels and certificates


@dataclass(frozen=True)
class Funnel:
    source: Point
    apex: Point
    left_chain: GeodesicPath   # apex -> v_C
    right_chain: GeodesicPath  # apex -> w_C
    to_v: GeodesicPath
    to_w: GeodesicPath

    @property
    def apex_is_source(self) -> bool:
        return self.apex == self.source


def _suffix(path: GeodesicPath, k: int) -> GeodesicPath:
    wps = path.waypoints[k:]
    return GeodesicPath(wps, path_length(wps))


def funnel_to_cut(poly: Polygon, x, cut: Cut) -> Funnel:
    x = as_point(x)
    if x not in cut.pocket.region:
        raise NotPocketVertex(f"{x} is not a vertex of the pocket of {cut}")
    to_v = shortest_path(poly, x, cut.v)
    to_w = shortest_path(poly, x, cut.w)
    k = 0
    a, b = to_v.waypoints, to_w.waypoints
    while k + 1 < len(a) and k + 1 < len(b) and a[k + 1] == b[k + 1]:
        k += 1
    return Funnel(x, a[k], _suffix(to_v, k), _suffix(to_w, k), to_v, to_w)


class CaseTag(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    DEGENERATE_A = "DEGENERATE_A"
    DEGENERATE_AB = "DEGENERATE_AB"
    DEGENERATE_AC = "DEGENERATE_AC"


@dataclass(frozen=True)
class Lemma2Certificate:
    vertex: Point
    cut: Cut
    case_tag: CaseTag
    applied_case: str          # which of a/b/c produced the witness
    L_x: Point
    R_x: Point
    I_Lx: Point
    I_Rx: Point
    C_Lx: Cut | None
    C_Rx: Cut | None
    witness: Point


def _path_hit(wps: Sequence[Point], a: Point, b: Point) -> Point | None:
    """First point along the polyline that lies on the closed segment ab."""
    if len(wps) == 1:
        return wps[0] if on_segment(wps[0], a, b) else None
    for p, q in zip(wps, wps[1:]):
        hit = segment_intersection((p, q), (a, b))
        if hit.kind is IntersectionKind.POINT:
            return hit.point
        if hit.kind is IntersectionKind.OVERLAP:
            s = hit.segment
            return s.a if dist2(p, s.a) <= dist2(p, s.b) else s.b
    return None


def _side_cut(poly: Polygon, corner: Point, target_a: Point, target_b: Point) -> Cut | None:
    """Cut at reflex vertex ``corner`` that meets segment target_a..target_b."""
    for c in classify_cuts(poly):
        if c.v == corner and segment_intersection(c.segment, (target_a, target_b)).kind is not IntersectionKind.NONE:
            return c
    return None


def _extension(poly: Polygon, x: Point, corner: Point, fallback: Point) -> Point:
    """Where the ray x->corner, continued past corner, leaves the polygon."""
    try:
        return ray_shoot(poly, corner, sub(corner, x)).point
    except RayExitsImmediately:
        return fallback


def lemma2_certificate(poly: Polygon, essentials: Sequence[Cut], path, cut: Cut, x) -> Lemma2Certificate:
    """Find a point of ``path`` that sees pocket vertex ``x`` by following the
    funnel case analysis literally.

    Candidates, in order: the part of the cut seen directly from x (case a),
    then the extension of x->L_x from L_x to the boundary (case b), then the
    extension of x->R_x (case c). Each candidate is verified with an exact
    visibility test.
    """
    x = as_point(x)
    wps = _waypoints(path)
    funnel = funnel_to_cut(poly, x, cut)
    if not funnel.apex_is_source:
        raise NoWitness(f"apex of funnel from {x} to {cut} is {funnel.apex}, not the vertex itself")
    v_c, w_c = cut.v, cut.w
    to_v, to_w = funnel.to_v.waypoints, funnel.to_w.waypoints
    sees_v = len(to_v) <= 2
    sees_w = len(to_w) <= 2
    l_x = to_v[1] if len(to_v) > 1 else v_c
    r_x = to_w[1] if len(to_w) > 1 else w_c
    i_l = v_c if sees_v else line_intersection(x, l_x, v_c, w_c)
    i_r = w_c if sees_w else line_intersection(x, r_x, v_c, w_c)
    if i_l is None or i_r is None or not on_segment(i_l, v_c, w_c) or not on_segment(i_r, v_c, w_c):
        raise NoWitness(f"funnel rays from {x} miss {cut}")
    c_l = None if sees_v else _side_cut(poly, l_x, i_l, w_c)
    c_r = None if sees_w else _side_cut(poly, r_x, i_r, v_c)
    if sees_v and sees_w:
        tag = CaseTag.DEGENERATE_A
    elif sees_v:
        tag = CaseTag.DEGENERATE_AC
    elif sees_w:
        tag = CaseTag.DEGENERATE_AB
    else:
        tag = None
    verts = poly.vertices
    ext_l = i_l if sees_v else _extension(poly, x, l_x, i_l)
    ext_r = i_r if sees_w else _extension(poly, x, r_x, i_r)
    for case, (a, b) in (("a", (i_l, i_r)), ("b", (l_x, ext_l)), ("c", (r_x, ext_r))):
        hit = _path_hit(wps, a, b)
        if hit is not None and _visible(verts, x, hit):
            final = tag if tag is not None else CaseTag(case.upper())
            return Lemma2Certificate(x, cut, final, case, l_x, r_x, i_l, i_r, c_l, c_r, hit)
    raise NoWitness(f"no witness on the path for pocket vertex {x} of {cut}")


@dataclass(frozen=True)
class PocketClaims:
    """Side claims about an essential pocket, each checked exactly."""

    vertices_see_cut: bool   # every pocket vertex sees some point of the cut
    u_convex: bool           # generator end u is convex in the pocket
    w_convex: bool           # cut end w is convex in the pocket
    one_side: bool           # pocket vertices all on one side of line u-w
    blind: tuple[Point, ...] = ()

    @property
    def ok(self) -> bool:
        return self.vertices_see_cut and self.u_convex and self.w_convex and self.one_side


def _convex_in_ring(ring: Sequence[Point], p: Point) -> bool:
    i = ring.index(p)
    n = len(ring)
    return cross(ring[i - 1], p, ring[(i + 1) % n]) < 0


def pocket_claims(poly: Polygon, cut: Cut) -> PocketClaims:
    from .visibility import sees_part_of_segment

    region = cut.pocket.region
    blind = tuple(x for x in region if not sees_part_of_segment(poly, x, cut.v, cut.w))
    sides = {(cross(cut.u, cut.w, x) > 0) - (cross(cut.u, cut.w, x) < 0) for x in region}
    sides.discard(0)
    return PocketClaims(
        vertices_see_cut=not blind,
        u_convex=_convex_in_ring(region, cut.u),
        w_convex=_convex_in_ring(region, cut.w),
        one_side=len(sides) <= 1,
        blind=blind,
    )
