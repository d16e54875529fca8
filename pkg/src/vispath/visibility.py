"""Exact visibility between points, from points to paths, and visibility
polygons.

Visibility uses closed-set semantics throughout: p sees q iff the closed
segment pq stays inside the closed polygon. Grazing a reflex vertex or
running along an edge therefore counts as visible; only a crossing into the
exterior blocks sight.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Sequence

from gmpy2 import mpq

from .errors import PointOutside
from .geom import (
    Location,
    Point,
    as_point,
    cross,
    cross_vec,
    dot_vec,
    enters_interior,
    lerp,
    on_segment,
    point_in_polygon,
    signed_area2,
    sub,
)
from .polygon import Polygon

_HALF = mpq(1, 2)


def _require_inside(poly: Polygon, *points: Point) -> list[Location]:
    locs = []
    for p in points:
        loc = point_in_polygon(poly.vertices, p)
        if loc is Location.OUTSIDE:
            raise PointOutside(f"{p} is outside the polygon")
        locs.append(loc)
    return locs


def visible(poly: Polygon, p, q) -> bool:
    p, q = as_point(p), as_point(q)
    lp, lq = _require_inside(poly, p, q)
    return _visible(poly.vertices, p, q, lp is Location.INSIDE and lq is Location.INSIDE)


def _visible(verts: Sequence[Point], p: Point, q: Point, both_inside: bool = False) -> bool:
    """Segment pq inside the closed polygon, for p and q already in it."""
    if p == q:
        return True
    px, py = p
    qx, qy = q
    dx, dy = qx - px, qy - py
    lo_x, hi_x = (px, qx) if px <= qx else (qx, px)
    lo_y, hi_y = (py, qy) if py <= qy else (qy, py)
    touches: list[mpq] = []
    n = len(verts)
    prev = verts[-1]
    prev_side = dx * (prev[1] - py) - dy * (prev[0] - px)
    for i in range(n):
        cur = verts[i]
        cur_side = dx * (cur[1] - py) - dy * (cur[0] - px)
        if (prev_side > 0 > cur_side) or (prev_side < 0 < cur_side):
            # edge straddles the line; check that pq straddles the edge
            ex, ey = cur[0] - prev[0], cur[1] - prev[1]
            sp = ex * (py - prev[1]) - ey * (px - prev[0])
            sq = ex * (qy - prev[1]) - ey * (qx - prev[0])
            if (sp > 0 > sq) or (sp < 0 < sq):
                return False
        if cur_side == 0 and lo_x <= cur[0] <= hi_x and lo_y <= cur[1] <= hi_y and cur != p and cur != q:
            touches.append((cur[0] - px) / dx if dx != 0 else (cur[1] - py) / dy)
        prev, prev_side = cur, cur_side
    if not touches and both_inside:
        return True
    ts = sorted(set(touches))
    cuts = [mpq(0)] + ts + [mpq(1)]
    for t0, t1 in zip(cuts, cuts[1:]):
        m = (t0 + t1) * _HALF
        if point_in_polygon(verts, Point(px + dx * m, py + dy * m)) is Location.OUTSIDE:
            return False
    return True


def _critical_params(verts: Sequence[Point], s: Point, a: Point, b: Point) -> list[mpq]:
    """Parameters along a->b where visibility from s can change."""
    ts = {mpq(0), mpq(1)}
    ab = sub(b, a)
    n = len(verts)
    for i in range(n):
        c = verts[i]
        sc = sub(c, s)
        den = cross_vec(sc, ab)
        if den != 0 and sc != (0, 0):
            t = -cross(s, c, a) / den
            if 0 < t < 1:
                ts.add(t)
        # boundary contacts of the segment itself
        e0, e1 = verts[i - 1], c
        d1 = cross(a, b, e0)
        d2 = cross(a, b, e1)
        if d1 == 0 and d2 == 0:
            for e in (e0, e1):
                if on_segment(e, a, b):
                    ts.add(_param(e, a, b))
        elif not ((d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0)):
            d3 = cross(e0, e1, a)
            d4 = cross(e0, e1, b)
            if not ((d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0)) and d3 != d4:
                t = d3 / (d3 - d4)
                if 0 < t < 1:
                    ts.add(t)
    return sorted(ts)


def _param(p: Point, a: Point, b: Point) -> mpq:
    return dot_vec(sub(p, a), sub(b, a)) / dot_vec(sub(b, a), sub(b, a))


def _blocked_entirely(verts: Sequence[Point], s: Point, a: Point, b: Point) -> bool:
    """Cheap sufficient test: one edge separates s from all of segment ab."""
    if s == a or s == b:
        return False
    n = len(verts)
    for i in range(n):
        e0, e1 = verts[i - 1], verts[i]
        cs = cross(e0, e1, s)
        if cs == 0:
            continue
        ca = cross(e0, e1, a)
        cb = cross(e0, e1, b)
        if cs > 0:
            if not (ca < 0 and cb < 0):
                continue
        elif not (ca > 0 and cb > 0):
            continue
        # both rays s->a and s->b must pass strictly through the edge interior
        oa0 = cross(s, a, e0)
        oa1 = cross(s, a, e1)
        if not ((oa0 > 0 > oa1) or (oa0 < 0 < oa1)):
            continue
        ob0 = cross(s, b, e0)
        ob1 = cross(s, b, e1)
        if (ob0 > 0 > ob1) or (ob0 < 0 < ob1):
            return True
    return False


def visible_parameters(poly: Polygon, s, a, b) -> list[tuple[mpq, mpq]]:
    """Closed parameter intervals of segment a->b visible from s.

    Isolated visible points appear as degenerate intervals (t, t).
    """
    s, a, b = as_point(s), as_point(a), as_point(b)
    _require_inside(poly, s, a, b)
    return _visible_intervals(poly.vertices, s, a, b)


def _visible_intervals(verts, s, a, b) -> list[tuple[mpq, mpq]]:
    if a == b:
        return [(mpq(0), mpq(0))] if _visible(verts, s, a) else []
    if _blocked_entirely(verts, s, a, b):
        return []
    ts = _critical_params(verts, s, a, b)
    out: list[tuple[mpq, mpq]] = []

    def add(t0, t1):
        if out and out[-1][1] >= t0:
            out[-1] = (out[-1][0], max(out[-1][1], t1))
        else:
            out.append((t0, t1))

    for i, t in enumerate(ts):
        if _visible(verts, s, lerp(a, b, t)):
            add(t, t)
        if i + 1 < len(ts):
            m = (t + ts[i + 1]) * _HALF
            if _visible(verts, s, lerp(a, b, m)):
                add(t, ts[i + 1])
    return out


def _first_visible_on_segment(verts, s: Point, a: Point, b: Point) -> Point | None:
    if a == b:
        return a if _visible(verts, s, a) else None
    if _blocked_entirely(verts, s, a, b):
        return None
    ts = _critical_params(verts, s, a, b)
    for i, t in enumerate(ts):
        q = lerp(a, b, t)
        if _visible(verts, s, q):
            return q
        if i + 1 < len(ts):
            q = lerp(a, b, (t + ts[i + 1]) * _HALF)
            if _visible(verts, s, q):
                return q
    return None


def _waypoints(path) -> tuple[Point, ...]:
    return path.waypoints if hasattr(path, "waypoints") else tuple(as_point(p) for p in path)


def path_sees_point(poly: Polygon, path, p) -> Point | None:
    """A point of ``path`` visible from ``p``, or None.

    Waypoints are tried first; then each segment is scanned at the exact
    parameters where visibility can change, which makes the search complete.
    """
    p = as_point(p)
    _require_inside(poly, p)
    return _path_sees(poly.vertices, _waypoints(path), p)


def _path_sees(verts, wps: Sequence[Point], p: Point) -> Point | None:
    for w in wps:
        if _visible(verts, p, w):
            return w
    for a, b in zip(wps, wps[1:]):
        if a == b:
            continue
        q = _first_visible_on_segment(verts, p, a, b)
        if q is not None:
            return q
    return None


# ---------------------------------------------------------------------------
# visibility polygon


@dataclass(frozen=True)
class VisPolygon:
    """Region seen from ``source``: closure of the open-visibility region.

    Zero-width spikes that closed semantics add along grazing rays are not
    represented as area; :func:`visible` remains the exact ground truth.
    """

    source: Point
    region: tuple[Point, ...]

    @property
    def area(self) -> mpq:
        return abs(signed_area2(self.region)) / 2

    def contains(self, q: Point) -> bool:
        return point_in_polygon(self.region, as_point(q)) is not Location.OUTSIDE


def _half(d: Point) -> int:
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_key(d: Point):
    return functools.cmp_to_key(lambda u, v: _angle_cmp(u, v))(d)


def _angle_cmp(u: Point, v: Point) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross_vec(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _ray_first_edge(verts, p: Point, d: Point):
    """Nearest edge crossed by the open ray p + t d inside an event-free sector."""
    best_t = None
    best_edge = None
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        e = sub(b, a)
        den = cross_vec(d, e)
        if den == 0:
            continue
        w = sub(a, p)
        t = cross_vec(w, e) / den
        u = cross_vec(w, d) / den
        if t > 0 and 0 <= u <= 1 and (best_t is None or t < best_t):
            best_t, best_edge = t, (a, b)
    return best_edge


def _ray_edge_point(p: Point, d: Point, a: Point, b: Point) -> Point:
    e = sub(b, a)
    t = cross_vec(sub(a, p), e) / cross_vec(d, e)
    return Point(p.x + d.x * t, p.y + d.y * t)


def visibility_polygon(poly: Polygon, p) -> VisPolygon:
    """Angular sweep around ``p`` with events sorted by exact cross products."""
    p = as_point(p)
    _require_inside(poly, p)
    verts = poly.vertices
    dirs = sorted({sub(v, p) for v in verts if v != p}, key=_angle_key)
    uniq: list[Point] = []
    for d in dirs:
        if uniq and _angle_cmp(uniq[-1], d) == 0:
            continue
        uniq.append(d)
    if len(uniq) > 1 and _angle_cmp(uniq[0], uniq[-1]) == 0:
        uniq.pop()
    region: list[Point] = []
    m = len(uniq)
    for i in range(m):
        d0, d1 = uniq[i], uniq[(i + 1) % m]
        c = cross_vec(d0, d1)
        if m == 1:
            mid = Point(-d0.y, d0.x)
        elif c > 0:
            mid = Point(d0.x + d1.x, d0.y + d1.y)
        else:
            # sector of angle >= pi: rotate d0 a quarter turn counterclockwise
            mid = Point(-d0.y, d0.x)
        if not enters_interior(verts, p, mid):
            region.append(p)
            continue
        edge = _ray_first_edge(verts, p, mid)
        if edge is None:
            region.append(p)
            continue
        region.append(_ray_edge_point(p, d0, *edge))
        region.append(_ray_edge_point(p, d1, *edge))
    return VisPolygon(p, tuple(_clean_ring(region)))


def _clean_ring(pts: list[Point]) -> list[Point]:
    out: list[Point] = []
    for q in pts:
        if not out or out[-1] != q:
            out.append(q)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            if cross(out[i - 1], out[i], out[(i + 1) % len(out)]) == 0:
                del out[i]
                changed = True
                break
    return out


def sees_part_of_segment(poly: Polygon, x, a, b) -> bool:
    x, a, b = as_point(x), as_point(a), as_point(b)
    return _first_visible_on_segment(poly.vertices, x, a, b) is not None
