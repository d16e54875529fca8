"""Visibility-path certification by the essential-cut criterion, and
certified-route construction."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cuts import Cut, essential_cuts
from .errors import NoEssentialCuts, PathOutside
from .funnel import _path_hit, shortest_path
from .geom import Location, Point, as_point, point_in_polygon
from .polygon import Polygon, kernel
from .visibility import _visible


@dataclass(frozen=True)
class PolyPath:
    """Connected piecewise-linear path; a single waypoint is a point-path."""

    waypoints: tuple[Point, ...]

    def __post_init__(self):
        if not self.waypoints:
            raise PathOutside("a path needs at least one waypoint")

    @property
    def segments(self) -> list[tuple[Point, Point]]:
        w = self.waypoints
        if len(w) == 1:
            return [(w[0], w[0])]
        return list(zip(w, w[1:]))

    def __len__(self) -> int:
        return len(self.waypoints)


def make_path(poly: Polygon, points: Iterable) -> PolyPath:
    """Build a PolyPath, checking every waypoint and segment lies in closed P."""
    wps: list[Point] = []
    for p in points:
        p = as_point(p)
        if wps and wps[-1] == p:
            continue
        wps.append(p)
    path = PolyPath(tuple(wps))
    check_path(poly, path)
    return path


def check_path(poly: Polygon, path: PolyPath) -> None:
    verts = poly.vertices
    for p in path.waypoints:
        if point_in_polygon(verts, p) is Location.OUTSIDE:
            raise PathOutside(f"waypoint {p} is outside the polygon")
    for a, b in zip(path.waypoints, path.waypoints[1:]):
        if not _visible(verts, a, b):
            raise PathOutside(f"segment {a} -> {b} leaves the polygon")


class Conclusion(enum.Enum):
    VISIBILITY_PATH = "VISIBILITY_PATH"
    NOT_VISIBILITY_PATH = "NOT_VISIBILITY_PATH"
    PRECONDITION_STAR_SHAPED = "PRECONDITION_STAR_SHAPED"


@dataclass(frozen=True)
class CutHit:
    cut: Cut
    hit: bool
    first_hit_point: Point | None


@dataclass(frozen=True)
class Verdict:
    per_cut: tuple[CutHit, ...]
    conclusion: Conclusion
    star_shaped: bool = False

    @property
    def all_hit(self) -> bool:
        return all(c.hit for c in self.per_cut)

    @property
    def missed(self) -> list[Cut]:
        return [c.cut for c in self.per_cut if not c.hit]


def first_hit(path: PolyPath, cut: Cut) -> Point | None:
    return _path_hit(path.waypoints, cut.v, cut.w)


def certify_visibility_path(poly: Polygon, path: PolyPath) -> Verdict:
    """Apply the criterion: a path in a non-star-shaped polygon is a
    visibility path iff it meets every essential cut (closed segments).

    For star-shaped polygons the criterion does not apply and the verdict is
    PRECONDITION_STAR_SHAPED; use the coverage oracle instead.
    """
    check_path(poly, path)
    per_cut = []
    for c in essential_cuts(poly):
        p = first_hit(path, c)
        per_cut.append(CutHit(c, p is not None, p))
    star = not kernel(poly).empty
    if star:
        conclusion = Conclusion.PRECONDITION_STAR_SHAPED
    elif all(h.hit for h in per_cut):
        conclusion = Conclusion.VISIBILITY_PATH
    else:
        conclusion = Conclusion.NOT_VISIBILITY_PATH
    return Verdict(tuple(per_cut), conclusion, star)


def route_through(poly: Polygon, stops: Sequence[Point]) -> PolyPath:
    """Join ``stops`` with geodesics."""
    wps: list[Point] = [stops[0]]
    for a, b in zip(stops, stops[1:]):
        for p in shortest_path(poly, a, b).waypoints[1:]:
            if wps[-1] != p:
                wps.append(p)
    return PolyPath(tuple(wps))


def make_certified_route(poly: Polygon) -> PolyPath:
    """Test-case route through the midpoint of every essential cut, in
    boundary order of the cuts' reflex endpoints. Not a shortest route."""
    cuts = essential_cuts(poly)
    if not cuts:
        raise NoEssentialCuts("polygon has no essential cuts")
    return route_through(poly, [c.midpoint for c in cuts])
