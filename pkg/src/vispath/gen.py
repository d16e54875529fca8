"""Seeded generators for test polygons and paths."""
from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .certify import PolyPath, first_hit, route_through
from .cuts import Cut, essential_cuts
from .decomposition import interior_point, split_ring
from .errors import CannotAvoid, GenerationExhausted, InputError
from .geom import Location, Point, cross, lerp, point_in_polygon, proper_crossing
from .polygon import Polygon, kernel, validate


@dataclass(frozen=True)
class GenConfig:
    n: int = 12
    seed: int = 0
    coordinate_range: int = 40
    require_non_star: bool = True
    max_retries: int = 200

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        if (self.coordinate_range + 1) ** 2 < self.n:
            raise ValueError("coordinate range too small for n points")


def _general_position_points(n: int, bound: int, rng: random.Random) -> list[Point]:
    pts: list[Point] = []
    while len(pts) < n:
        p = Point(mpq(rng.randint(0, bound)), mpq(rng.randint(0, bound)))
        if p in pts:
            continue
        if any(cross(a, b, p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
            continue
        pts.append(p)
    return pts


def _untangle(tour: list[Point]) -> list[Point]:
    """2-opt: reverse the stretch between any two crossing edges until none
    cross. Each move shortens the tour, so this terminates."""
    n = len(tour)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            a, b = tour[i], tour[i + 1]
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                c, d = tour[j], tour[(j + 1) % n]
                if proper_crossing(a, b, c, d):
                    tour[i + 1:j + 1] = reversed(tour[i + 1:j + 1])
                    changed = True
                    break
            if changed:
                break
    return tour


def gen_polygon(cfg: GenConfig) -> Polygon:
    """Random simple polygon on integer coordinates, clockwise.

    Points are drawn in general position (no three collinear), joined in a
    random order, and uncrossed by 2-opt. With ``require_non_star`` the
    draw repeats until the kernel is empty.
    """
    rng = random.Random(cfg.seed)
    for _ in range(cfg.max_retries):
        pts = _general_position_points(cfg.n, cfg.coordinate_range, rng)
        rng.shuffle(pts)
        poly = validate(_untangle(pts))
        if cfg.require_non_star and not kernel(poly).empty:
            continue
        return poly
    raise GenerationExhausted(f"no suitable polygon after {cfg.max_retries} attempts (n={cfg.n})")


def _avoids(path: PolyPath, cut: Cut) -> bool:
    return first_hit(path, cut) is None


def gen_negative_path(poly: Polygon, cut_to_miss: Cut, seed: int = 0, attempts: int = 64) -> PolyPath:
    """A path meeting every essential cut except ``cut_to_miss``.

    Starts from the route through the other cuts' midpoints; if that touches
    the avoided cut, retries with the stops moved to random points along
    their cuts.
    """
    others = [c for c in essential_cuts(poly) if c.key != cut_to_miss.key]
    if not others:
        pieces = split_ring(poly.vertices, cut_to_miss.v, cut_to_miss.w)
        for piece in pieces:
            p = interior_point(piece)
            if point_in_polygon(cut_to_miss.pocket.region, p) is not Location.INSIDE:
                return PolyPath((p,))
        raise CannotAvoid(f"no region outside the pocket of {cut_to_miss}")
    rng = random.Random(seed)
    stops = [c.midpoint for c in others]
    for attempt in range(attempts):
        path = route_through(poly, stops)
        if _avoids(path, cut_to_miss) and all(first_hit(path, c) is not None for c in others):
            return path
        stops = [lerp(c.v, c.w, mpq(rng.randint(1, 63), 64)) for c in others]
    raise CannotAvoid(f"could not avoid {cut_to_miss} while meeting the other essential cuts")
