"""Sampling coverage oracle and the boundary-implies-interior consistency check.

The oracle is deliberately independent of the cut machinery: it samples the
polygon and asks, exactly, whether each sample sees some point of the path.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .certify import PolyPath
from .cuts import Cut
from .errors import RayExitsImmediately
from .funnel import Length, _reflex_graph, geodesic_tree
from .geom import Location, Point, dist2, dot_vec, point_in_polygon, ray_shoot, sub
from .polygon import Polygon
from .visibility import _path_sees, _visible, _visible_intervals


class SampleKind(enum.Enum):
    INTERIOR = "INTERIOR"
    BOUNDARY = "BOUNDARY"


@dataclass(frozen=True)
class SamplingConfig:
    grid_pitch: mpq
    vertex_offset_eps: mpq
    boundary_spacing: mpq
    seed: int = 0

    def __post_init__(self):
        if min(self.grid_pitch, self.vertex_offset_eps, self.boundary_spacing) <= 0:
            raise ValueError("sampling parameters must be positive")

    @classmethod
    def default(cls, poly: Polygon, seed: int = 0) -> "SamplingConfig":
        x0, y0, x1, y1 = poly.bbox
        diag = math.hypot(float(x1 - x0), float(y1 - y0))
        f = Fraction(diag / 64).limit_denominator(1024)
        pitch = mpq(f.numerator, f.denominator)
        return cls(pitch, pitch / 100, pitch, seed)


@dataclass(frozen=True)
class Sample:
    point: Point
    kind: SampleKind


@dataclass(frozen=True)
class CoverageReport:
    samples_total: int
    uncovered: tuple[Sample, ...]
    config: SamplingConfig

    @property
    def covered(self) -> bool:
        return not self.uncovered

    def count(self, kind: SampleKind) -> int:
        return sum(1 for s in self.uncovered if s.kind is kind)


def _rationalize(x: float, den: int = 1 << 16) -> mpq:
    f = Fraction(x).limit_denominator(den)
    return mpq(f.numerator, f.denominator)


def inward_offset(poly: Polygon, i: int, eps: mpq) -> Point | None:
    """Point about ``eps`` inside vertex i along its interior angle bisector."""
    verts = poly.vertices
    v = verts[i]
    a, b = verts[i - 1], verts[(i + 1) % poly.n]
    ua = sub(a, v)
    ub = sub(b, v)
    la = math.sqrt(dist2(a, v))
    lb = math.sqrt(dist2(b, v))
    bx = float(ua.x) / la + float(ub.x) / lb
    by = float(ua.y) / la + float(ub.y) / lb
    norm = math.hypot(bx, by)
    if poly.reflex[i]:
        bx, by = -bx, -by
    step = eps
    for _ in range(40):
        p = Point(v.x + _rationalize(bx / norm) * step, v.y + _rationalize(by / norm) * step)
        if point_in_polygon(verts, p) is Location.INSIDE:
            return p
        step /= 2
    return None


def edge_probes(poly: Polygon, a: Point, b: Point, fractions=(mpq(1, 64), mpq(1, 4), mpq(1, 2), mpq(3, 4))) -> list[Point]:
    """Interior points just inside the edge a->b (a clockwise edge, so the
    interior is on its right)."""
    verts = poly.vertices
    normal = Point(b.y - a.y, a.x - b.x)
    out = []
    for f in fractions:
        base = Point(a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f)
        step = mpq(1, 1000)
        for _ in range(40):
            p = Point(base.x + normal.x * step, base.y + normal.y * step)
            if point_in_polygon(verts, p) is Location.INSIDE:
                out.append(p)
                break
            step /= 2
    return out


def generator_probes(poly: Polygon, cut: Cut) -> list[Point]:
    """Probe points hugging the generator edge u-v of ``cut`` from inside."""
    n = poly.n
    if cut.u_index == (cut.v_index - 1) % n:
        a, b = cut.u, cut.v
    else:
        a, b = cut.v, cut.u
    return edge_probes(poly, a, b)


def samples(poly: Polygon, cfg: SamplingConfig, probes=()) -> list[Sample]:
    verts = poly.vertices
    out: dict[Point, SampleKind] = {}
    x0, y0, x1, y1 = poly.bbox
    pitch = cfg.grid_pitch
    nx = int((x1 - x0) / pitch) + 1
    ny = int((y1 - y0) / pitch) + 1
    for i in range(nx):
        x = x0 + (i + mpq(1, 2)) * pitch
        for j in range(ny):
            p = Point(x, y0 + (j + mpq(1, 2)) * pitch)
            if point_in_polygon(verts, p) is Location.INSIDE:
                out[p] = SampleKind.INTERIOR
    for i in range(poly.n):
        p = inward_offset(poly, i, cfg.vertex_offset_eps)
        if p is not None:
            out[p] = SampleKind.INTERIOR
    for p in probes:
        out.setdefault(p, SampleKind.INTERIOR)
    for (a, b), length in zip(poly.edges, poly.edge_lengths):
        m = max(1, math.ceil(length / float(cfg.boundary_spacing)))
        for k in range(m):
            t = mpq(k, m)
            out[Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)] = SampleKind.BOUNDARY
    return [Sample(p, k) for p, k in sorted(out.items())]


def coverage_oracle(poly: Polygon, path: PolyPath, cfg: SamplingConfig | None = None, probes=()) -> CoverageReport:
    """Sample the polygon and report every sample that sees no path point.

    Samples: an interior grid, inward offsets at every vertex, any extra
    ``probes`` (interior points), and boundary points along every edge
    including all vertices.
    """
    cfg = cfg or SamplingConfig.default(poly)
    verts = poly.vertices
    wps = path.waypoints
    pts = samples(poly, cfg, probes)
    uncovered = tuple(s for s in pts if _path_sees(verts, wps, s.point) is None)
    return CoverageReport(len(pts), uncovered, cfg)


# ---------------------------------------------------------------------------
# boundary-implies-interior check


@dataclass(frozen=True)
class ExtensionWitness:
    """For an unseen interior sample x: first corner v of the geodesic from x
    toward the path, and the boundary point x' reached by extending v->x
    past x."""

    sample: Point
    corner: Point | None
    boundary_point: Point | None
    boundary_uncovered: bool


@dataclass(frozen=True)
class Lemma1Record:
    report: CoverageReport
    boundary_uncovered: int
    interior_uncovered: int
    witnesses: tuple[ExtensionWitness, ...]
    falsifications: tuple[str, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return not self.falsifications


def _closest_on_intervals(z: Point, a: Point, b: Point, intervals) -> mpq | None:
    ab = sub(b, a)
    den = dot_vec(ab, ab)
    t_star = dot_vec(sub(z, a), ab) / den if den else mpq(0)
    best = None
    for t0, t1 in intervals:
        t = min(max(t_star, t0), t1)
        q = Point(a.x + ab.x * t, a.y + ab.y * t)
        d = dist2(z, q)
        if best is None or d < best:
            best = d
    return best


def _direct_to_path(verts, z: Point, wps) -> Length | None:
    best = None
    if len(wps) == 1:
        return Length([dist2(z, wps[0])]) if _visible(verts, z, wps[0]) else None
    for a, b in zip(wps, wps[1:]):
        iv = _visible_intervals(verts, z, a, b)
        if not iv:
            continue
        d = Length([_closest_on_intervals(z, a, b, iv)])
        if best is None or d < best:
            best = d
    return best


def first_corner_toward_path(poly: Polygon, x: Point, path: PolyPath) -> Point | None:
    """First waypoint after x on a shortest path from x to the path, or None
    when x already sees the path."""
    verts = poly.vertices
    wps = path.waypoints
    if _path_sees(verts, wps, x) is not None:
        return None
    dist, parent = geodesic_tree(poly, x)
    best = None
    best_i = None
    for i in sorted(dist):
        direct = _direct_to_path(verts, verts[i], wps)
        if direct is None:
            continue
        total = dist[i] + direct
        if best is None or total < best:
            best, best_i = total, i
    if best_i is None:
        return None
    k = best_i
    while parent[k] is not None:
        k = parent[k]
    return verts[k]


def lemma1_check(poly: Polygon, path: PolyPath, cfg: SamplingConfig | None = None,
                 report: CoverageReport | None = None, probes=()) -> Lemma1Record:
    """Check that full boundary coverage forces full interior coverage, and
    replay the extension construction for every unseen interior sample."""
    report = report or coverage_oracle(poly, path, cfg, probes)
    verts = poly.vertices
    wps = path.waypoints
    nb = report.count(SampleKind.BOUNDARY)
    ni = report.count(SampleKind.INTERIOR)
    problems: list[str] = []
    if nb == 0 and ni > 0:
        problems.append(f"boundary fully covered but {ni} interior samples unseen")
    witnesses = []
    for s in report.uncovered:
        if s.kind is not SampleKind.INTERIOR:
            continue
        x = s.point
        corner = first_corner_toward_path(poly, x, path)
        if corner is None:
            problems.append(f"no geodesic corner found from {x}")
            witnesses.append(ExtensionWitness(x, None, None, False))
            continue
        try:
            hit = ray_shoot(poly, x, sub(x, corner)).point
        except RayExitsImmediately:
            problems.append(f"extension of {corner}->{x} leaves the polygon at {x}")
            witnesses.append(ExtensionWitness(x, corner, None, False))
            continue
        unseen = _path_sees(verts, wps, hit) is None
        if not unseen:
            problems.append(f"extension point {hit} of {x} is seen by the path")
        witnesses.append(ExtensionWitness(x, corner, hit, unseen))
    return Lemma1Record(report, nb, ni, tuple(witnesses), tuple(problems))
