"""The subpolygon Q left after removing every essential pocket, and checks of
the claims made about it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .certify import PolyPath, first_hit
from .cuts import Cut, Essentiality, classify_cuts, essential_cuts, make_cut, pocket_contains
from .errors import QDisconnected
from .geom import (
    IntersectionKind,
    Location,
    Point,
    cross,
    dist2,
    lerp,
    on_segment,
    point_in_polygon,
    segment_intersection,
    signed_area2,
)
from .polygon import Polygon, kernel
from .visibility import _path_sees

_HALF = mpq(1, 2)


# ---------------------------------------------------------------------------
# ring utilities (rings are vertex tuples in either orientation)


def interior_point(ring: Sequence[Point]) -> Point:
    """A point strictly inside a simple ring, found exactly."""
    n = len(ring)
    sign = 1 if signed_area2(ring) > 0 else -1
    for i in range(n):
        a, v, b = ring[i - 1], ring[i], ring[(i + 1) % n]
        if cross(a, v, b) * sign <= 0:
            continue
        inside = [q for q in ring if q not in (a, v, b)
                  and cross(a, v, q) * sign > 0 and cross(v, b, q) * sign > 0 and cross(b, a, q) * sign > 0]
        if not inside:
            return Point((a.x + v.x + b.x) / 3, (a.y + v.y + b.y) / 3)
        far = max(inside, key=lambda q: (abs(cross(a, b, q)), q))
        return Point((v.x + far.x) / 2, (v.y + far.y) / 2)
    raise ValueError("ring has no strictly convex vertex")


def _insert(ring: list[Point], p: Point) -> int:
    """Insert boundary point p into the ring (if needed); return its index."""
    if p in ring:
        return ring.index(p)
    n = len(ring)
    for i in range(n):
        if on_segment(p, ring[i], ring[(i + 1) % n]):
            ring.insert(i + 1, p)
            return i + 1
    raise ValueError(f"{p} is not on the ring boundary")


def _chords(ring: Sequence[Point], a: Point, b: Point) -> list[tuple[Point, Point]]:
    """Maximal sub-segments of ab whose relative interior lies strictly inside
    the ring, with both ends on the ring boundary."""
    ts = {mpq(0), mpq(1)}
    n = len(ring)
    ab_len = dist2(a, b)
    for i in range(n):
        hit = segment_intersection((a, b), (ring[i], ring[(i + 1) % n]))
        if hit.kind is IntersectionKind.POINT:
            pts = [hit.point]
        elif hit.kind is IntersectionKind.OVERLAP:
            pts = [hit.segment.a, hit.segment.b]
        else:
            continue
        for p in pts:
            ts.add(_param(p, a, b))
    ts = sorted(ts)
    out = []
    for t0, t1 in zip(ts, ts[1:]):
        if point_in_polygon(ring, lerp(a, b, (t0 + t1) * _HALF)) is not Location.INSIDE:
            continue
        p0, p1 = lerp(a, b, t0), lerp(a, b, t1)
        if (point_in_polygon(ring, p0) is Location.BOUNDARY
                and point_in_polygon(ring, p1) is Location.BOUNDARY):
            out.append((p0, p1))
    return out


def _param(p: Point, a: Point, b: Point) -> mpq:
    dx, dy = b.x - a.x, b.y - a.y
    return ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy)


def split_ring(ring: Sequence[Point], a: Point, b: Point) -> list[tuple[Point, ...]]:
    """Split a ring along every chord that segment ab makes with it."""
    chords = _chords(ring, a, b)
    if not chords:
        return [tuple(ring)]
    p, q = chords[0]
    work = list(ring)
    _insert(work, p)
    j = _insert(work, q)
    i = work.index(p)
    n = len(work)
    if i < j:
        first = work[i:j + 1]
        second = work[j:] + work[:i + 1]
    else:
        first = work[i:] + work[:j + 1]
        second = work[j:i + 1]
    out = []
    for piece in (first, second):
        out.extend(split_ring(_simplify(piece), a, b))
    return out


def _simplify(ring: Sequence[Point]) -> tuple[Point, ...]:
    out: list[Point] = []
    for p in ring:
        if not out or out[-1] != p:
            out.append(p)
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
    return tuple(out)


# ---------------------------------------------------------------------------
# Q and its diagnostics


@dataclass(frozen=True)
class ReflexDiagnostic:
    vertex: Point                 # reflex vertex v_i of Q
    neighbors: tuple[Point, Point]  # t_i1, t_i2 (Q-neighbors)
    cuts: tuple[Cut | None, Cut | None]  # l_i1, l_i2, shot to the boundary of P
    contained: tuple[tuple[int, ...], tuple[int, ...]]  # S_P(l_i1), S_P(l_i2)


@dataclass(frozen=True)
class KernelDecomposition:
    q: tuple[Point, ...] | None   # clockwise ring, or None when empty
    pockets: tuple[Cut, ...]      # S_P, one entry per essential cut
    reflex: tuple[ReflexDiagnostic, ...]
    components: int = 1

    @property
    def empty(self) -> bool:
        return self.q is None


def _p_cut_through(poly: Polygon, v: Point, t: Point) -> Cut | None:
    """The cut of P at vertex v generated by the P-edge running toward t."""
    i = poly.index.get(v)
    if i is None:
        return None
    n = poly.n
    for j in ((i - 1) % n, (i + 1) % n):
        u = poly.vertices[j]
        if cross(v, u, t) == 0 and (on_segment(t, v, u) or on_segment(u, v, t)):
            if not poly.reflex[i]:
                return None
            return make_cut(poly, i, j)
    return None


def _lookup(poly: Polygon, cut: Cut | None) -> Cut | None:
    if cut is None:
        return None
    for c in classify_cuts(poly):
        if c.key == cut.key:
            return c
    return cut


def compute_q(poly: Polygon, cuts: Sequence[Cut]) -> list[tuple[Point, ...]]:
    regions: list[tuple[Point, ...]] = [poly.vertices]
    for c in cuts:
        nxt = []
        for r in regions:
            for piece in split_ring(r, c.v, c.w):
                if len(piece) < 3 or signed_area2(piece) == 0:
                    continue
                if point_in_polygon(c.pocket.region, interior_point(piece)) is Location.INSIDE:
                    continue
                nxt.append(piece)
        regions = nxt
    return regions


def kernel_subpolygon(poly: Polygon, strict: bool = True) -> KernelDecomposition:
    """Cut P along all essential cuts and keep what lies outside every pocket.

    With ``strict`` a disconnected remainder raises QDisconnected; otherwise
    the first component is kept and ``components`` records the count.
    """
    ess = tuple(essential_cuts(poly))
    regions = compute_q(poly, ess)
    if len(regions) > 1 and strict:
        raise QDisconnected(f"Q has {len(regions)} components")
    if not regions:
        return KernelDecomposition(None, ess, (), 0)
    ring = _simplify(regions[0])
    if signed_area2(ring) > 0:
        ring = tuple(reversed(ring))
    diags = []
    n = len(ring)
    for i in range(n):
        a, v, b = ring[i - 1], ring[i], ring[(i + 1) % n]
        if cross(a, v, b) <= 0:
            continue
        l1 = _lookup(poly, _p_cut_through(poly, v, a))
        l2 = _lookup(poly, _p_cut_through(poly, v, b))
        s1 = tuple(k for k, c in enumerate(ess) if l1 is not None and pocket_contains(l1.pocket, c.pocket))
        s2 = tuple(k for k, c in enumerate(ess) if l2 is not None and pocket_contains(l2.pocket, c.pocket))
        diags.append(ReflexDiagnostic(v, (a, b), (l1, l2), (s1, s2)))
    return KernelDecomposition(ring, ess, tuple(diags), len(regions))


@dataclass(frozen=True)
class Lemma3Report:
    decomposition: KernelDecomposition
    vertex_results: tuple[tuple[Point, bool, str], ...]
    falsifications: tuple[str, ...] = field(default_factory=tuple)
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        return not self.falsifications


def lemma3_check(poly: Polygon, path: PolyPath) -> Lemma3Report:
    """For each reflex vertex of Q: the path meets one of its two cuts, or
    sees both Q-neighbors. Also checks that those cuts are redundant in P."""
    dec = kernel_subpolygon(poly, strict=False)
    problems: list[str] = []
    if dec.components > 1:
        problems.append(f"Q has {dec.components} components")
    if dec.q is not None:
        for p in dec.q:
            for c in dec.pockets:
                if point_in_polygon(c.pocket.region, p) is Location.INSIDE:
                    problems.append(f"Q vertex {p} inside pocket of {c}")
    results = []
    verts = poly.vertices
    wps = path.waypoints
    for d in dec.reflex:
        for cut in d.cuts:
            if cut is None:
                problems.append(f"reflex vertex {d.vertex} of Q has no matching cut in P")
            elif cut.essential is not Essentiality.REDUNDANT:
                problems.append(f"cut {cut} of Q is not redundant in P")
        if any(c is not None and first_hit(path, c) is not None for c in d.cuts):
            results.append((d.vertex, True, "path meets a cut"))
            continue
        seen = all(_path_sees(verts, wps, t) is not None for t in d.neighbors)
        results.append((d.vertex, seen, "path sees both neighbors" if seen else "failed"))
        if not seen:
            problems.append(f"reflex vertex {d.vertex} of Q: neither cut met nor both neighbors seen")
    return Lemma3Report(dec, tuple(results), tuple(problems), vacuous=not dec.reflex)
