"""Text and JSON formats for polygons, paths and reports.

Polygon and path files share one layout: a count ``n`` on the first line,
then ``n`` lines of ``x y``. Coordinates may be decimals or ``p/q``
fractions and are read exactly. A JSON object ``{"vertices": [[x, y], ...]}``
(or ``"waypoints"`` for paths) is accepted too.

Report JSON uses :func:`fmt` for coordinates, so a trailing ``~`` marks a
rounded value.
"""
from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .certify import CutHit, PolyPath, Verdict, make_path
from .cuts import Cut
from .decomposition import KernelDecomposition, Lemma3Report
from .errors import ParseError
from .funnel import Lemma2Certificate
from .geom import Point, exact_text, fmt, rational
from .oracle import CoverageReport, Lemma1Record
from .polygon import Kernel, Polygon, validate


def _parse_points(text: str, what: str) -> list[Point]:
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_json_points(stripped, what)
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    head = lines[0].strip()
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected a {what} count, got {head!r}", 1) from None
    if n < 0:
        raise ParseError("count must be non-negative", 1)
    pts = []
    for k in range(n):
        lineno = k + 2
        if lineno > len(lines):
            raise ParseError(f"expected {n} points, input ends after {k}", lineno)
        fields = lines[lineno - 1].split()
        if len(fields) != 2:
            raise ParseError(f"expected 'x y', got {lines[lineno - 1]!r}", lineno)
        try:
            pts.append(Point(rational(fields[0]), rational(fields[1])))
        except ParseError as e:
            raise ParseError(str(e), lineno) from None
    for extra in range(n + 1, len(lines)):
        if lines[extra].strip():
            raise ParseError("unexpected content after the last point", extra + 1)
    return pts


def _parse_json_points(text: str, what: str) -> list[Point]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from None
    key = "vertices" if what == "vertex" else "waypoints"
    raw = doc.get(key, doc.get("vertices")) if isinstance(doc, dict) else None
    if not isinstance(raw, list):
        raise ParseError(f"JSON input needs a {key!r} list")
    pts = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ParseError(f"bad coordinate pair {item!r}")
        try:
            pts.append(Point(rational(item[0]), rational(item[1])))
        except (TypeError, ParseError) as e:
            raise ParseError(str(e)) from None
    return pts


def parse_polygon(text: str) -> Polygon:
    """Parse and validate a polygon (either orientation)."""
    return validate(_parse_points(text, "vertex"))


def parse_path(text: str, poly: Polygon | None = None) -> PolyPath:
    """Parse a path; with ``poly`` it is also checked to lie in the polygon."""
    pts = _parse_points(text, "waypoint")
    if not pts:
        raise ParseError("a path needs at least one waypoint", 1)
    if poly is not None:
        return make_path(poly, pts)
    return PolyPath(tuple(pts))


def format_points(points: Sequence[Point]) -> str:
    lines = [str(len(points))]
    lines += [f"{exact_text(p.x)} {exact_text(p.y)}" for p in points]
    return "\n".join(lines) + "\n"


def format_polygon(poly: Polygon) -> str:
    return format_points(poly.vertices)


def format_path(path: PolyPath) -> str:
    return format_points(path.waypoints)


# ---------------------------------------------------------------------------
# report JSON


def point_json(p: Point | None) -> list[str] | None:
    return None if p is None else [fmt(p.x), fmt(p.y)]


def points_json(pts: Iterable[Point]) -> list[list[str]]:
    return [point_json(p) for p in pts]


def cut_json(c: Cut) -> dict[str, Any]:
    return {
        "v": point_json(c.v),
        "w": point_json(c.w),
        "u": point_json(c.u),
        "v_index": c.v_index,
        "u_index": c.u_index,
        "essential": c.essential.value,
        "pocket": {
            "start": {"edge": c.pocket.start.edge, "frac": exact_text(c.pocket.start.frac)},
            "end": {"edge": c.pocket.end.edge, "frac": exact_text(c.pocket.end.frac)},
            "region": points_json(c.pocket.region),
        },
    }


def _hit_json(h: CutHit) -> dict[str, Any]:
    return {"cut": [point_json(h.cut.v), point_json(h.cut.w)], "hit": h.hit,
            "first_hit": point_json(h.first_hit_point)}


def verdict_json(v: Verdict) -> dict[str, Any]:
    return {
        "conclusion": v.conclusion.value,
        "star_shaped": v.star_shaped,
        "per_cut": [_hit_json(h) for h in v.per_cut],
    }


def coverage_json(r: CoverageReport) -> dict[str, Any]:
    cfg = r.config
    return {
        "samples_total": r.samples_total,
        "uncovered_count": len(r.uncovered),
        "uncovered": [{"point": point_json(s.point), "kind": s.kind.value} for s in r.uncovered],
        "config": {
            "grid_pitch": exact_text(cfg.grid_pitch),
            "vertex_offset_eps": exact_text(cfg.vertex_offset_eps),
            "boundary_spacing": exact_text(cfg.boundary_spacing),
            "seed": cfg.seed,
        },
    }


def kernel_json(k: Kernel) -> dict[str, Any]:
    return {"empty": k.empty, "region": points_json(k.region)}


def decomposition_json(d: KernelDecomposition) -> dict[str, Any]:
    return {
        "empty": d.empty,
        "q": None if d.q is None else points_json(d.q),
        "components": d.components,
        "essential_cuts": [cut_json(c) for c in d.pockets],
        "reflex": [
            {
                "vertex": point_json(r.vertex),
                "neighbors": points_json(r.neighbors),
                "cuts": [None if c is None else [point_json(c.v), point_json(c.w)] for c in r.cuts],
                "contained": [list(s) for s in r.contained],
            }
            for r in d.reflex
        ],
    }


def certificate_json(c: Lemma2Certificate) -> dict[str, Any]:
    def side(cut):
        return None if cut is None else [point_json(cut.v), point_json(cut.w)]

    return {
        "vertex": point_json(c.vertex),
        "cut": [point_json(c.cut.v), point_json(c.cut.w)],
        "case_tag": c.case_tag.value,
        "applied_case": c.applied_case,
        "L_x": point_json(c.L_x),
        "R_x": point_json(c.R_x),
        "I_Lx": point_json(c.I_Lx),
        "I_Rx": point_json(c.I_Rx),
        "C_Lx": side(c.C_Lx),
        "C_Rx": side(c.C_Rx),
        "witness": point_json(c.witness),
    }


def lemma1_json(rec: Lemma1Record) -> dict[str, Any]:
    return {
        "consistent": rec.consistent,
        "boundary_uncovered": rec.boundary_uncovered,
        "interior_uncovered": rec.interior_uncovered,
        "witnesses": [
            {"sample": point_json(w.sample), "corner": point_json(w.corner),
             "boundary_point": point_json(w.boundary_point), "boundary_uncovered": w.boundary_uncovered}
            for w in rec.witnesses
        ],
        "falsifications": list(rec.falsifications),
    }


def lemma3_json(rep: Lemma3Report) -> dict[str, Any]:
    return {
        "passed": rep.passed,
        "vacuous": rep.vacuous,
        "decomposition": decomposition_json(rep.decomposition),
        "vertices": [{"vertex": point_json(p), "ok": ok, "reason": why} for p, ok, why in rep.vertex_results],
        "falsifications": list(rep.falsifications),
    }


def dumps(doc: Any) -> str:
    """Stable JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
