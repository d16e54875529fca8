import pytest
from gmpy2 import mpq

from vispath import (
    Conclusion,
    GenConfig,
    SamplingConfig,
    certify_visibility_path,
    coverage_oracle,
    essential_cuts,
    gen_negative_path,
    gen_polygon,
    kernel,
    kernel_subpolygon,
    lemma1_check,
    lemma3_check,
    make_certified_route,
    make_path,
    parse_path,
    validate,
)
from vispath.errors import NoEssentialCuts, PathOutside
from vispath.geom import Location, lerp, point_in_polygon, pt
from vispath.oracle import SampleKind, edge_probes
from vispath.visibility import visible_parameters

QUARTER = SamplingConfig(mpq(1, 4), mpq(1, 400), mpq(1, 4))


def test_certify_full_path(fix_u, full_path):
    v = certify_visibility_path(fix_u, full_path)
    assert v.conclusion is Conclusion.VISIBILITY_PATH
    assert [h.first_hit_point for h in v.per_cut] == [pt(1, 0.5), pt(2, 0.5)]
    assert coverage_oracle(fix_u, full_path, QUARTER).covered


def test_certify_short_path(fix_u, short_path):
    v = certify_visibility_path(fix_u, short_path)
    assert v.conclusion is Conclusion.NOT_VISIBILITY_PATH
    assert [(c.v, c.w) for c in v.missed] == [(pt(2, 1), pt(2, 0))]
    rep = coverage_oracle(fix_u, short_path, QUARTER)
    assert any(s.point.x > 2 and s.point.y > 1 for s in rep.uncovered)


def test_convex_polygon_hits_precondition(square):
    path = make_path(square, [(0.5, 0.5)])
    v = certify_visibility_path(square, path)
    assert v.conclusion is Conclusion.PRECONDITION_STAR_SHAPED
    assert v.per_cut == ()
    assert coverage_oracle(square, path).covered


def test_star_shaped_escape_hatch(fix_l):
    path = make_path(fix_l, [(0.5, 0.5)])
    v = certify_visibility_path(fix_l, path)
    assert not any(h.hit for h in v.per_cut) and len(v.per_cut) == 2
    assert coverage_oracle(fix_l, path).covered
    assert v.conclusion is Conclusion.PRECONDITION_STAR_SHAPED


def test_path_must_stay_inside(fix_u):
    with pytest.raises(PathOutside):
        make_path(fix_u, [(0.5, 2.5), (2.5, 2.5)])
    with pytest.raises(PathOutside):
        make_path(fix_u, [(1.5, 2)])


def test_oracle_sample_kinds(fix_u, short_path):
    rep = coverage_oracle(fix_u, short_path, QUARTER)
    assert rep.count(SampleKind.BOUNDARY) > 0 and rep.count(SampleKind.INTERIOR) > 0
    assert list(rep.uncovered) == sorted(rep.uncovered, key=lambda s: s.point)


def test_default_sampling_config(fix_u):
    cfg = SamplingConfig.default(fix_u)
    assert float(cfg.grid_pitch) == pytest.approx(3 * 2 ** 0.5 / 64, rel=1e-4)
    assert cfg.grid_pitch.denominator <= 1024
    assert cfg.vertex_offset_eps == cfg.grid_pitch / 100
    with pytest.raises(ValueError):
        SamplingConfig(mpq(0), mpq(1), mpq(1))


def test_lemma1_full_path(fix_u, full_path):
    rec = lemma1_check(fix_u, full_path, QUARTER)
    assert rec.consistent and rec.boundary_uncovered == rec.interior_uncovered == 0
    assert rec.witnesses == ()


def test_lemma1_construction_on_short_path(fix_u, short_path):
    rec = lemma1_check(fix_u, short_path, QUARTER, probes=[pt(2.5, 2.5)])
    assert rec.consistent
    w = next(w for w in rec.witnesses if w.sample == (2.5, 2.5))
    # geodesic toward the path bends at (2,1); extending (2,1)->(2.5,2.5) hits the prong top
    assert w.corner == (2, 1)
    assert w.boundary_point == (mpq(8, 3), 3)
    assert w.boundary_uncovered


def test_lemma1_convex_is_vacuous(square):
    rec = lemma1_check(square, make_path(square, [(0.5, 0.5)]))
    assert rec.consistent and rec.witnesses == ()


def test_q_of_fix_u(fix_u):
    dec = kernel_subpolygon(fix_u)
    assert set(dec.q) == {(1, 0), (1, 1), (2, 1), (2, 0)}
    assert dec.reflex == ()


def test_q_of_fix_l_is_empty(fix_l):
    # both slab pockets together cover all of FIX-L
    dec = kernel_subpolygon(fix_l)
    assert dec.empty
    for x in range(1, 40):
        for y in range(1, 40):
            q = pt(mpq(x, 20), mpq(y, 20))
            if point_in_polygon(fix_l.vertices, q) is Location.INSIDE:
                assert any(c.pocket.contains_point(q) for c in dec.pockets)


def test_q_of_convex_polygon(square):
    dec = kernel_subpolygon(square)
    assert set(dec.q) == set(square.vertices)


def test_lemma3_examples(fix_u, full_path, square):
    rep = lemma3_check(fix_u, full_path)
    assert rep.passed and rep.vacuous
    assert lemma3_check(square, make_path(square, [(0.5, 0.5)])).vacuous


def test_lemma3_with_nonconvex_q():
    poly = gen_polygon(GenConfig(n=11, seed=3))
    rep = lemma3_check(poly, make_certified_route(poly))
    assert len(rep.decomposition.reflex) == 2
    assert rep.passed


def test_certified_routes(fix_u, fix_l):
    assert make_certified_route(fix_u).waypoints == (pt(1, 0.5), pt(2, 0.5))
    assert make_certified_route(fix_l).waypoints == (pt(0.5, 1), pt(1, 0.5))


def test_route_needs_cuts(square):
    with pytest.raises(NoEssentialCuts):
        make_certified_route(square)


# Generated polygon (n=9, seed=1): the negative path for the second essential
# cut stays inside that cut's pocket, never touches it, and still sees all of P.
MISS_POLY = [(40, 18), (27, 1), (35, 14), (33, 14), (18, 1), (6, 11), (14, 29), (26, 35), (28, 31)]
MISS_PATH = "2\n15803/416 18.85546875\n24113/688 5815/344\n"


def test_path_inside_missed_pocket_sees_everything():
    poly = validate(MISS_POLY)
    path = parse_path(MISS_PATH, poly)
    assert kernel(poly).empty
    cut = next(c for c in essential_cuts(poly) if c.v == (33, 14))
    verdict = certify_visibility_path(poly, path)
    assert verdict.conclusion is Conclusion.NOT_VISIBILITY_PATH
    assert [c.key for c in verdict.missed] == [cut.key]
    assert all(point_in_polygon(cut.pocket.region, p) is Location.INSIDE for p in path.waypoints)
    # exact boundary coverage: the visible intervals from 17 path points cover every edge
    a, b = path.waypoints
    pts = [lerp(a, b, mpq(k, 16)) for k in range(17)]
    for u, v in poly.edges:
        reach = mpq(0)
        for lo, hi in sorted(iv for p in pts for iv in visible_parameters(poly, p, u, v)):
            assert lo <= reach
            reach = max(reach, hi)
        assert reach == 1
    probes = [q for u, v in poly.edges for q in edge_probes(poly, u, v)]
    assert coverage_oracle(poly, path, SamplingConfig(mpq(1, 4), mpq(1, 400), mpq(1, 8)), probes).covered


def test_negative_path_fix_u(fix_u):
    left, right = essential_cuts(fix_u)
    assert gen_negative_path(fix_u, right).waypoints == (pt(1, 0.5),)
    assert gen_negative_path(fix_u, left).waypoints == (pt(2, 0.5),)
    for cut in (left, right):
        path = gen_negative_path(fix_u, cut)
        assert certify_visibility_path(fix_u, path).conclusion is Conclusion.NOT_VISIBILITY_PATH
        assert not coverage_oracle(fix_u, path).covered
