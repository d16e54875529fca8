import random

from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from vispath import (
    Essentiality,
    GenConfig,
    classify_cuts,
    essential_cuts,
    gen_polygon,
    generate_cuts,
    pocket_contains,
    ray_shoot,
)
from vispath.cuts import pocket_contains_sampled
from vispath.geom import Location, Point, point_in_polygon, sub


def _segments(cuts):
    return {(c.v, c.w) for c in cuts}


def _cut(poly, v, w):
    return next(c for c in classify_cuts(poly) if (c.v, c.w) == (v, w))


def _region_oracle(poly, cut, inside, trials=300, seed=0):
    """Sample P; a sample is in the pocket iff ``inside`` says so."""
    rng = random.Random(seed)
    x0, y0, x1, y1 = poly.bbox
    for _ in range(trials):
        q = Point(x0 + (x1 - x0) * mpq(rng.randrange(1, 997), 997), y0 + (y1 - y0) * mpq(rng.randrange(1, 991), 991))
        if point_in_polygon(poly.vertices, q) is not Location.INSIDE:
            continue
        assert cut.pocket.contains_point(q) == inside(q), q


def test_fix_l_cuts(fix_l):
    cuts = generate_cuts(fix_l)
    assert _segments(cuts) == {((1, 1), (1, 0)), ((1, 1), (0, 1))}
    left = _cut(fix_l, (1, 1), (1, 0))
    bottom = _cut(fix_l, (1, 1), (0, 1))
    _region_oracle(fix_l, left, lambda q: q.x < 1)
    _region_oracle(fix_l, bottom, lambda q: q.y < 1)


def test_fix_u_cuts(fix_u):
    assert _segments(generate_cuts(fix_u)) == {
        ((1, 1), (1, 0)), ((1, 1), (0, 1)), ((2, 1), (3, 1)), ((2, 1), (2, 0))}


def test_cut_endpoints_come_from_ray_shooting(fix_u):
    for c in generate_cuts(fix_u):
        assert ray_shoot(fix_u, c.v, sub(c.v, c.u)).point == c.w


def test_convex_polygon_has_no_cuts(square):
    assert generate_cuts(square) == ()
    assert essential_cuts(square) == []


def test_pocket_containment_fix_u(fix_u):
    left = _cut(fix_u, (1, 1), (1, 0))
    right = _cut(fix_u, (2, 1), (2, 0))
    big = _cut(fix_u, (2, 1), (3, 1))
    # big is everything except the right prong, so it holds the left slab
    _region_oracle(fix_u, big, lambda q: not (q.x > 2 and q.y > 1))
    assert pocket_contains(big.pocket, left.pocket)
    assert pocket_contains_sampled(big.pocket, left.pocket)
    assert not pocket_contains(left.pocket, right.pocket)
    assert not pocket_contains(right.pocket, left.pocket)
    assert not pocket_contains_sampled(left.pocket, right.pocket)
    assert not pocket_contains(left.pocket, left.pocket)


def test_essential_fix_l(fix_l):
    assert all(c.essential is Essentiality.ESSENTIAL for c in classify_cuts(fix_l))
    assert len(essential_cuts(fix_l)) == 2


def test_essential_fix_u(fix_u):
    assert _segments(essential_cuts(fix_u)) == {((1, 1), (1, 0)), ((2, 1), (2, 0))}
    redundant = [c for c in classify_cuts(fix_u) if c.essential is Essentiality.REDUNDANT]
    assert _segments(redundant) == {((1, 1), (0, 1)), ((2, 1), (3, 1))}


def _right_of_cut_is_pocket(c):
    # the pocket may wrap around past the cut's line, so probe next to it
    tail, head = c.direction
    m = c.midpoint
    d = sub(head, tail)
    eps = mpq(1, 10**6)
    right = Point(m.x + d.y * eps, m.y - d.x * eps)
    left = Point(m.x - d.y * eps, m.y + d.x * eps)
    return c.pocket.contains_point(right) and not c.pocket.contains_point(left)


def test_pocket_lies_right_of_direction(fix_u):
    for c in classify_cuts(fix_u):
        assert set(c.direction) == {c.v, c.w}
        assert _right_of_cut_is_pocket(c)
        assert c.u in c.pocket.region


@settings(max_examples=20, deadline=None)
@given(st.integers(6, 14), st.integers(0, 10_000))
def test_interval_filter_matches_sampling_oracle(n, seed):
    poly = gen_polygon(GenConfig(n=n, seed=seed, require_non_star=False))
    cuts = classify_cuts(poly)
    for a in cuts:
        for b in cuts:
            if a is not b:
                assert pocket_contains(a.pocket, b.pocket) == pocket_contains_sampled(a.pocket, b.pocket, count=60)


@settings(max_examples=20, deadline=None)
@given(st.integers(6, 14), st.integers(0, 10_000))
def test_cut_invariants(n, seed):
    poly = gen_polygon(GenConfig(n=n, seed=seed, require_non_star=False))
    for c in classify_cuts(poly):
        assert poly.reflex[c.v_index]
        assert ray_shoot(poly, c.v, sub(c.v, c.u)).point == c.w
        assert _right_of_cut_is_pocket(c)
        assert c.pocket.arc_contains(c.pocket.start) and c.pocket.arc_contains(c.pocket.end)
