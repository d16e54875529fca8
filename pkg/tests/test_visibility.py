import random

from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from vispath import GenConfig, gen_polygon, make_path, path_sees_point, validate, visibility_polygon, visible
from vispath.geom import Location, Point, lerp, point_in_polygon, pt
from vispath.visibility import visible_parameters


def _visible_by_sampling(poly, p, q, steps=400):
    """Oracle: every sample along pq lies in the closed polygon."""
    return all(point_in_polygon(poly.vertices, lerp(p, q, mpq(k, steps))) is not Location.OUTSIDE
               for k in range(steps + 1))


def test_visible_examples(fix_u):
    assert visible(fix_u, (0.5, 0.5), (0.5, 3))
    assert not visible(fix_u, (1.5, 0.5), (2.5, 3))
    assert not _visible_by_sampling(fix_u, pt(1.5, 0.5), pt(2.5, 3))
    assert visible(fix_u, (1.5, 0.5), (1.5, 0.5))


def test_grazing_counts_as_visible(fix_u):
    # passes exactly through reflex vertex (1,1)
    assert visible(fix_u, (0.5, 2), (1.5, 0))
    # runs along the notch floor
    assert visible(fix_u, (1, 1), (2, 1))


def test_visible_parameters(fix_u):
    # the ray from (0.5, 3) through corner (1, 1) lands on y = 0 at x = 1.25
    ivs = visible_parameters(fix_u, (0.5, 3), (0, 0), (3, 0))
    assert ivs == [(mpq(0), mpq(5, 12))]


def test_visibility_polygon_from_kernel_point(fix_l):
    vp = visibility_polygon(fix_l, (0.5, 0.5))
    assert vp.area == fix_l.area == 3


def test_visibility_polygon_excludes_right_prong(fix_u):
    vp = visibility_polygon(fix_u, (0.5, 2.5))
    rng = random.Random(3)
    for _ in range(200):
        q = Point(mpq(2, 1) + mpq(rng.randrange(1, 1000), 1000), mpq(1) + mpq(rng.randrange(1, 2000), 1000))
        assert not vp.contains(q)
        assert not visible(fix_u, (0.5, 2.5), q)


def test_visibility_polygon_of_convex_polygon(square):
    vp = visibility_polygon(square, (0.25, 0.75))
    assert vp.area == 1


def test_path_sees_point_examples(fix_u, full_path, short_path):
    w = path_sees_point(fix_u, full_path, (0.5, 3))
    assert w is not None and visible(fix_u, w, (0.5, 3))
    assert path_sees_point(fix_u, short_path, (2.5, 3)) is None
    assert path_sees_point(fix_u, full_path, (1.5, 0.5)) is not None


def test_short_path_blind_by_dense_sampling(fix_u):
    a, b = pt(0.5, 0.5), pt(1.5, 0.5)
    assert not any(visible(fix_u, lerp(a, b, mpq(k, 500)), (2.5, 3)) for k in range(501))


def test_path_sees_interior_point_of_segment():
    # a narrow slot above a strip: only the middle of the path looks up the slot
    poly = validate([(0, 0), (0, 1), (1.9, 1), (1.9, 3), (2.1, 3), (2.1, 1), (4, 1), (4, 0)])
    path = make_path(poly, [(0.5, 0.5), (3.5, 0.5)])
    target = pt(2, 2.9)
    assert not visible(poly, (0.5, 0.5), target) and not visible(poly, (3.5, 0.5), target)
    w = path_sees_point(poly, path, target)
    assert w is not None and visible(poly, w, target)
    assert 1.8 < w.x < 2.2


def _random_interior(poly, rng):
    x0, y0, x1, y1 = poly.bbox
    while True:
        q = Point(x0 + (x1 - x0) * mpq(rng.randrange(1, 10**6), 10**6),
                  y0 + (y1 - y0) * mpq(rng.randrange(1, 10**6), 10**6))
        if point_in_polygon(poly.vertices, q) is Location.INSIDE:
            return q


@settings(max_examples=12, deadline=None)
@given(st.integers(5, 12), st.integers(0, 5000))
def test_visibility_polygon_agrees_with_visible(n, seed):
    poly = gen_polygon(GenConfig(n=n, seed=seed, require_non_star=False))
    rng = random.Random(seed)
    p = _random_interior(poly, rng)
    vp = visibility_polygon(poly, p)
    for _ in range(40):
        q = _random_interior(poly, rng)
        assert vp.contains(q) == visible(poly, p, q)


@settings(max_examples=12, deadline=None)
@given(st.integers(5, 12), st.integers(0, 5000))
def test_visible_matches_sampling_oracle(n, seed):
    poly = gen_polygon(GenConfig(n=n, seed=seed, require_non_star=False))
    rng = random.Random(seed)
    for _ in range(10):
        p, q = _random_interior(poly, rng), _random_interior(poly, rng)
        # sampling can miss a thin obstruction but never invents one
        if visible(poly, p, q):
            assert _visible_by_sampling(poly, p, q, 200)
        assert visible(poly, p, q) == visible(poly, q, p)


@settings(max_examples=10, deadline=None)
@given(st.integers(5, 12), st.integers(0, 5000))
def test_path_witness_is_really_visible(n, seed):
    poly = gen_polygon(GenConfig(n=n, seed=seed, require_non_star=False))
    rng = random.Random(seed)
    a, b = _random_interior(poly, rng), _random_interior(poly, rng)
    if not visible(poly, a, b):
        return
    path = make_path(poly, [a, b])
    for _ in range(10):
        q = _random_interior(poly, rng)
        w = path_sees_point(poly, path, q)
        dense = any(visible(poly, lerp(a, b, mpq(k, 200)), q) for k in range(201))
        if w is not None:
            assert visible(poly, w, q)
        else:
            assert not dense
