import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIX_L, FIX_U, SQUARE
from vispath import GenConfig, gen_polygon, kernel, reflex_vertices, validate, visible
from vispath.errors import Degenerate, NotOnBoundary, NotSimple, TooFewVertices
from vispath.geom import pt
from vispath.polygon import BoundaryCoord, boundary_coord, is_star_shaped


def test_validate_fix_l(fix_l):
    assert fix_l.n == 6
    assert len(reflex_vertices(fix_l)) == 1


def test_validate_square_has_no_reflex(square):
    assert reflex_vertices(square) == []


def test_bowtie_is_rejected():
    with pytest.raises(NotSimple):
        validate([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_bad_inputs():
    with pytest.raises(TooFewVertices):
        validate([(0, 0), (1, 1)])
    with pytest.raises(Degenerate):
        validate([(0, 0), (0, 1), (0, 2), (1, 0)])
    with pytest.raises(Degenerate):
        validate([(0, 0), (0, 1), (1, 1), (0, 1)])


def test_counterclockwise_input_is_reversed():
    poly = validate(list(reversed(FIX_L)))
    assert poly.was_reversed
    assert poly.vertices[0] == (2, 0)
    assert poly == validate(FIX_L[-1:] + FIX_L[:-1])


def test_reflex_indices(fix_l, fix_u):
    assert reflex_vertices(fix_l) == [3]
    assert [fix_u.vertices[i] for i in reflex_vertices(fix_u)] == [(1, 1), (2, 1)]


def test_boundary_coord_examples(fix_l):
    assert boundary_coord(fix_l, pt(0, 0)) == BoundaryCoord(0, mpq(0))
    assert boundary_coord(fix_l, pt(0, 1)).arc_length(fix_l) == 1
    assert boundary_coord(fix_l, pt(1, 2)).arc_length(fix_l) == 3
    with pytest.raises(NotOnBoundary):
        boundary_coord(fix_l, pt(0.5, 0.5))


def test_boundary_coord_orders_like_arc_length(fix_u):
    pts = [pt(0, 1), pt(0, 3), pt(1, 2), pt(1.5, 1), pt(3, 0.5), pt(0.5, 0)]
    bcs = [boundary_coord(fix_u, p) for p in pts]
    assert bcs == sorted(bcs)
    lengths = [bc.arc_length(fix_u) for bc in bcs]
    assert lengths == sorted(lengths)
    assert [bc.point(fix_u) for bc in bcs] == pts


def test_kernel_fix_l_is_unit_square(fix_l):
    k = kernel(fix_l)
    assert set(k.region) == {(0, 0), (0, 1), (1, 1), (1, 0)}


def test_kernel_fix_u_is_empty(fix_u):
    assert kernel(fix_u).empty
    assert not is_star_shaped(fix_u)


def test_kernel_of_convex_polygon_is_itself(square):
    assert set(kernel(square).region) == set(square.vertices)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 12), st.integers(0, 10_000))
def test_kernel_corners_see_every_vertex(n, seed):
    poly = gen_polygon(GenConfig(n=n, seed=seed, require_non_star=False))
    for k in kernel(poly).region:
        assert all(visible(poly, k, v) for v in poly.vertices)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 14), st.integers(0, 10_000))
def test_generated_polygons_validate(n, seed):
    poly = gen_polygon(GenConfig(n=n, seed=seed, require_non_star=False))
    assert validate(poly.vertices) == poly
    assert poly.area > 0
