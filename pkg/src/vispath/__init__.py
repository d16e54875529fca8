"""Certify visibility paths in simple polygons via essential cuts."""

from .certify import (
    Conclusion,
    PolyPath,
    Verdict,
    certify_visibility_path,
    make_certified_route,
    make_path,
)
from .cuts import Cut, Essentiality, Pocket, classify_cuts, essential_cuts, generate_cuts, pocket_contains
from .decomposition import KernelDecomposition, kernel_subpolygon, lemma3_check
from .funnel import Funnel, GeodesicPath, Lemma2Certificate, funnel_to_cut, lemma2_certificate, shortest_path
from .formats import format_path, format_polygon, parse_path, parse_polygon
from .gen import GenConfig, gen_negative_path, gen_polygon
from .geom import Orientation, Point, Segment, orient, point_in_polygon, pt, ray_shoot, segment_intersection
from .oracle import CoverageReport, SamplingConfig, coverage_oracle, lemma1_check
from .polygon import BoundaryCoord, Kernel, Polygon, boundary_coord, kernel, reflex_vertices, validate
from .render import RenderStyle, render_png, render_svg
from .visibility import VisPolygon, path_sees_point, visibility_polygon, visible

__version__ = "0.1.0"
