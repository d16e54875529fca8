"""Command-line interface.

Plain output is tab-delimited, one record per line, with a header line.
``--json`` switches to JSON on standard output. Exit codes: 0 visibility
path (or check passed), 1 not a visibility path (or check failed),
2 precondition failure, 3 input error.
"""
from __future__ import annotations

import os
import sys
from typing import Callable

import click

from . import formats
from .certify import Conclusion, PolyPath, certify_visibility_path, make_certified_route
from .cuts import classify_cuts, essential_cuts
from .decomposition import kernel_subpolygon, lemma3_check
from .errors import Falsification, InputError, VispathError
from .funnel import lemma2_certificate
from .gen import GenConfig, gen_polygon
from .geom import fmt, rational
from .oracle import SamplingConfig, coverage_oracle, lemma1_check
from .polygon import Polygon, kernel
from .render import RenderStyle, render_png, render_svg

SEED_ENV = "VISPATH_SEED"

EXIT_OK, EXIT_NOT, EXIT_PRECONDITION, EXIT_INPUT = 0, 1, 2, 3


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise click.BadParameter(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    try:
        with open(name, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{name}: {e.strerror}") from None


def _load_poly(name: str) -> Polygon:
    poly = formats.parse_polygon(_read(name))
    if poly.was_reversed:
        click.echo("note: polygon given counterclockwise; reversed to clockwise", err=True)
    return poly


def _load_path(name: str, poly: Polygon) -> PolyPath:
    return formats.parse_path(_read(name), poly)


def _pt(p) -> str:
    return "-" if p is None else f"({fmt(p.x)}, {fmt(p.y)})"


def _emit_json(doc) -> None:
    click.echo(formats.dumps(doc), nl=False)


def _emit_rows(header: list[str], rows: list[list]) -> None:
    click.echo("\t".join(header))
    for r in rows:
        click.echo("\t".join(str(x) for x in r))


def _run(fn: Callable[[], int]) -> None:
    """Run a command body and turn library errors into exit codes."""
    try:
        code = fn()
    except InputError as e:
        click.echo(f"error [{e.code}]: {e}", err=True)
        sys.exit(EXIT_INPUT)
    except Falsification as e:
        click.echo(f"falsified [{e.code}]: {e}", err=True)
        sys.exit(EXIT_NOT)
    except VispathError as e:
        click.echo(f"error [{e.code}]: {e}", err=True)
        sys.exit(EXIT_PRECONDITION)
    sys.exit(code or 0)


def _sampling(poly: Polygon, pitch, eps, spacing, seed) -> SamplingConfig:
    base = SamplingConfig.default(poly, seed if seed is not None else _default_seed())
    return SamplingConfig(
        rational(pitch) if pitch else base.grid_pitch,
        rational(eps) if eps else base.vertex_offset_eps,
        rational(spacing) if spacing else base.boundary_spacing,
        base.seed,
    )


def sampling_options(f):
    f = click.option("--seed", type=int, default=None, help=f"Sampling seed (default ${SEED_ENV} or 0).")(f)
    f = click.option("--spacing", default=None, help="Boundary sample spacing.")(f)
    f = click.option("--eps", default=None, help="Inward offset at vertices.")(f)
    f = click.option("--pitch", default=None, help="Interior grid pitch (default: bbox diagonal / 64).")(f)
    return f


json_option = click.option("--json", "as_json", is_flag=True, help="Write the report as JSON.")
figure_option = click.option("--figure", type=click.Path(dir_okay=False), default=None,
                             help="Also write a PNG figure to this file.")


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Certify visibility paths in simple polygons."""


@main.command()
@click.argument("polygon")
@json_option
def cuts(polygon, as_json):
    """List every cut with its essential/redundant flag."""

    def body():
        poly = _load_poly(polygon)
        cs = classify_cuts(poly)
        if as_json:
            _emit_json({"cuts": [formats.cut_json(c) for c in cs]})
        else:
            _emit_rows(["v", "w", "u", "status", "pocket_start", "pocket_end"],
                       [[_pt(c.v), _pt(c.w), _pt(c.u), c.essential.value,
                         f"{c.pocket.start.edge}:{fmt(c.pocket.start.frac)}",
                         f"{c.pocket.end.edge}:{fmt(c.pocket.end.frac)}"] for c in cs])
        return EXIT_OK

    _run(body)


@main.command()
@click.argument("polygon")
@json_option
def essential(polygon, as_json):
    """List the essential (nonredundant) cuts."""

    def body():
        poly = _load_poly(polygon)
        cs = essential_cuts(poly)
        if as_json:
            _emit_json({"essential_cuts": [formats.cut_json(c) for c in cs]})
        else:
            _emit_rows(["v", "w", "u"], [[_pt(c.v), _pt(c.w), _pt(c.u)] for c in cs])
        return EXIT_OK

    _run(body)


@main.command()
@click.argument("polygon")
@click.argument("path")
@json_option
@figure_option
@sampling_options
def certify(polygon, path, as_json, figure, pitch, eps, spacing, seed):
    """Decide whether PATH is a visibility path by the essential-cut test.

    For star-shaped polygons the test does not apply: the oracle result is
    reported instead and the exit code is 2.
    """

    def body():
        poly = _load_poly(polygon)
        p = _load_path(path, poly)
        verdict = certify_visibility_path(poly, p)
        report = None
        if verdict.conclusion is Conclusion.PRECONDITION_STAR_SHAPED:
            report = coverage_oracle(poly, p, _sampling(poly, pitch, eps, spacing, seed))
        if as_json:
            doc = {"verdict": formats.verdict_json(verdict)}
            if report is not None:
                doc["oracle"] = formats.coverage_json(report)
            _emit_json(doc)
        else:
            _emit_rows(["cut_v", "cut_w", "hit", "first_hit"],
                       [[_pt(h.cut.v), _pt(h.cut.w), "yes" if h.hit else "no", _pt(h.first_hit_point)]
                        for h in verdict.per_cut])
            click.echo(f"conclusion\t{verdict.conclusion.value}")
            if report is not None:
                click.echo(f"oracle_uncovered\t{len(report.uncovered)}\tof\t{report.samples_total}")
        if figure:
            render_png(figure, poly, classify_cuts(poly), p, report, title=verdict.conclusion.value)
        return {
            Conclusion.VISIBILITY_PATH: EXIT_OK,
            Conclusion.NOT_VISIBILITY_PATH: EXIT_NOT,
            Conclusion.PRECONDITION_STAR_SHAPED: EXIT_PRECONDITION,
        }[verdict.conclusion]

    _run(body)


@main.command()
@click.argument("polygon")
@click.argument("path")
@json_option
@figure_option
@sampling_options
def oracle(polygon, path, as_json, figure, pitch, eps, spacing, seed):
    """Sample the polygon and list samples the path does not see."""

    def body():
        poly = _load_poly(polygon)
        p = _load_path(path, poly)
        report = coverage_oracle(poly, p, _sampling(poly, pitch, eps, spacing, seed))
        if as_json:
            _emit_json(formats.coverage_json(report))
        else:
            _emit_rows(["x", "y", "kind"], [[fmt(s.point.x), fmt(s.point.y), s.kind.value] for s in report.uncovered])
            click.echo(f"uncovered\t{len(report.uncovered)}\tof\t{report.samples_total}")
        if figure:
            render_png(figure, poly, classify_cuts(poly), p, report,
                       title=f"{len(report.uncovered)} uncovered of {report.samples_total}")
        return EXIT_OK if report.covered else EXIT_NOT

    _run(body)


@main.command()
@click.argument("polygon")
@click.argument("path")
@json_option
@sampling_options
def lemma1(polygon, path, as_json, pitch, eps, spacing, seed):
    """Check that seeing the boundary implies seeing the interior."""

    def body():
        poly = _load_poly(polygon)
        p = _load_path(path, poly)
        rec = lemma1_check(poly, p, _sampling(poly, pitch, eps, spacing, seed))
        if as_json:
            _emit_json(formats.lemma1_json(rec))
        else:
            _emit_rows(["sample", "corner", "boundary_point", "boundary_unseen"],
                       [[_pt(w.sample), _pt(w.corner), _pt(w.boundary_point), "yes" if w.boundary_uncovered else "no"]
                        for w in rec.witnesses])
            click.echo(f"boundary_uncovered\t{rec.boundary_uncovered}")
            click.echo(f"interior_uncovered\t{rec.interior_uncovered}")
            for msg in rec.falsifications:
                click.echo(f"falsified\t{msg}")
            click.echo(f"consistent\t{'yes' if rec.consistent else 'no'}")
        return EXIT_OK if rec.consistent else EXIT_NOT

    _run(body)


@main.command()
@click.argument("polygon")
@click.argument("path")
@json_option
def lemma2(polygon, path, as_json):
    """Find a seeing path point for every vertex of every essential pocket."""

    def body():
        poly = _load_poly(polygon)
        p = _load_path(path, poly)
        verdict = certify_visibility_path(poly, p)
        if verdict.missed:
            click.echo(f"error: path misses {len(verdict.missed)} essential cut(s)", err=True)
            return EXIT_PRECONDITION
        ess = essential_cuts(poly)
        certs, failures = [], []
        for c in ess:
            for x in c.pocket.region:
                try:
                    certs.append(lemma2_certificate(poly, ess, p, c, x))
                except Falsification as e:
                    failures.append((c, x, str(e)))
        if as_json:
            _emit_json({
                "certificates": [formats.certificate_json(c) for c in certs],
                "failures": [{"cut": [formats.point_json(c.v), formats.point_json(c.w)],
                              "vertex": formats.point_json(x), "error": msg} for c, x, msg in failures],
            })
        else:
            _emit_rows(["cut_v", "cut_w", "x", "case", "applied", "witness"],
                       [[_pt(c.cut.v), _pt(c.cut.w), _pt(c.vertex), c.case_tag.value, c.applied_case, _pt(c.witness)]
                        for c in certs])
            for c, x, msg in failures:
                click.echo(f"NO_WITNESS\t{_pt(c.v)}\t{_pt(c.w)}\t{_pt(x)}")
        return EXIT_NOT if failures else EXIT_OK

    _run(body)


@main.command()
@click.argument("polygon")
@click.argument("path")
@json_option
def lemma3(polygon, path, as_json):
    """Check the reflex vertices of Q against the path."""

    def body():
        poly = _load_poly(polygon)
        p = _load_path(path, poly)
        rep = lemma3_check(poly, p)
        if as_json:
            _emit_json(formats.lemma3_json(rep))
        else:
            _emit_rows(["q_reflex_vertex", "ok", "reason"],
                       [[_pt(v), "yes" if ok else "no", why] for v, ok, why in rep.vertex_results])
            for msg in rep.falsifications:
                click.echo(f"falsified\t{msg}")
            click.echo(f"passed\t{'yes' if rep.passed else 'no'}")
        return EXIT_OK if rep.passed else EXIT_NOT

    _run(body)


@main.command("kernel")
@click.argument("polygon")
@json_option
def kernel_cmd(polygon, as_json):
    """Print the kernel polygon (empty when not star-shaped)."""

    def body():
        k = kernel(_load_poly(polygon))
        if as_json:
            _emit_json(formats.kernel_json(k))
        else:
            _emit_rows(["x", "y"], [[fmt(p.x), fmt(p.y)] for p in k.region])
            click.echo(f"empty\t{'yes' if k.empty else 'no'}")
        return EXIT_OK

    _run(body)


@main.command("q-subpolygon")
@click.argument("polygon")
@json_option
def q_subpolygon(polygon, as_json):
    """Print what remains after removing every essential pocket."""

    def body():
        dec = kernel_subpolygon(_load_poly(polygon))
        if as_json:
            _emit_json(formats.decomposition_json(dec))
        else:
            _emit_rows(["x", "y"], [[fmt(p.x), fmt(p.y)] for p in dec.q or ()])
            click.echo(f"empty\t{'yes' if dec.empty else 'no'}")
            click.echo(f"reflex_vertices\t{len(dec.reflex)}")
        return EXIT_OK

    _run(body)


@main.command()
@click.argument("polygon")
@json_option
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write the path file here.")
def route(polygon, as_json, output):
    """Build a path through the midpoints of all essential cuts."""

    def body():
        p = make_certified_route(_load_poly(polygon))
        text = formats.format_path(p)
        if output:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
        if as_json:
            _emit_json({"waypoints": formats.points_json(p.waypoints)})
        elif not output:
            click.echo(text, nl=False)
        return EXIT_OK

    _run(body)


@main.command()
@click.option("--n", "n", type=int, default=12, show_default=True, help="Vertex count.")
@click.option("--seed", type=int, default=None, help=f"Seed (default ${SEED_ENV} or 0).")
@click.option("--non-star/--allow-star", default=True, show_default=True, help="Reject star-shaped polygons.")
@click.option("--coordinate-range", type=int, default=40, show_default=True)
@click.option("--max-retries", type=int, default=200, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def gen(n, seed, non_star, coordinate_range, max_retries, output):
    """Generate a random simple polygon in the polygon text format."""

    def body():
        try:
            cfg = GenConfig(n, seed if seed is not None else _default_seed(), coordinate_range, non_star, max_retries)
        except ValueError as e:
            raise InputError(str(e)) from None
        text = formats.format_polygon(gen_polygon(cfg))
        if output:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            click.echo(text, nl=False)
        return EXIT_OK

    _run(body)


@main.command()
@click.argument("polygon")
@click.option("--path", "path_file", default=None, help="Path file to draw.")
@click.option("--oracle/--no-oracle", "with_oracle", default=False, help="Mark samples the path misses.")
@click.option("--cut-color", default="red", show_default=True)
@click.option("--path-color", default="blue", show_default=True)
@click.option("--essential-only", is_flag=True)
@click.option("--show-pockets", is_flag=True)
@click.option("--scale", default="20", show_default=True, help="SVG units per polygon unit.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="SVG file (default stdout).")
@figure_option
@sampling_options
def render(polygon, path_file, with_oracle, cut_color, path_color, essential_only, show_pockets, scale,
           output, figure, pitch, eps, spacing, seed):
    """Draw the polygon, its cuts and an optional path as SVG."""

    def body():
        poly = _load_poly(polygon)
        p = _load_path(path_file, poly) if path_file else None
        try:
            style = RenderStyle(cut_color, path_color, essential_only, show_pockets, rational(scale))
        except ValueError as e:
            raise InputError(str(e)) from None
        report = None
        if with_oracle and p is not None:
            report = coverage_oracle(poly, p, _sampling(poly, pitch, eps, spacing, seed))
        cs = classify_cuts(poly)
        svg = render_svg(poly, cs, p, report, style)
        if output:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(svg)
        else:
            click.echo(svg, nl=False)
        if figure:
            render_png(figure, poly, cs, p, report, style)
        return EXIT_OK

    _run(body)


if __name__ == "__main__":
    main()
