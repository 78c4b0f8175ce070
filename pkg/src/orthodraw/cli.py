"""Command-line interface.

Subcommands: ``draw`` runs the full pipeline on one graph file, ``gen``
emits random test instances, ``bench`` sweeps an instance grid and writes
metric and internals tables, ``metrics`` recomputes metrics from saved
artifacts, and ``fixtures`` writes the bundled example inputs.

Every flag can also be set through an environment variable prefixed with
``ORTHODRAW_`` (for example ``ORTHODRAW_DRAW_SEED``).  Exit codes: 0
success, 2 unparseable input, 3 iteration cap exceeded.
"""

from __future__ import annotations

import json
import pathlib
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import click

from . import metrics as metrics_mod
from .graph import (
    Graph,
    GraphError,
    generate_random_deg4,
    hard_family,
    parse_edge_list,
    parse_gml,
    to_edge_list,
)
from .layout import assign_coordinates, drawing_to_json_dict, straighten_report, validate_drawing
from .pipeline import IterationLimitError, PipelineConfig, run_sm
from .svg import drawing_to_svg, scatter_svg

EXIT_PARSE = 2
EXIT_ITERATION_CAP = 3


def main(argv=None):
    try:
        return cli.main(args=argv, standalone_mode=True, auto_envvar_prefix="ORTHODRAW")
    except SystemExit:
        raise


@click.group()
def cli():
    """Orthogonal graph drawing via SAT-guided shape search."""


def _load_graph(path: str) -> Graph:
    text = pathlib.Path(path).read_text()
    try:
        if path.endswith(".gml"):
            g, _ = parse_gml(text)
            return g
        return parse_edge_list(text)
    except GraphError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _run_instance(g: Graph, max_subdivisions, omit_timing: bool):
    t0 = time.perf_counter()
    report = run_sm(g, PipelineConfig(max_subdivisions=max_subdivisions))
    drawing = assign_coordinates(report.graph, report.shape)
    elapsed = 0.0 if omit_timing else time.perf_counter() - t0
    validate_drawing(report.graph, report.shape, drawing)
    mr = metrics_mod.compute_metrics(report.graph, drawing, elapsed)
    return report, drawing, mr


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--format", "formats", type=click.Choice(["svg", "json", "csv"]), multiple=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-subdivisions", type=int, default=None)
def draw(input_file, out, formats, seed, max_subdivisions):
    """Draw one graph: emits drawing JSON, SVG and a metrics file."""
    g = _load_graph(input_file)
    try:
        report, drawing, mr = _run_instance(g, max_subdivisions, omit_timing=False)
    except IterationLimitError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_ITERATION_CAP)
    outdir = pathlib.Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = pathlib.Path(input_file).stem
    formats = formats or ("svg", "json", "csv")
    if "json" in formats:
        payload = drawing_to_json_dict(report.graph, drawing)
        payload["log"] = report.log_lines
        payload["counters"] = {
            "cycles_added": report.counters.cycles_added,
            "dummies_added": report.counters.dummies_added,
            "sat_invocations": report.counters.sat_invocations,
        }
        (outdir / f"{stem}.drawing.json").write_text(json.dumps(payload, indent=2) + "\n")
        (outdir / f"{stem}.metrics.json").write_text(
            json.dumps(metrics_mod.report_to_json_dict(mr), indent=2) + "\n"
        )
    if "svg" in formats:
        (outdir / f"{stem}.svg").write_text(
            drawing_to_svg(report.graph, report.shape, drawing)
        )
    if "csv" in formats:
        (outdir / f"{stem}.metrics.csv").write_text(metrics_mod.reports_to_csv({stem: mr}))
    click.echo(
        f"{stem}: {report.counters.dummies_added} dummies, "
        f"{report.counters.cycles_added} cycles added, "
        f"{report.counters.sat_invocations} SAT calls"
    )


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--density", type=float, default=1.5, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def gen(n, density, seed, out):
    """Generate a random connected max-degree-4 graph as an edge list."""
    try:
        g = generate_random_deg4(n, density, seed)
    except GraphError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    text = to_edge_list(g)
    if out:
        pathlib.Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _bench_one(args):
    n, density, seed, max_subdivisions, omit_timing = args
    g = generate_random_deg4(n, density, seed)
    report, drawing, mr = _run_instance(g, max_subdivisions, omit_timing)
    sr = straighten_report(report.graph, drawing)
    internals = {
        "cycles_added": report.counters.cycles_added,
        "dummies": report.counters.dummies_added,
        "dummies_as_bends": len(sr.bent),
        "sat_invocations": report.counters.sat_invocations,
        "seconds": mr.time_seconds,
    }
    return f"n{n}_d{density}_s{seed}", mr, internals


@cli.command()
@click.option("--n-min", type=int, default=20, show_default=True)
@click.option("--n-max", type=int, default=40, show_default=True)
@click.option("--n-step", type=int, default=5, show_default=True)
@click.option("--densities", default="1.25,1.5,1.75", show_default=True)
@click.option("--seeds", type=int, default=5, show_default=True, help="instances per grid cell")
@click.option("--seed", type=int, required=True, help="base seed")
@click.option("--out", type=click.Path(file_okay=False), required=True)
@click.option("--max-subdivisions", type=int, default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--omit-timing", is_flag=True, help="zero the seconds column for reproducible output")
def bench(n_min, n_max, n_step, densities, seeds, seed, out, max_subdivisions, jobs, omit_timing):
    """Sweep an instance grid; writes metrics.csv, internals.csv and a scatter SVG."""
    density_values = [float(x) for x in densities.split(",") if x]
    tasks = []
    k = 0
    for n in range(n_min, n_max + 1, n_step):
        for d in density_values:
            for _ in range(seeds):
                tasks.append((n, d, seed + k, max_subdivisions, omit_timing))
                k += 1
    try:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_bench_one, tasks))
        else:
            results = [_bench_one(t) for t in tasks]
    except IterationLimitError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_ITERATION_CAP)
    outdir = pathlib.Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    reports = {name: mr for name, mr, _ in results}
    (outdir / "metrics.csv").write_text(metrics_mod.reports_to_csv(reports))
    internal_cols = ("cycles_added", "dummies", "dummies_as_bends", "sat_invocations", "seconds")
    lines = ["instance," + ",".join(internal_cols)]
    for name, _, internals in sorted(results):
        lines.append(name + "," + ",".join(str(internals[c]) for c in internal_cols))
    (outdir / "internals.csv").write_text("\n".join(lines) + "\n")
    points = [(mr.area, mr.bends) for _, mr, _ in results]
    (outdir / "scatter_area_bends.svg").write_text(scatter_svg(points, "area", "bends"))
    click.echo(f"{len(results)} instances -> {outdir}")


@cli.command("metrics")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--gap-small", type=float, default=metrics_mod.GAP_SMALL, show_default=True)
@click.option("--gap-column", type=float, default=metrics_mod.GAP_COLUMN, show_default=True)
def metrics_cmd(input_file, gap_small, gap_column):
    """Metrics of a saved artifact.

    Accepts a GML file with vertex coordinates; the coordinates are snapped
    to the grid first and bounding-box statistics reported.
    """
    text = pathlib.Path(input_file).read_text()
    if not input_file.endswith(".gml"):
        click.echo("error: expected a .gml file with coordinates", err=True)
        sys.exit(EXIT_PARSE)
    try:
        g, coords = parse_gml(text)
        if len(coords) != g.num_vertices:
            raise GraphError("GML file lacks coordinates for some vertices")
        nd = metrics_mod.normalize_external(
            [(v, x, y) for v, (x, y) in sorted(coords.items())],
            gap_small=gap_small,
            gap_column=gap_column,
        )
    except (GraphError, metrics_mod.MetricsError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    w, h = nd.width_height()
    click.echo(json.dumps({"area": nd.area, "width": w, "height": h}, indent=2))


@cli.command()
@click.option("--out", type=click.Path(file_okay=False), required=True)
def fixtures(out):
    """Write the bundled example inputs (C4, K4, adversarial instances)."""
    outdir = pathlib.Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    k4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    (outdir / "c4.edges").write_text(to_edge_list(c4))
    (outdir / "k4.edges").write_text(to_edge_list(k4))
    for i in (1, 2):
        g, _ = hard_family(i)
        (outdir / f"hard{i}.edges").write_text(to_edge_list(g))
    click.echo(f"fixtures -> {outdir}")


if __name__ == "__main__":
    main()
