"""Batch command-line interface.

Graphs are passed either as an edge-list file (header ``n m``, then one
``u v`` line per edge) or as a family spec string such as ``complete:23``,
``er:100:0.05:7``, or ``gadget:30:30:3``. Every run that writes an output
file also writes ``<out>.manifest.json`` beside it with the echoed
configuration, library version, and wall time.

Exit codes: 0 ok, 1 failed comparison, 2 usage error, 3 enumeration or size
gate exceeded, 4 numerical failure.
"""
from __future__ import annotations

import functools
import json
import math
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import click
import numpy as np

from . import __version__, census, colorsim, extremal, limits, moments, spectral, stats
from .errors import (
    AmbiguousRegimeError,
    ColorGraphError,
    ConvergenceFailureError,
    DomainExceededError,
    GateExceededError,
    GenerationTimeoutError,
)
from .graph import (
    GaltonWatson,
    Graph,
    generate,
    mean_offspring,
    parse_edge_list_text,
    parse_family,
    to_edge_list_text,
)

EXIT_USAGE = 2
EXIT_GATE = 3
EXIT_NUMERICAL = 4

_NUMERICAL_ERRORS = (
    ConvergenceFailureError,
    GenerationTimeoutError,
    DomainExceededError,
    AmbiguousRegimeError,
)


def _guarded(fn):
    """Map library errors onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GateExceededError as exc:
            click.echo(f"gate exceeded: {exc}", err=True)
            sys.exit(EXIT_GATE)
        except _NUMERICAL_ERRORS as exc:
            click.echo(f"numerical failure: {exc}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except (ColorGraphError, ValueError) as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


def _load_graph(source: str) -> Graph:
    path = Path(source)
    if path.exists():
        return parse_edge_list_text(path.read_text())
    spec = parse_family(source)
    if isinstance(spec, GaltonWatson) and mean_offspring(spec) <= 1.0:
        click.echo(
            f"warning: offspring mean {mean_offspring(spec):.4g} <= 1; "
            "the tree stays small with high probability",
            err=True,
        )
    return generate(spec)


def _default_workers() -> int:
    env = os.environ.get("COLORGRAPH_WORKERS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _emit(text: str, out: str | None, command: str, config: dict, started: float) -> None:
    """Write output to a file (with manifest beside it) or to stdout."""
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    path = Path(out)
    path.write_text(text if text.endswith("\n") else text + "\n")
    manifest = {
        "schema": "colorgraph.manifest/1",
        "command": command,
        "config": config,
        "version": __version__,
        "wall_time_seconds": round(time.time() - started, 6),
        "outputs": [str(path)],
    }
    Path(str(path) + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _json_doc(kind: str, payload: dict) -> str:
    return json.dumps({"schema": f"colorgraph.{kind}/1", **payload}, indent=2)


graph_option = click.option(
    "--graph", "graph_source", required=True, metavar="FILE|FAMILY",
    help="Edge-list file or family spec (complete:n, bipartite:a:b, star:leaves, "
    "path:edges, cycle:g, hypercube:s, er:n:p:seed, regular:n:d:seed, "
    "gw:p0,p1,...:height:seed, gadget:a:b:g).",
)
out_option = click.option("--out", default=None, metavar="PATH", help="Output file; manifest written beside it.")


@click.group()
@click.version_option(version=__version__, prog_name="colorgraph")
def main():
    """Monochromatic-subgraph statistics of uniform random colorings."""


# -- generate -----------------------------------------------------------------


@main.command()
@click.option("--family", default=None, metavar="FAMILY", help="Family spec string.")
@click.option("--kernel-csv", default=None, metavar="PATH",
              help="CSV grid of edge probabilities for an inhomogeneous graph (alternative to --family).")
@click.option("--seed", default=None, type=int, help="Seed for --kernel-csv mode.")
@out_option
@_guarded
def generate_cmd(family, kernel_csv, seed, out):
    """Generate a graph and emit its edge list."""
    started = time.time()
    if (family is None) == (kernel_csv is None):
        raise click.UsageError("pass exactly one of --family or --kernel-csv")
    if kernel_csv is not None:
        from .graph import Inhomogeneous

        grid = np.loadtxt(kernel_csv, delimiter=",", ndmin=2)
        if seed is None:
            raise click.UsageError("--kernel-csv requires --seed")
        spec = Inhomogeneous(grid.shape[0], tuple(map(tuple, grid.tolist())), seed)
        g = generate(spec)
    else:
        g = _load_graph(family)
    _emit(to_edge_list_text(g), out, "generate",
          {"family": family, "kernel_csv": kernel_csv, "seed": seed}, started)


main.add_command(generate_cmd, name="generate")


# -- census --------------------------------------------------------------------


@main.command()
@graph_option
@click.option("--tuples", "k", default=2, show_default=True, type=int,
              help="Ordered edge-tuple length to classify.")
@click.option("--cycles/--no-cycles", default=False, help="Include cycle counts for g = 3..8.")
@out_option
@_guarded
def census_cmd(graph_source, k, cycles, out):
    """Classify ordered edge tuples by multigraph class; optionally count cycles."""
    started = time.time()
    g = _load_graph(graph_source)
    table = census.count_multigraph_tuples(g, k)
    patterns = {
        pat.key_string(): {"count": cnt, "description": pat.describe()}
        for pat, cnt in sorted(table.items(), key=lambda kv: kv[0].canonical_key)
    }
    payload = {"n": g.n, "m": g.m, "tuple_length": k, "patterns": patterns}
    if cycles:
        payload["cycles"] = {str(length): census.count_cycles(g, length) for length in range(3, 9)}
    _emit(_json_doc("census", payload), out, "census",
          {"graph": graph_source, "tuples": k, "cycles": cycles}, started)


main.add_command(census_cmd, name="census")


# -- extremal --------------------------------------------------------------------


@main.command()
@graph_option
@out_option
@_guarded
def extremal_cmd(graph_source, out):
    """Fractional stable number, deficiency, and structure flags."""
    started = time.time()
    g = _load_graph(graph_source)
    sol = extremal.gamma(g)
    delta = extremal.deficiency(g)
    report = extremal.structural_check(sol, g)
    v0, vhalf, v1 = sol.partition
    payload = {
        "gamma": str(sol.gamma),
        "delta": delta,
        "phi": [str(p) for p in sol.phi],
        "partition_sizes": {"zero": len(v0), "half": len(vhalf), "one": len(v1)},
        "structure": {
            "saturating_matching": report.saturating_matching,
            "half_part_spanning": report.half_part_spanning,
            "union_of_stars": report.union_of_stars,
        },
    }
    _emit(_json_doc("extremal", payload), out, "extremal", {"graph": graph_source}, started)


main.add_command(extremal_cmd, name="extremal")


# -- spectrum --------------------------------------------------------------------


@main.command()
@graph_option
@out_option
@_guarded
def spectrum_cmd(graph_source, out):
    """Adjacency eigenvalues as CSV, descending, plus the spectral ratio."""
    started = time.time()
    g = _load_graph(graph_source)
    spec = spectral.eigenvalues(g)
    lines = ["index,eigenvalue"]
    lines.extend(f"{i},{v!r}" for i, v in enumerate(spec.eigenvalues.tolist()))
    lines.append(f"# usn_ratio,{spec.usn_ratio!r}")
    _emit("\n".join(lines) + "\n", out, "spectrum", {"graph": graph_source}, started)


main.add_command(spectrum_cmd, name="spectrum")


# -- simulate / exact -------------------------------------------------------------


def _parse_stat(text: str) -> colorsim.Statistic:
    parts = text.split(":")
    if parts[0] == "edges" and len(parts) == 1:
        return colorsim.MonoEdges()
    if parts[0] == "stars" and len(parts) == 2:
        return colorsim.MonoStars(int(parts[1]))
    if parts[0] == "cycles" and len(parts) == 2:
        return colorsim.MonoCycles(int(parts[1]))
    raise click.UsageError(f"bad statistic {text!r}; expected edges, stars:r, or cycles:g")


stat_option = click.option("--stat", default="edges", show_default=True,
                           help="Statistic: edges, stars:r, or cycles:g.")


@main.command()
@graph_option
@click.option("--colors", required=True, type=int, help="Number of colors c.")
@stat_option
@click.option("--samples", required=True, type=int, help="Number of colorings to draw.")
@click.option("--seed", required=True, type=int, help="Base seed; results are a pure function of it.")
@click.option("--workers", default=None, type=int,
              help="Process parallelism bound (default: COLORGRAPH_WORKERS or 1). Never affects results.")
@out_option
@_guarded
def simulate_cmd(graph_source, colors, stat, samples, seed, workers, out):
    """Monte Carlo of a monochromatic statistic; CSV of value,count."""
    started = time.time()
    g = _load_graph(graph_source)
    run = colorsim.simulate(g, colors, _parse_stat(stat), samples, seed,
                            workers=workers or _default_workers())
    lines = ["value,count"]
    lines.extend(f"{v},{cnt}" for v, cnt in sorted(run.counts_by_value().items()))
    _emit("\n".join(lines) + "\n", out, "simulate",
          {"graph": graph_source, "colors": colors, "stat": stat,
           "samples": samples, "seed": seed}, started)


main.add_command(simulate_cmd, name="simulate")


@main.command()
@graph_option
@click.option("--colors", required=True, type=int, help="Number of colors c.")
@stat_option
@out_option
@_guarded
def exact_cmd(graph_source, colors, stat, out):
    """Exact law by full enumeration; CSV of value,probability (p/q)."""
    started = time.time()
    g = _load_graph(graph_source)
    pmf = colorsim.exact_distribution(g, colors, _parse_stat(stat))
    lines = ["value,probability"]
    lines.extend(f"{v},{p.numerator}/{p.denominator}" for v, p in pmf.items())
    _emit("\n".join(lines) + "\n", out, "exact",
          {"graph": graph_source, "colors": colors, "stat": stat}, started)


main.add_command(exact_cmd, name="exact")


# -- moments -----------------------------------------------------------------------


@main.command()
@graph_option
@click.option("--colors", required=True, type=int)
@click.option("--kind", type=click.Choice([k.value for k in moments.MomentKind]),
              default="rawn", show_default=True)
@click.option("--order", default=2, show_default=True, type=int)
@click.option("--fourth-report/--no-fourth-report", default=False,
              help="Also emit the exact fourth-moment decomposition.")
@out_option
@_guarded
def moments_cmd(graph_source, colors, kind, order, fourth_report, out):
    """Exact conditional moments as p/q strings."""
    started = time.time()
    g = _load_graph(graph_source)
    req = moments.MomentRequest(moments.MomentKind(kind), order, colors)
    val = moments.conditional_moment(g, req)
    payload = {
        "kind": kind,
        "order": order,
        "colors": colors,
        "unscaled": str(val.unscaled),
        "scale_exponent": str(val.scale_exponent),
        "value": None if val.value is None else str(val.value),
    }
    if fourth_report:
        rep = moments.fourth_moment_report(g, colors)
        payload["fourth_moment"] = {
            "exact": str(rep.exact),
            "leading": str(rep.leading),
            "c4_term": str(rep.c4_term),
            "remainder": str(rep.remainder),
        }
    _emit(_json_doc("moments", payload), out, "moments",
          {"graph": graph_source, "colors": colors, "kind": kind, "order": order}, started)


main.add_command(moments_cmd, name="moments")


# -- limit --------------------------------------------------------------------------


def _law_payload(law) -> dict:
    if isinstance(law, limits.Poisson):
        return {"kind": "poisson", "mean": law.mean}
    if isinstance(law, limits.Normal):
        return {"kind": "normal", "mean": law.mean, "variance": law.variance}
    if isinstance(law, limits.WeightedChiSquare):
        kept, dropped = law.effective_weights()
        return {
            "kind": "weighted_chi_square",
            "weights": list(law.weights),
            "dof": law.dof,
            "scale": law.scale,
            "sampling_truncation": {"kept": len(kept), "dropped_square_mass": dropped},
        }
    if isinstance(law, limits.AtomPlusNormal):
        return {"kind": "atom_plus_normal", "atom_mass": law.atom_mass, "variance": law.variance}
    if isinstance(law, limits.PoissonMixture):
        mix = law.mixing
        if isinstance(mix, limits.PointMass):
            mixing = {"kind": "point_mass", "value": mix.value}
        elif isinstance(mix, limits.PoissonMixing):
            mixing = {"kind": "poisson", "mean": mix.mean}
        else:
            mixing = {"kind": "empirical", "samples": list(mix.samples)}
        return {"kind": "poisson_mixture", "mixing": mixing}
    raise click.UsageError(f"unknown law {law!r}")


def law_from_payload(doc: dict):
    """Inverse of the ``limit`` subcommand's JSON payload."""
    kind = doc.get("kind")
    if kind == "poisson":
        return limits.Poisson(doc["mean"])
    if kind == "normal":
        return limits.Normal(doc["mean"], doc["variance"])
    if kind == "weighted_chi_square":
        return limits.WeightedChiSquare(tuple(doc["weights"]), doc["dof"], doc["scale"])
    if kind == "atom_plus_normal":
        return limits.AtomPlusNormal(doc["atom_mass"], doc["variance"])
    if kind == "poisson_mixture":
        mix = doc["mixing"]
        if mix["kind"] == "point_mass":
            mixing = limits.PointMass(mix["value"])
        elif mix["kind"] == "poisson":
            mixing = limits.PoissonMixing(mix["mean"])
        else:
            mixing = limits.EmpiricalMixing(tuple(mix["samples"]))
        return limits.PoissonMixture(mixing)
    raise ValueError(f"unknown law kind {kind!r}")


@main.command()
@click.option("--graph", "graph_source", default=None, metavar="FILE|FAMILY",
              help="Concrete graph or family spec for the fixed-color regime.")
@click.option("--colors", default=None, type=int, help="Fixed color count c.")
@click.option("--growing-ratio", default=None, type=float,
              help="Growing-color regime: the limit of m/c (inf allowed).")
@click.option("--sample", default=None, type=int, help="Emit this many samples of the law as CSV.")
@click.option("--seed", default=None, type=int, help="Seed for --sample.")
@out_option
@_guarded
def limit_cmd(graph_source, colors, growing_ratio, sample, seed, out):
    """Select the limit law for a host and regime; print it or sample it."""
    started = time.time()
    if (colors is None) == (growing_ratio is None):
        raise click.UsageError("pass exactly one of --colors (fixed) or --growing-ratio")
    if growing_ratio is not None:
        law = limits.limit_for(None, limits.Growing(growing_ratio))
    else:
        regime = limits.Fixed(colors)
        if graph_source is None:
            raise click.UsageError("the fixed-color regime needs --graph")
        path = Path(graph_source)
        subject = (
            parse_edge_list_text(path.read_text()) if path.exists() else parse_family(graph_source)
        )
        if isinstance(subject, Graph):
            law = limits.limit_for(subject, regime)
        else:
            try:
                law = limits.limit_for(subject, regime)
            except AmbiguousRegimeError:
                # family without a closed-form dense limit: fall back to the
                # concrete instance the spec string describes
                law = limits.limit_for(generate(subject), regime)
    if sample is not None:
        if seed is None:
            raise click.UsageError("--sample requires --seed")
        values = limits.sample_law(law, sample, seed)
        text = "value\n" + "\n".join(repr(float(v)) for v in values) + "\n"
        _emit(text, out, "limit", {"graph": graph_source, "colors": colors,
                                   "growing_ratio": growing_ratio, "sample": sample,
                                   "seed": seed}, started)
    else:
        _emit(_json_doc("law", _law_payload(law)), out, "limit",
              {"graph": graph_source, "colors": colors, "growing_ratio": growing_ratio}, started)


main.add_command(limit_cmd, name="limit")


# -- compare -----------------------------------------------------------------------


@main.command()
@click.option("--empirical", required=True, metavar="CSV",
              help="CSV from simulate/exact (value,count or value,p/q) or one value per line.")
@click.option("--law", "law_path", required=True, metavar="JSON", help="Law document from `limit`.")
@click.option("--metric", type=click.Choice(["tv", "ks"]), default=None,
              help="Default: tv for discrete laws, ks otherwise.")
@click.option("--tol", required=True, type=float, help="Pass/fail threshold.")
@click.option("--center", default=0.0, show_default=True, type=float,
              help="Subtract before a ks comparison.")
@click.option("--scale", default=1.0, show_default=True, type=float,
              help="Divide by before a ks comparison.")
@out_option
@_guarded
def compare_cmd(empirical, law_path, metric, tol, center, scale, out):
    """Compare an empirical distribution against a law; exit 1 on failure."""
    started = time.time()
    law = law_from_payload(json.loads(Path(law_path).read_text()))
    rows = [ln.strip() for ln in Path(empirical).read_text().splitlines()]
    rows = [r for r in rows if r and not r.startswith("#") and not r[0].isalpha()]
    values = []
    weights = []
    for r in rows:
        parts = r.split(",")
        values.append(float(Fraction(parts[0])))
        weights.append(float(Fraction(parts[1])) if len(parts) > 1 else 1.0)
    if metric is None:
        metric = "tv" if isinstance(law, (limits.Poisson, limits.PoissonMixture)) else "ks"
    if metric == "tv":
        total = sum(weights)
        emp = {}
        for v, w in zip(values, weights):
            emp[v] = emp.get(v, 0.0) + w / total
        support = range(int(min(emp)), int(max(emp)) + 80)
        ref = {float(k): limits.law_pmf(law, k) for k in support if k >= 0}
        value = stats.tv_distance(emp, ref)
    else:
        expanded = np.repeat(np.asarray(values), np.asarray(weights, dtype=np.int64))
        standardized = (expanded - center) / scale
        value = stats.ks_statistic(standardized, lambda x: limits.law_cdf(law, x))
    passed = value < tol
    _emit(_json_doc("compare", {"metric": metric, "value": value, "tol": tol, "pass": passed}),
          out, "compare", {"empirical": empirical, "law": law_path, "metric": metric,
                           "tol": tol}, started)
    if not passed:
        sys.exit(1)


main.add_command(compare_cmd, name="compare")


# -- birthday -----------------------------------------------------------------------


@main.command()
@click.option("--people", default=None, type=int, help="Group size n for the classic question.")
@click.option("--days", default=365, show_default=True, type=int, help="Number of equally likely days.")
@click.option("--lambda-from", "lambda_from", is_flag=True,
              help="Compute the collision rate lambda = edges / days^power instead.")
@click.option("--edges", default=None, type=float, help="Pair count for --lambda-from.")
@click.option("--days-power", default=None, metavar="BASE:K",
              help="Color count as BASE**K for --lambda-from.")
@out_option
@_guarded
def birthday_cmd(people, days, lambda_from, edges, days_power, out):
    """Exact no-collision probability and its Poisson approximation."""
    started = time.time()
    if lambda_from:
        if edges is None or days_power is None:
            raise click.UsageError("--lambda-from needs --edges and --days-power BASE:K")
        base, power = days_power.split(":")
        c = float(base) ** int(power)
        lam = edges / c
        payload = {
            "colors": c,
            "lambda": lam,
            "match_prob": 1.0 - math.exp(-lam),
            "no_match_prob": math.exp(-lam),
        }
    else:
        if people is None:
            raise click.UsageError("pass --people N (or --lambda-from)")
        if people > days + 1:
            exact = 0.0
        else:
            exact = 1.0
            for i in range(people):
                exact *= 1.0 - i / days
        pairs = people * (people - 1) // 2
        payload = {
            "people": people,
            "days": days,
            "exact_no_match": exact,
            "poisson_approx_no_match": math.exp(-pairs / days),
            "match_prob": 1.0 - exact,
        }
    _emit(_json_doc("birthday", payload), out, "birthday",
          {"people": people, "days": days, "lambda_from": lambda_from,
           "edges": edges, "days_power": days_power}, started)


main.add_command(birthday_cmd, name="birthday")


if __name__ == "__main__":
    main()
