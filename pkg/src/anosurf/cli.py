"""Command line front end.

Exit codes: 0 success, 2 usage, 3 bad or unsupported slope, 4 a
classification gap or a violated slope law, 5 catalog integrity.
"""

from __future__ import annotations

import json
import sys
import time
from fractions import Fraction
from typing import Optional

import click

from .catalog import check_catalog, load_catalog, slope_law_check, FAMILIES
from .classifier import classify
from .errors import (
    CatalogIntegrityError,
    CatalogKeyError,
    ClassificationGapError,
    SlopeFormatError,
    SlopeLawError,
    UnsupportedSlopeError,
)
from .slopes import Slope, is_hyperbolic, parse_slope
from .spine import load_track_bundle


def _slope_sort_key(s: Slope):
    if s.is_infinity:
        return (1, Fraction(0))
    return (0, s.as_fraction())


@click.group()
def cli():
    """Count Anosov flows on the fillings of the figure eight knot."""


# ignore_unknown_options lets negative slopes through without a "--"
@cli.command("classify", context_settings={"ignore_unknown_options": True})
@click.argument("slope")
@click.option("--traces", type=click.Choice(["none", "digest", "full"]),
              default="digest", show_default=True,
              help="How much of each exclusion argument to print.")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
@click.option("--catalog", "catalog_path", default=None,
              help="Directory shadowing the packaged catalog files.")
def classify_cmd(slope: str, traces: str, fmt: str, catalog_path: Optional[str]):
    """Classify the filling at SLOPE (for example 3, -2, 7/2, 0)."""
    s = parse_slope(slope)
    catalog = load_catalog(path=catalog_path)
    result = classify(s, catalog=catalog)
    if fmt == "json":
        click.echo(json.dumps(result.to_json(traces=traces), indent=2))
        return
    click.echo(f"slope {result.slope}: {result.kind}")
    click.echo(f"  hyperbolic filling: {'yes' if is_hyperbolic(s) else 'no'}")
    click.echo("  taut foliation: yes")
    if result.argument:
        click.echo("  argument:")
        for step in result.argument:
            click.echo(f"    {step.rule}")
            if traces == "full":
                click.echo(f"        {step.to_json()['anchor']}")
    if result.traces and traces != "none":
        click.echo(f"  excluded candidates: {len(result.traces)}")
        for trace in result.traces:
            d = trace.digest()
            click.echo(f"    {d['entry']}: {' -> '.join(d['rules'])}")
            if traces == "full":
                for step in trace.steps:
                    click.echo(f"        [{step.rule}] {step.to_json()['anchor']}")
    elif result.traces:
        click.echo(f"  excluded candidates: {len(result.traces)}")


@cli.command("sweep")
@click.option("--max", "max_height", type=int, default=50, show_default=True,
              help="Largest numerator and denominator to visit.")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
@click.option("--catalog", "catalog_path", default=None)
def sweep_cmd(max_height: int, fmt: str, catalog_path: Optional[str]):
    """Classify every reduced slope q/p with p and |q| at most the bound."""
    from math import gcd

    catalog = load_catalog(path=catalog_path)
    started = time.monotonic()
    kinds = {}
    for p in range(1, max_height + 1):
        for q in range(-max_height, max_height + 1):
            if gcd(p, abs(q)) != 1:
                continue
            s = Slope(q=q, p=p)
            kinds.setdefault(classify(s, catalog=catalog).kind, []).append(s)
    elapsed = time.monotonic() - started
    counts = {k: len(v) for k, v in sorted(kinds.items())}
    if fmt == "json":
        click.echo(json.dumps({
            "max": max_height,
            "counts": counts,
            "seconds": round(elapsed, 3),
            "slopes": {k: [str(s) for s in sorted(v, key=_slope_sort_key)]
                       for k, v in sorted(kinds.items())},
        }, indent=2))
        return
    total = sum(counts.values())
    click.echo(f"swept {total} slopes up to {max_height} in {elapsed:.2f}s")
    for kind, count in counts.items():
        click.echo(f"  {kind}: {count}")


@cli.command("track")
@click.argument("family", type=click.Choice(list(FAMILIES)))
@click.option("--bound", type=int, default=20, show_default=True,
              help="Max weight per branch when enumerating solutions.")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
def track_cmd(family: str, bound: int, fmt: str):
    """Check the boundary slope law of a family's double cover track."""
    bundle = load_track_bundle(family)
    report = slope_law_check(load_catalog(), family, bound=bound)
    realized = sorted(report.realized, key=_slope_sort_key)
    if fmt == "json":
        click.echo(json.dumps({
            "family": family,
            "law": bundle.law.kind,
            "bound": bound,
            "branches": len(bundle.track.branches),
            "realized": [str(s) for s in realized],
            "violations": report.violations,
            "ok": report.ok,
        }, indent=2))
    else:
        click.echo(f"{family}: law {bundle.law.kind}, "
                   f"{len(bundle.track.branches)} branches, bound {bound}")
        click.echo(f"  realized slopes: {', '.join(str(s) for s in realized) or '(none)'}")
        if report.violations:
            click.echo("  violations:")
            for v in report.violations:
                click.echo(f"    {v}")
        else:
            click.echo("  law holds")
    report.raise_if_violated()


@cli.group("catalog")
def catalog_group():
    """Inspect the branched surface catalog."""


@catalog_group.command("list")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
@click.option("--catalog", "catalog_path", default=None)
def catalog_list(fmt: str, catalog_path: Optional[str]):
    """List every entry with its family and exclusion class."""
    catalog = load_catalog(path=catalog_path)
    rows = [(e.id, e.family, e.exclusion_class, e.admissible.kind)
            for e in catalog]
    if fmt == "json":
        click.echo(json.dumps(
            [{"id": r[0], "family": r[1], "exclusion_class": r[2],
              "admissible": r[3]} for r in rows], indent=2))
        return
    width = max(len(r[0]) for r in rows)
    for r in rows:
        click.echo(f"{r[0]:<{width}}  {r[1]:<4} {r[2]:<12} {r[3]}")
    click.echo(f"({len(rows)} entries)")


@catalog_group.command("show")
@click.argument("entry_id")
@click.option("--catalog", "catalog_path", default=None)
def catalog_show(entry_id: str, catalog_path: Optional[str]):
    """Dump one entry as JSON."""
    catalog = load_catalog(path=catalog_path)
    entry = catalog.get(entry_id)
    doc = {
        "id": entry.id,
        "family": entry.family,
        "summary": entry.summary,
        "admissible": entry.admissible.to_json(),
        "exclusion_class": entry.exclusion_class,
        "orientable": entry.orientable,
        "disk_sectors": list(entry.disk_sectors),
        "complement": list(entry.complement),
    }
    if entry.orientation_graph is not None:
        doc["orientation_graph"] = entry.orientation_graph
    if entry.euler is not None:
        doc["euler"] = entry.euler
    if entry.sector_pairs:
        doc["sector_pairs"] = [list(p) for p in entry.sector_pairs]
    if entry.vacant_annulus:
        doc["vacant_annulus"] = entry.vacant_annulus
    if entry.split_curves:
        doc["split_curves"] = list(entry.split_curves)
    if entry.notes:
        doc["notes"] = entry.notes
    click.echo(json.dumps(doc, indent=2))


@catalog_group.command("check")
@click.option("--laws/--no-laws", default=False,
              help="Also check every family's boundary slope law (slower).")
@click.option("--law-bound", type=int, default=6, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
@click.option("--catalog", "catalog_path", default=None)
def catalog_check(laws: bool, law_bound: int, fmt: str, catalog_path: Optional[str]):
    """Verify checksums, counts, certificates and sector data."""
    catalog = load_catalog(path=catalog_path)
    report = check_catalog(catalog)
    law_results = {}
    if laws:
        for family in FAMILIES:
            law_report = slope_law_check(catalog, family, bound=law_bound)
            law_results[family] = law_report.violations
            if law_report.violations:
                report.problems.append(
                    f"{family}: slope law violated ({len(law_report.violations)})")
    if fmt == "json":
        click.echo(json.dumps({
            "entry_count": report.entry_count,
            "family_counts": report.family_counts,
            "stated_total": report.stated_total,
            "warnings": report.warnings,
            "problems": report.problems,
            "laws": law_results,
            "ok": report.ok,
        }, indent=2))
    else:
        click.echo(f"entries: {report.entry_count}")
        click.echo("per family: " + ", ".join(
            f"{f}={n}" for f, n in report.family_counts.items()))
        for w in report.warnings:
            click.echo(f"warning: {w}")
        for p in report.problems:
            click.echo(f"PROBLEM: {p}")
        if laws:
            for family, violations in law_results.items():
                status = "violated" if violations else "holds"
                click.echo(f"law {family}: {status}")
        click.echo("catalog ok" if report.ok else "catalog NOT ok")
    if not report.ok:
        raise ClassificationGapError(
            "<catalog>", None, "catalog check found problems")


def main(argv=None) -> int:
    """Entry point with stable exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 130
    except click.UsageError as exc:
        exc.show()
        return 2
    except (SlopeFormatError, UnsupportedSlopeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except (ClassificationGapError, SlopeLawError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 4
    except (CatalogIntegrityError, CatalogKeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 5
    return 0


if __name__ == "__main__":
    sys.exit(main())
