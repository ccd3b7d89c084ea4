"""Command-line interface.

Exit codes: 0 success, 1 invalid data, 2 schema error, 3 I/O error,
4 usage error. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from .errors import (
    InputNotArrayError,
    ManifestMismatchError,
    ProducerError,
    SchemaError,
    TemplateIOError,
)
from .json_generator import ConversionAborted, ProducerInfo, generate_message, serialize
from .schema_model import SchemaDocument, load_schema
from .schema_validator import validate_events
from .tabular_ingest import read_csv
from .template_io import TemplateBundle, read_bundle, write_bundle

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SCHEMA = 2
EXIT_IO = 3
EXIT_USAGE = 4


class _Lei2JsonGroup(click.Group):
    """Maps click's usage errors to our exit code and propagates command return codes."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as exc:
            exc.show()
            rv = EXIT_USAGE
        except click.ClickException as exc:
            exc.show()
            rv = exc.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            rv = EXIT_INVALID
        rv = rv if isinstance(rv, int) else EXIT_OK
        if standalone_mode:
            sys.exit(rv)
        return rv


def _err(message: str) -> None:
    click.echo(message, err=True)


def _load_schema(path: str) -> SchemaDocument:
    doc = load_schema(path)
    for w in doc.warnings:
        _err(f"warning: {w}")
    return doc


def _schema_failure(exc: Exception) -> int:
    if isinstance(exc, SchemaError):
        _err(f"error: {exc}")
        return EXIT_SCHEMA
    _err(f"error: IO_ERROR: {exc}")
    return EXIT_IO


def _write_output(text: str, out: str) -> None:
    if out == "-":
        click.echo(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text + "\n")


@click.group(cls=_Lei2JsonGroup)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose: bool) -> None:
    """Build CSV templates from event schemas, convert filled CSVs to JSON events, and validate them."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")


@cli.command()
@click.option("--schema", "schema_path", required=True, help="Event schema JSON file.")
@click.option("--out", "out_dir", required=True, help="Directory for template.csv and lei-template.json.")
def template(schema_path: str, out_dir: str) -> int:
    """Write the data-entry template for a schema."""
    try:
        bundle = TemplateBundle.from_schema(_load_schema(schema_path))
    except (SchemaError, OSError, UnicodeDecodeError) as exc:
        return _schema_failure(exc)
    try:
        written = write_bundle(bundle, out_dir)
    except TemplateIOError as exc:
        _err(f"error: {exc}")
        return EXIT_IO
    for path in written:
        _err(f"wrote {path}")
    return EXIT_OK


def _load_producer(path: str | None, pic: str | None) -> ProducerInfo | None:
    data = {}
    if path is not None:
        data = json.loads(Path(path).read_text(encoding="utf-8-sig"))
    if path is None and pic is None:
        return None
    return ProducerInfo.from_mapping(data, pic=pic)


@cli.command()
@click.option("--schema", "schema_path", help="Event schema JSON file.")
@click.option("--template", "template_dir", help="Template bundle directory (instead of --schema).")
@click.option("--data", "data_path", required=True, help="Filled CSV data file.")
@click.option("--producer", "producer_path", help='Producer JSON {"fullName","email","address","phone"}.')
@click.option("--pic", help="Property identification code.")
@click.option("--out", default="-", show_default=True, help="Output file, or - for stdout.")
@click.option("--pretty", is_flag=True, help="Indent the JSON output.")
@click.option("--delimiter", default=",", show_default=True, help="CSV field delimiter.")
def convert(schema_path, template_dir, data_path, producer_path, pic, out, pretty, delimiter) -> int:
    """Convert a filled CSV into a JSON event array.

    Nothing is written if any cell fails validation; the problems are listed
    on stderr as "row N, Header: CODE: message" with rows counted from the
    first line after the header.
    """
    if (schema_path is None) == (template_dir is None):
        raise click.UsageError("give exactly one of --schema or --template")
    if len(delimiter) != 1:
        raise click.UsageError("--delimiter must be a single character")

    try:
        if schema_path is not None:
            bundle = TemplateBundle.from_schema(_load_schema(schema_path))
        else:
            bundle = read_bundle(template_dir)
    except ManifestMismatchError as exc:
        _err(f"error: {exc}")
        return EXIT_SCHEMA
    except TemplateIOError as exc:
        _err(f"error: {exc}")
        return EXIT_IO
    except (SchemaError, OSError, UnicodeDecodeError) as exc:
        return _schema_failure(exc)

    try:
        producer = _load_producer(producer_path, pic)
        sheet = read_csv(data_path, delimiter)
    except ProducerError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID
    except json.JSONDecodeError as exc:
        _err(f"error: producer file is not valid JSON ({exc})")
        return EXIT_INVALID
    except (OSError, UnicodeDecodeError) as exc:
        _err(f"error: IO_ERROR: {exc}")
        return EXIT_IO

    try:
        events = generate_message(
            sheet, bundle.columns, bundle.row_template, bundle.event_name, producer
        )
    except ConversionAborted as exc:
        for w in exc.warnings:
            _err(f"warning: {w}")
        for issue in exc.issues:
            _err(str(issue))
        _err(f"{len(exc.issues)} issue(s); no output written")
        return EXIT_INVALID

    try:
        _write_output(serialize(events, pretty=pretty), out)
    except OSError as exc:
        _err(f"error: IO_ERROR: {exc}")
        return EXIT_IO
    logging.getLogger(__name__).info("converted %d event(s)", len(events))
    return EXIT_OK


@cli.command()
@click.option("--schema", "schema_path", required=True, help="Event schema JSON file.")
@click.option("--input", "input_path", default="-", show_default=True, help="Event array JSON file, or - for stdin.")
def validate(schema_path: str, input_path: str) -> int:
    """Validate a JSON event array; prints the report JSON to stdout."""
    try:
        doc = _load_schema(schema_path)
    except (SchemaError, OSError, UnicodeDecodeError) as exc:
        return _schema_failure(exc)
    try:
        if input_path == "-":
            text = click.get_text_stream("stdin").read()
        else:
            text = Path(input_path).read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as exc:
        _err(f"error: IO_ERROR: {exc}")
        return EXIT_IO
    try:
        report = validate_events(json.loads(text), doc)
    except json.JSONDecodeError as exc:
        _err(f"error: input is not valid JSON ({exc})")
        return EXIT_INVALID
    except InputNotArrayError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID
    click.echo(report.to_json())
    return EXIT_OK if report.valid else EXIT_INVALID


@cli.command()
@click.option("--port", type=int, envvar="PORT", default=8080, show_default=True)
@click.option("--schema-dir", envvar="SCHEMA_DIR", required=True, help="Directory of *.json schemas.")
@click.option("--max-body-bytes", type=int, default=16 * 1024 * 1024, show_default=True)
def serve(port: int, schema_dir: str, max_body_bytes: int) -> int:
    """Run the HTTP validation service."""
    from .service import ServiceConfig, load_schema_dir, run_server

    try:
        schemas = load_schema_dir(schema_dir)
    except OSError as exc:
        _err(f"error: IO_ERROR: {exc}")
        return EXIT_IO
    except SchemaError as exc:
        _err(f"error: {exc}")
        return EXIT_SCHEMA
    _err(f"serving schemas: {', '.join(sorted(schemas))}")
    run_server(schemas, ServiceConfig(Path(schema_dir), port, max_body_bytes))
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise click.UsageError(f"expected comma-separated integers, got '{text}'") from None
    if not values:
        raise click.UsageError("size list is empty")
    return values


@cli.command()
@click.option("--functions", default=",".join(bench_mod.FUNCTIONS), show_default=True,
              help="Comma-separated subset of buildTemplate,parseToJSON,validate.")
@click.option("--sizes", help="Comma-separated sizes for every selected function "
                              "(default: 5..25 properties, 1000..10000 events).")
@click.option("--runs", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", default="bench-report.csv", show_default=True, help="Report CSV path.")
def bench(functions: str, sizes: str | None, runs: int, seed: int, out_path: str) -> int:
    """Time the pipeline stages against input size."""
    chosen = [f.strip() for f in functions.split(",") if f.strip()]
    unknown = [f for f in chosen if f not in bench_mod.FUNCTIONS]
    if unknown or not chosen:
        raise click.UsageError(f"unknown function(s): {', '.join(unknown) or '(none)'}")
    size_map = dict(bench_mod.DEFAULT_SIZES)
    if sizes:
        parsed = _int_list(sizes)
        size_map = {f: parsed for f in chosen}
    plan = bench_mod.BenchPlan(functions=chosen, sizes=size_map, runs=runs, seed=seed)

    def show(r):
        click.echo(f"{r.function:<14}{r.size:>7}{r.mean:>12.3f}{r.stddev:>10.3f}")

    click.echo(f"{'function':<14}{'size':>7}{'mean ms':>12}{'std ms':>10}")
    try:
        results = bench_mod.run_bench(plan, progress=show)
        bench_mod.write_report(results, out_path)
    except OSError as exc:
        _err(f"error: IO_ERROR: {exc}")
        return EXIT_IO
    for fn, fit in bench_mod.fits_by_function(results).items():
        click.echo(f"{fn}: slope {fit.slope:.6g} ms/unit, R^2 {fit.r2:.4f}")
    _err(f"wrote {out_path}")
    return EXIT_OK


def main(argv=None) -> int:
    return cli.main(args=argv, prog_name="lei2json", standalone_mode=False)


if __name__ == "__main__":
    sys.exit(main())
