"""On-disk template bundle: a header-row CSV plus a JSON manifest.

The CSV is what a user opens in a spreadsheet; the manifest carries what a
CSV cannot (notes, types, formats, enum dropdown values, required flags and
the row skeleton) and is the rule source at ingest time.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from os import PathLike
from pathlib import Path

from .errors import ManifestMismatchError, TemplateIOError
from .flattener import ColumnSpec, RowTemplate, walk_leaves, build_template
from .schema_model import SchemaDocument

CSV_NAME = "template.csv"
MANIFEST_NAME = "lei-template.json"


@dataclass(frozen=True)
class TemplateBundle:
    event_name: str
    columns: tuple[ColumnSpec, ...]
    row_template: RowTemplate
    schema_path: str = ""

    @classmethod
    def from_schema(cls, doc: SchemaDocument) -> TemplateBundle:
        cols, template = build_template(doc)
        return cls(doc.event_name, tuple(cols), template, doc.source_path)

    @property
    def headers(self) -> list[str]:
        return [c.header for c in self.columns]


def _column_to_json(col: ColumnSpec) -> dict:
    return {
        "header": col.header,
        "path": list(col.path),
        "dataType": col.data_type,
        "itemType": col.item_type,
        "format": col.format,
        "enum": list(col.enum_values) if col.enum_values is not None else None,
        "note": col.note,
        "required": col.required,
    }


def _column_from_json(obj: dict) -> ColumnSpec:
    enum = obj.get("enum")
    return ColumnSpec(
        header=obj["header"],
        path=tuple(obj["path"]),
        data_type=obj["dataType"],
        format=obj.get("format"),
        enum_values=tuple(enum) if enum is not None else None,
        note=obj.get("note"),
        required=bool(obj.get("required", False)),
        item_type=obj.get("itemType"),
    )


def render_csv(headers: list[str]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(headers)
    return buf.getvalue()


def render_manifest(bundle: TemplateBundle) -> str:
    doc = {
        "eventName": bundle.event_name,
        "schemaPath": bundle.schema_path,
        "columns": [_column_to_json(c) for c in bundle.columns],
        "rowTemplate": bundle.row_template.skeleton,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_bundle(bundle: TemplateBundle) -> dict[str, str]:
    """File name -> text for both bundle files."""
    return {CSV_NAME: render_csv(bundle.headers), MANIFEST_NAME: render_manifest(bundle)}


def write_bundle(bundle: TemplateBundle, directory: str | PathLike) -> list[Path]:
    """Write ``template.csv`` and ``lei-template.json`` into ``directory``.

    Returns the written paths. Output bytes depend only on ``bundle``.
    """
    directory = Path(directory)
    written = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for name, text in render_bundle(bundle).items():
            target = directory / name
            with open(target, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            written.append(target)
    except OSError as exc:
        raise TemplateIOError(f"cannot write bundle to {directory}: {exc}") from exc
    return written


def _check_consistency(columns: tuple[ColumnSpec, ...], template: RowTemplate) -> None:
    by_path = {tuple(path): leaf for path, leaf in walk_leaves(template.skeleton, ())}
    if len(by_path) != len(columns):
        raise ManifestMismatchError(
            f"row template has {len(by_path)} placeholders but manifest lists {len(columns)} columns"
        )
    for col in columns:
        if by_path.get(col.path) != col.header:
            raise ManifestMismatchError(
                f"column '{col.header}' does not match the row template at {'/'.join(col.path)}"
            )


def read_bundle(directory: str | PathLike) -> TemplateBundle:
    directory = Path(directory)
    try:
        manifest_text = (directory / MANIFEST_NAME).read_text(encoding="utf-8-sig")
        with open(directory / CSV_NAME, encoding="utf-8-sig", newline="") as fh:
            csv_headers = next(csv.reader(fh), [])
    except OSError as exc:
        raise TemplateIOError(f"cannot read bundle from {directory}: {exc}") from exc
    try:
        raw = json.loads(manifest_text)
        columns = tuple(_column_from_json(c) for c in raw["columns"])
        template = RowTemplate(raw["rowTemplate"])
        bundle = TemplateBundle(raw["eventName"], columns, template, raw.get("schemaPath", ""))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise TemplateIOError(f"{directory / MANIFEST_NAME}: malformed manifest ({exc})") from exc
    if csv_headers != bundle.headers:
        raise ManifestMismatchError(
            f"{CSV_NAME} headers {csv_headers} differ from manifest headers {bundle.headers}"
        )
    _check_consistency(columns, template)
    return bundle
