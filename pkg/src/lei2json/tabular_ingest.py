"""Read filled CSV data, bind it to template columns and coerce each cell.

Columns are matched by header text, so the data file may order them any
way it likes. All cell problems are collected rather than stopping at the
first one.
"""

from __future__ import annotations

import csv
import functools
import io
import math
import re
from dataclasses import dataclass, field
from os import PathLike
from typing import Any, Iterable, Sequence

from . import issues as codes
from .errors import BindingError
from .flattener import ColumnSpec
from .formats import check_format
from .issues import HEADER_ROW, ValidationIssue
from .schema_model import json_key

ARRAY_DELIMITER = ";"

_NUMBER_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?", re.ASCII)
_INTEGER_RE = re.compile(r"[+-]?\d+", re.ASCII)


class _Absent:
    def __repr__(self):
        return "ABSENT"


ABSENT = _Absent()


@dataclass
class ColumnBinding:
    """Header -> index into each CSV record, plus non-fatal warnings."""

    indices: dict[str, int]
    warnings: list[ValidationIssue] = field(default_factory=list)


@dataclass
class RowValues:
    source_row: int
    values: dict[str, Any]  # header -> typed value; absent cells are omitted
    issues: list[ValidationIssue] = field(default_factory=list)


@dataclass
class Sheet:
    headers: list[str]
    records: list[list[str]]  # data rows only; record i is data row i + 1


def parse_csv_text(text: str, delimiter: str = ",") -> Sheet:
    text = text.removeprefix("\ufeff")
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter)
    headers = next(reader, [])
    return Sheet(headers, list(reader))


def read_csv(path: str | PathLike, delimiter: str = ",") -> Sheet:
    with open(path, encoding="utf-8-sig", newline="") as fh:
        return parse_csv_text(fh.read(), delimiter)


def bind_columns(csv_headers: Sequence[str], cols: Sequence[ColumnSpec]) -> ColumnBinding:
    """Match CSV headers to column specs by trimmed, exact header text.

    Extra CSV columns become ``UNKNOWN_COLUMN`` warnings. Raises
    :class:`BindingError` if a template header is missing or a CSV header
    repeats.
    """
    indices: dict[str, int] = {}
    fatal: list[ValidationIssue] = []
    warnings: list[ValidationIssue] = []
    wanted = {c.header for c in cols}
    seen: set[str] = set()
    for i, raw in enumerate(csv_headers):
        name = raw.strip()
        if not name:
            continue
        if name in seen:
            fatal.append(
                ValidationIssue(codes.DUPLICATE_HEADER, f"column '{name}' appears more than once",
                                row=HEADER_ROW, header=name)
            )
            continue
        seen.add(name)
        if name in wanted:
            indices[name] = i
        else:
            warnings.append(
                ValidationIssue(codes.UNKNOWN_COLUMN, f"column '{name}' is not in the template; ignored",
                                row=HEADER_ROW, header=name)
            )
    for c in cols:
        if c.header not in indices:
            fatal.append(
                ValidationIssue(codes.MISSING_COLUMN, f"template column '{c.header}' not found",
                                row=HEADER_ROW, header=c.header)
            )
    if fatal:
        raise BindingError(f"{len(fatal)} header problem(s)", fatal + warnings, fatal[0].code)
    return ColumnBinding(indices, warnings)


class CellError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@functools.lru_cache(maxsize=256)
def _enum_keys(values: tuple) -> frozenset:
    return frozenset(json_key(v) for v in values)


def _coerce_scalar(text: str, kind: str) -> Any:
    if kind == "string":
        return text
    if kind == "boolean":
        low = text.lower()
        if low in ("true", "false"):
            return low == "true"
        raise CellError(codes.TYPE_MISMATCH, f"'{text}' is not true/false")
    if kind == "integer":
        if _INTEGER_RE.fullmatch(text):
            return int(text)
        raise CellError(codes.TYPE_MISMATCH, f"'{text}' is not an integer")
    if kind == "number":
        if _NUMBER_RE.fullmatch(text):
            if _INTEGER_RE.fullmatch(text):
                return int(text)
            value = float(text)
            if math.isfinite(value):
                return value
        raise CellError(codes.TYPE_MISMATCH, f"'{text}' is not a number")
    raise ValueError(f"unknown column type {kind!r}")


def coerce_cell(text: str, col: ColumnSpec) -> Any:
    """Typed value for one cell, or ``ABSENT`` for a blank cell.

    Raises :class:`CellError` with the first failing check, in the order
    type, format, enum.
    """
    text = text.strip()
    if not text:
        return ABSENT
    if col.data_type == "array":
        parts = [p.strip() for p in text.split(ARRAY_DELIMITER)]
        if any(not p for p in parts):
            raise CellError(codes.TYPE_MISMATCH, f"'{text}' has an empty list item")
        value: Any = [_coerce_scalar(p, col.item_type) for p in parts]
    else:
        value = _coerce_scalar(text, col.data_type)
        if col.format and not check_format(col.format, value):
            raise CellError(codes.FORMAT_INVALID, f"'{text}' is not a valid {col.format}")
    if col.enum_values is not None and json_key(value) not in _enum_keys(col.enum_values):
        allowed = ", ".join(str(v) for v in col.enum_values)
        raise CellError(codes.ENUM_VIOLATION, f"'{text}' is not one of: {allowed}")
    return value


def is_blank(record: Iterable[str]) -> bool:
    return all(not cell.strip() for cell in record)


def validate_cells(
    records: Sequence[Sequence[str]], binding: ColumnBinding, cols: Sequence[ColumnSpec]
) -> tuple[list[RowValues], list[ValidationIssue]]:
    """Coerce every bound cell of every non-blank record.

    Fully blank records are skipped but still count toward row numbering.
    Issues are ordered by (row, template column order).
    """
    rows: list[RowValues] = []
    found: list[ValidationIssue] = []
    placed = [(c, binding.indices[c.header]) for c in cols]
    for n, record in enumerate(records, start=1):
        if is_blank(record):
            continue
        values: dict[str, Any] = {}
        row_issues: list[ValidationIssue] = []
        for col, idx in placed:
            text = record[idx] if idx < len(record) else ""
            try:
                value = coerce_cell(text, col)
            except CellError as exc:
                row_issues.append(ValidationIssue(exc.code, str(exc), row=n, header=col.header))
                continue
            if value is ABSENT:
                if col.required:
                    row_issues.append(
                        ValidationIssue(codes.REQUIRED_MISSING, "required value is empty", row=n, header=col.header)
                    )
                continue
            values[col.header] = value
        rows.append(RowValues(n, values, row_issues))
        found.extend(row_issues)
    return rows, found


@dataclass
class IngestResult:
    rows: list[RowValues]
    issues: list[ValidationIssue]  # errors only
    warnings: list[ValidationIssue]

    @property
    def ok(self) -> bool:
        return not self.issues


def ingest(sheet: Sheet, cols: Sequence[ColumnSpec]) -> IngestResult:
    """Bind and validate a whole sheet; binding failures become issues."""
    try:
        binding = bind_columns(sheet.headers, cols)
    except BindingError as exc:
        errors = [i for i in exc.issues if not i.is_warning]
        return IngestResult([], errors, [i for i in exc.issues if i.is_warning])
    rows, found = validate_cells(sheet.records, binding, cols)
    return IngestResult(rows, found, binding.warnings)
