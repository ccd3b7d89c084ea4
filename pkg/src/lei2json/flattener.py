"""Turn a schema tree into template columns and a row skeleton."""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Any, Iterator

from .errors import SchemaError
from .schema_model import PropertyNode, SchemaDocument


@dataclass(frozen=True)
class ColumnSpec:
    """One template column, bound to a single schema leaf."""

    header: str
    path: tuple[str, ...]
    data_type: str  # string | number | integer | boolean | array
    format: str | None = None
    enum_values: tuple | None = None
    note: str | None = None
    required: bool = False
    item_type: str | None = None  # set only when data_type == "array"


@dataclass(frozen=True)
class RowTemplate:
    """Nested skeleton whose leaves are header placeholders.

    Filling a row means swapping each placeholder for the row's value under
    that header.
    """

    skeleton: dict

    def placeholders(self) -> list[str]:
        return [leaf for _, leaf in walk_leaves(self.skeleton, ())]

    def fill(self, values: dict[str, Any]) -> dict:
        """Return a new object with placeholders replaced by ``values``.

        Headers missing from ``values`` are dropped, and so is any object
        left empty by that.
        """
        return _fill(self.skeleton, values)


def walk_leaves(node: dict, prefix: tuple) -> Iterator[tuple[tuple, str]]:
    for key, value in node.items():
        if isinstance(value, dict):
            yield from walk_leaves(value, prefix + (key,))
        else:
            yield prefix + (key,), value


def _fill(node: dict, values: dict) -> dict:
    out = {}
    for key, value in node.items():
        if isinstance(value, dict):
            sub = _fill(value, values)
            if sub:
                out[key] = sub
        elif value in values:
            out[key] = copy.copy(values[value])
    return out


def _column(path: tuple[str, ...], node: PropertyNode, required: bool) -> ColumnSpec:
    return ColumnSpec(
        header=node.display_name or node.name,
        path=path,
        data_type=node.kind,
        format=node.format,
        enum_values=node.enum_values,
        note=node.description,
        required=required,
        item_type=node.item_kind,
    )


def _leaves(node: PropertyNode, prefix: tuple, required: bool):
    for child in node.children:
        path = prefix + (child.name,)
        req = required and child.required
        if child.is_leaf:
            yield _column(path, child, req)
        else:
            yield from _leaves(child, path, req)


def get_keys(doc: SchemaDocument) -> list[ColumnSpec]:
    """Columns for every schema leaf, depth-first in document order.

    Raises :class:`SchemaError` (``DUPLICATE_HEADER``) when two leaves would
    share a header.
    """
    cols = list(_leaves(doc.root, (), True))
    seen: dict[str, tuple] = {}
    for col in cols:
        if col.header in seen:
            first = "/".join(seen[col.header])
            raise SchemaError(
                f"header '{col.header}' used by both {first} and {'/'.join(col.path)}",
                "DUPLICATE_HEADER",
            )
        seen[col.header] = col.path
    return cols


def merge_properties(doc: SchemaDocument, cols: list[ColumnSpec]) -> RowTemplate:
    headers = {c.path: c.header for c in cols}

    def build(node: PropertyNode, prefix: tuple) -> dict:
        out = {}
        for child in node.children:
            path = prefix + (child.name,)
            out[child.name] = headers[path] if child.is_leaf else build(child, path)
        return out

    try:
        return RowTemplate(build(doc.root, ()))
    except KeyError as exc:
        raise ValueError(f"columns do not cover schema leaf {exc}") from None


def build_template(doc: SchemaDocument) -> tuple[list[ColumnSpec], RowTemplate]:
    cols = get_keys(doc)
    return cols, merge_properties(doc, cols)
