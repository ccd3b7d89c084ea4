"""Load an event JSON Schema into an immutable property tree.

Only a small keyword subset is understood (see ``SUPPORTED_KEYWORDS``).
Anything else is recorded as a :class:`SchemaWarning` and ignored, so that
large real-world schemas still load.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path
from typing import Any

from .errors import SchemaError
from .formats import SUPPORTED_FORMATS

PRIMITIVE_KINDS = ("string", "number", "integer", "boolean")
KINDS = ("object",) + PRIMITIVE_KINDS + ("array",)

SUPPORTED_KEYWORDS = frozenset(
    {
        "type",
        "properties",
        "required",
        "description",
        "displayName",
        "enum",
        "format",
        "items",
        # annotations that carry no validation meaning
        "title",
        "$schema",
        "$id",
    }
)
_ITEMS_KEYWORDS = frozenset({"type", "description", "displayName", "title"})

# top-level keys the generator adds to every event
RESERVED_KEYS = frozenset({"eventName", "producer"})


@dataclass(frozen=True)
class SchemaWarning:
    pointer: str  # JSON Pointer into the schema document
    keyword: str
    message: str

    def __str__(self) -> str:
        return f"{self.pointer or '/'}: {self.message}"


@dataclass(frozen=True)
class PropertyNode:
    name: str
    kind: str
    display_name: str | None = None
    description: str | None = None
    format: str | None = None
    enum_values: tuple | None = None
    children: tuple[PropertyNode, ...] = ()
    item_kind: str | None = None
    required: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.kind != "object"

    def child(self, name: str) -> PropertyNode:
        for c in self.children:
            if c.name == name:
                return c
        raise KeyError(name)

    def iter_leaves(self, prefix: tuple[str, ...] = ()):
        """Yield ``(path, node)`` for every leaf below this node, in document order."""
        for c in self.children:
            path = prefix + (c.name,)
            if c.is_leaf:
                yield path, c
            else:
                yield from c.iter_leaves(path)


@dataclass(frozen=True)
class SchemaDocument:
    event_name: str
    root: PropertyNode
    source_path: str = ""
    warnings: tuple[SchemaWarning, ...] = field(default=(), compare=False)

    def leaf_count(self) -> int:
        return sum(1 for _ in self.root.iter_leaves())


def _escape(token: str) -> str:
    return token.replace("~", "~0").replace("/", "~1")


def json_key(value: Any):
    """Hashable identity for a JSON scalar; keeps ``True`` apart from ``1``.

    Integral floats collapse onto ints because JSON has one number type.
    """
    if isinstance(value, bool):
        return ("bool", value)
    if isinstance(value, (int, float)):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        return ("num", value)
    if isinstance(value, str):
        return ("str", value)
    if value is None:
        return ("null", None)
    return ("other", json.dumps(value, sort_keys=True))


class _Parser:
    def __init__(self):
        self.warnings: list[SchemaWarning] = []

    def warn(self, pointer: str, keyword: str, message: str) -> None:
        self.warnings.append(SchemaWarning(pointer, keyword, message))

    def _unknown_keywords(self, node: dict, pointer: str, allowed=SUPPORTED_KEYWORDS):
        for key in node:
            if key not in allowed:
                self.warn(pointer, key, f"unsupported keyword '{key}' ignored")

    def _text(self, node: dict, key: str, pointer: str) -> str | None:
        value = node.get(key)
        if value is None:
            return None
        if not isinstance(value, str):
            raise SchemaError(f"{pointer}: '{key}' must be a string", "UNSUPPORTED_STRUCTURE")
        return value

    def _kind(self, node: dict, pointer: str) -> str:
        kind = node.get("type")
        if kind is None:
            if "properties" in node:
                return "object"
            raise SchemaError(f"{pointer or '/'}: missing 'type'", "UNSUPPORTED_STRUCTURE")
        if not isinstance(kind, str) or kind not in KINDS:
            raise SchemaError(
                f"{pointer or '/'}: unsupported type {json.dumps(kind)}", "UNSUPPORTED_STRUCTURE"
            )
        return kind

    def _enum(self, node: dict, kind: str, pointer: str):
        if "enum" not in node:
            return None
        if kind in ("object", "array"):
            self.warn(pointer, "enum", f"enum on a {kind} property ignored")
            return None
        values = node["enum"]
        if not isinstance(values, list) or not values:
            raise SchemaError(f"{pointer}: 'enum' must be a non-empty array", "UNSUPPORTED_STRUCTURE")
        seen = set()
        for v in values:
            if isinstance(v, (dict, list)) or v is None:
                raise SchemaError(f"{pointer}: enum values must be scalars", "UNSUPPORTED_STRUCTURE")
            if isinstance(v, float) and not math.isfinite(v):
                raise SchemaError(f"{pointer}: enum values must be finite", "UNSUPPORTED_STRUCTURE")
            k = json_key(v)
            if k in seen:
                raise SchemaError(f"{pointer}: duplicate enum value {json.dumps(v)}", "UNSUPPORTED_STRUCTURE")
            seen.add(k)
        return tuple(values)

    def _format(self, node: dict, kind: str, pointer: str) -> str | None:
        fmt = node.get("format")
        if fmt is None:
            return None
        if fmt not in SUPPORTED_FORMATS:
            self.warn(pointer, "format", f"unsupported format {json.dumps(fmt)} ignored")
            return None
        if kind != "string":
            self.warn(pointer, "format", f"format on a {kind} property ignored")
            return None
        return fmt

    def _item_kind(self, node: dict, pointer: str) -> str:
        items = node.get("items")
        ptr = pointer + "/items"
        if not isinstance(items, dict):
            raise SchemaError(f"{pointer}: array needs an 'items' object", "UNSUPPORTED_STRUCTURE")
        kind = items.get("type")
        if kind in ("object", "array") or "properties" in items:
            raise SchemaError(
                f"{pointer}: arrays of objects or arrays are not supported", "UNSUPPORTED_STRUCTURE"
            )
        if kind not in PRIMITIVE_KINDS:
            raise SchemaError(
                f"{ptr}: items need a primitive 'type'", "UNSUPPORTED_STRUCTURE"
            )
        self._unknown_keywords(items, ptr, _ITEMS_KEYWORDS)
        return kind

    def node(self, name: str, raw: Any, pointer: str, required: bool, top: bool = False) -> PropertyNode:
        if not isinstance(raw, dict):
            raise SchemaError(f"{pointer or '/'}: schema must be an object", "UNSUPPORTED_STRUCTURE")
        self._unknown_keywords(raw, pointer)
        kind = self._kind(raw, pointer)
        children: tuple = ()
        item_kind = None
        if kind == "object":
            children = self._children(raw, pointer, top)
            if not children and not top:
                raise SchemaError(f"{pointer}: object property without properties", "UNSUPPORTED_STRUCTURE")
        elif "properties" in raw:
            self.warn(pointer, "properties", f"'properties' on a {kind} property ignored")
        if kind == "array":
            item_kind = self._item_kind(raw, pointer)
        return PropertyNode(
            name=name,
            kind=kind,
            display_name=self._text(raw, "displayName", pointer),
            description=self._text(raw, "description", pointer),
            format=self._format(raw, kind, pointer),
            enum_values=self._enum(raw, kind, pointer),
            children=children,
            item_kind=item_kind,
            required=required,
        )

    def _children(self, raw: dict, pointer: str, top: bool) -> tuple:
        props = raw.get("properties", {})
        if not isinstance(props, dict):
            raise SchemaError(f"{pointer}: 'properties' must be an object", "UNSUPPORTED_STRUCTURE")
        req = raw.get("required", [])
        if not isinstance(req, list) or not all(isinstance(r, str) for r in req):
            raise SchemaError(f"{pointer}: 'required' must be an array of names", "UNSUPPORTED_STRUCTURE")
        for r in req:
            if r not in props:
                self.warn(pointer, "required", f"required property '{r}' is not declared")
        required = set(req)
        out = []
        for name, sub in props.items():
            if top and name in RESERVED_KEYS:
                raise SchemaError(
                    f"top-level property '{name}' clashes with a reserved event key",
                    "UNSUPPORTED_STRUCTURE",
                )
            out.append(self.node(name, sub, f"{pointer}/properties/{_escape(name)}", name in required))
        return tuple(out)


def parse_schema(raw: Any, source_path: str = "") -> SchemaDocument:
    """Build a :class:`SchemaDocument` from already-decoded JSON."""
    if not isinstance(raw, dict) or raw.get("type", "object") != "object":
        raise SchemaError("top-level schema type must be 'object'", "NOT_OBJECT_ROOT")
    description = raw.get("description")
    if not isinstance(description, str) or not description.strip():
        raise SchemaError("top-level 'description' (event name) is missing or empty", "MISSING_EVENT_NAME")
    parser = _Parser()
    root = parser.node("", raw, "", True, top=True)
    return SchemaDocument(
        event_name=description.strip(),
        root=root,
        source_path=source_path,
        warnings=tuple(parser.warnings),
    )


def load_schema(path: str | PathLike) -> SchemaDocument:
    """Read and parse a schema file.

    Raises ``OSError`` when the file cannot be read and :class:`SchemaError`
    (codes ``PARSE_ERROR``, ``NOT_OBJECT_ROOT``, ``MISSING_EVENT_NAME``,
    ``UNSUPPORTED_STRUCTURE``) when its content is unusable.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8-sig")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc})", "PARSE_ERROR") from exc
    return parse_schema(raw, str(path))
