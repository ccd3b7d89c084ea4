"""Check a JSON event array against a :class:`SchemaDocument`.

Additional properties are allowed, which also lets the generator's
``eventName``/``producer`` envelope through. Each value yields at most one
issue; checks run type, then format, then enum.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from typing import Any

from . import issues as codes
from .errors import InputNotArrayError
from .formats import check_format
from .issues import ValidationIssue
from .schema_model import PropertyNode, SchemaDocument, json_key


@dataclass
class ValidationReport:
    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.issues

    def to_dict(self) -> dict:
        return {"valid": self.valid, "issues": [i.to_dict() for i in self.issues]}

    def to_json(self, pretty: bool = True) -> str:
        return json.dumps(self.to_dict(), indent=2 if pretty else None, ensure_ascii=False)


def pointer_token(key: str | int) -> str:
    return str(key).replace("~", "~0").replace("/", "~1")


def _is_number(value: Any) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, int):
        return True
    return isinstance(value, float) and math.isfinite(value)


def type_matches(kind: str, value: Any) -> bool:
    if kind == "string":
        return isinstance(value, str)
    if kind == "number":
        return _is_number(value)
    if kind == "integer":
        return _is_number(value) and (isinstance(value, int) or value.is_integer())
    if kind == "boolean":
        return isinstance(value, bool)
    if kind == "object":
        return isinstance(value, dict)
    if kind == "array":
        return isinstance(value, list)
    raise ValueError(f"unknown kind {kind!r}")


def _describe(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return "string"
    if isinstance(value, list):
        return "array"
    return "object"


@functools.lru_cache(maxsize=256)
def _enum_keys(values: tuple) -> frozenset:
    return frozenset(json_key(v) for v in values)


class _Checker:
    def __init__(self):
        self.issues: list[ValidationIssue] = []

    def add(self, code: str, pointer: str, message: str) -> None:
        self.issues.append(ValidationIssue(code, message, pointer=pointer))

    def value(self, node: PropertyNode, value: Any, pointer: str) -> None:
        if not type_matches(node.kind, value):
            self.add(codes.SCHEMA_TYPE_MISMATCH, pointer, f"expected {node.kind}, got {_describe(value)}")
            return
        if node.kind == "object":
            self.object(node, value, pointer)
            return
        if node.kind == "array":
            ok = True
            for j, item in enumerate(value):
                if not type_matches(node.item_kind, item):
                    ok = False
                    self.add(
                        codes.SCHEMA_TYPE_MISMATCH,
                        f"{pointer}/{j}",
                        f"expected {node.item_kind} item, got {_describe(item)}",
                    )
            if not ok:
                return
        if node.format is not None and not check_format(node.format, value):
            self.add(codes.SCHEMA_FORMAT_INVALID, pointer, f"{json.dumps(value)} is not a valid {node.format}")
            return
        if node.enum_values is not None and json_key(value) not in _enum_keys(node.enum_values):
            self.add(codes.SCHEMA_ENUM_VIOLATION, pointer, f"{json.dumps(value)} is not an allowed value")

    def object(self, node: PropertyNode, obj: dict, pointer: str) -> None:
        for child in node.children:
            ptr = f"{pointer}/{pointer_token(child.name)}"
            if child.name in obj:
                self.value(child, obj[child.name], ptr)
            elif child.required:
                self.add(codes.REQUIRED_MISSING_FIELD, ptr, f"required property '{child.name}' is missing")


def validate_events(events: Any, doc: SchemaDocument) -> ValidationReport:
    """Validate every element of ``events``; raises :class:`InputNotArrayError` for non-arrays."""
    if not isinstance(events, list):
        raise InputNotArrayError(f"expected a JSON array of events, got {_describe(events)}")
    checker = _Checker()
    for i, event in enumerate(events):
        checker.value(doc.root, event, f"/{i}")
    return ValidationReport(checker.issues)
