from __future__ import annotations

from dataclasses import dataclass

# cell-level codes (tabular address)
TYPE_MISMATCH = "TYPE_MISMATCH"
FORMAT_INVALID = "FORMAT_INVALID"
ENUM_VIOLATION = "ENUM_VIOLATION"
REQUIRED_MISSING = "REQUIRED_MISSING"
UNKNOWN_COLUMN = "UNKNOWN_COLUMN"
MISSING_COLUMN = "MISSING_COLUMN"
DUPLICATE_HEADER = "DUPLICATE_HEADER"
# schema-level codes (JSON Pointer address)
REQUIRED_MISSING_FIELD = "REQUIRED_MISSING_FIELD"
SCHEMA_TYPE_MISMATCH = "SCHEMA_TYPE_MISMATCH"
SCHEMA_ENUM_VIOLATION = "SCHEMA_ENUM_VIOLATION"
SCHEMA_FORMAT_INVALID = "SCHEMA_FORMAT_INVALID"

WARNING_CODES = frozenset({UNKNOWN_COLUMN})

HEADER_ROW = 0


@dataclass(frozen=True)
class ValidationIssue:
    """A located problem.

    Tabular issues carry ``row`` (1-based data row, ``0`` for the header
    row) and ``header``; JSON issues carry ``pointer``. Never both.
    """

    code: str
    message: str
    row: int | None = None
    header: str | None = None
    pointer: str | None = None

    def __post_init__(self):
        tabular = self.row is not None and self.header is not None
        if tabular == (self.pointer is not None):
            raise ValueError("issue needs exactly one of (row, header) or pointer")

    @property
    def is_warning(self) -> bool:
        return self.code in WARNING_CODES

    @property
    def location(self) -> str:
        if self.pointer is not None:
            return self.pointer
        if self.row == HEADER_ROW:
            return f"header, {self.header}"
        return f"row {self.row}, {self.header}"

    def __str__(self) -> str:
        return f"{self.location}: {self.code}: {self.message}"

    def to_dict(self) -> dict:
        if self.pointer is not None:
            return {"pointer": self.pointer, "code": self.code, "message": self.message}
        return {"row": self.row, "header": self.header, "code": self.code, "message": self.message}
