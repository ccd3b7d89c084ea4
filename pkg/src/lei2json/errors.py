"""Exception hierarchy shared by every stage of the pipeline.

Each exception carries a stable ``code`` string so callers (the CLI, the
HTTP service) can map failures onto exit codes and status codes without
string-matching messages.
"""

from __future__ import annotations


class Lei2JsonError(Exception):
    """Base class for all errors raised by this package."""

    code = "ERROR"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self) -> str:
        return self.args[0]

    def __str__(self) -> str:
        return f"{self.code}: {self.args[0]}"


class SchemaError(Lei2JsonError):
    """The event schema cannot be loaded or flattened."""

    code = "SCHEMA_ERROR"


class TemplateIOError(Lei2JsonError):
    """Reading or writing a template bundle failed."""

    code = "IO_ERROR"


class ManifestMismatchError(TemplateIOError):
    code = "MANIFEST_MISMATCH"


class BindingError(Lei2JsonError):
    """CSV headers could not be bound to the template columns.

    ``issues`` holds the located problems (missing or duplicated headers).
    """

    code = "BINDING_ERROR"

    def __init__(self, message: str, issues, code: str | None = None):
        super().__init__(message, code)
        self.issues = list(issues)


class PreconditionViolation(Lei2JsonError):
    code = "PRECONDITION_VIOLATION"


class InputNotArrayError(Lei2JsonError):
    code = "INPUT_NOT_ARRAY"


class ProducerError(Lei2JsonError):
    code = "PRODUCER_INVALID"
