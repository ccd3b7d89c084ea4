"""Schema-driven CSV templates, CSV-to-JSON event conversion and event validation."""

from .errors import Lei2JsonError, SchemaError
from .flattener import ColumnSpec, RowTemplate, build_template, get_keys, merge_properties
from .issues import ValidationIssue
from .json_generator import EventArray, ProducerInfo, generate_message, parse_to_json, serialize
from .schema_model import PropertyNode, SchemaDocument, load_schema, parse_schema
from .schema_validator import ValidationReport, validate_events
from .tabular_ingest import bind_columns, parse_csv_text, read_csv, validate_cells
from .template_io import TemplateBundle, read_bundle, write_bundle

__version__ = "0.1.0"

__all__ = [
    "ColumnSpec",
    "EventArray",
    "Lei2JsonError",
    "ProducerInfo",
    "PropertyNode",
    "RowTemplate",
    "SchemaDocument",
    "SchemaError",
    "TemplateBundle",
    "ValidationIssue",
    "ValidationReport",
    "bind_columns",
    "build_template",
    "generate_message",
    "get_keys",
    "load_schema",
    "merge_properties",
    "parse_schema",
    "parse_to_json",
    "read_bundle",
    "parse_csv_text",
    "read_csv",
    "serialize",
    "validate_cells",
    "validate_events",
    "write_bundle",
]
