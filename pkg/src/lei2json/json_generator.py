"""Build the JSON event array from validated rows."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .errors import Lei2JsonError, PreconditionViolation, ProducerError
from .flattener import ColumnSpec, RowTemplate
from .formats import is_email
from .tabular_ingest import RowValues, Sheet, ingest

_PRODUCER_FIELDS = (
    # (input key, attribute, output key)
    ("fullName", "full_name", "name"),
    ("email", "email", "email"),
    ("address", "address", "address"),
    ("phone", "phone", "phone"),
)


@dataclass(frozen=True)
class ProducerInfo:
    full_name: str | None = None
    email: str | None = None
    address: str | None = None
    phone: str | None = None
    pic: str | None = None  # property identification code

    def __post_init__(self):
        for name in ("full_name", "email", "address", "phone", "pic"):
            value = getattr(self, name)
            if value is None:
                continue
            if not isinstance(value, str):
                raise ProducerError(f"producer {name} must be text")
            value = value.strip()
            object.__setattr__(self, name, value or None)
        if self.email is not None and not is_email(self.email):
            raise ProducerError(f"producer email '{self.email}' is not a valid address")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], pic: str | None = None) -> ProducerInfo:
        """From the producer file layout ``{"fullName","email","address","phone"}``."""
        if not isinstance(data, Mapping):
            raise ProducerError("producer details must be a JSON object")
        kwargs = {attr: data.get(key) for key, attr, _ in _PRODUCER_FIELDS}
        return cls(**kwargs, pic=pic if pic is not None else data.get("pic"))

    def to_json(self) -> dict[str, str]:
        out = {}
        for _, attr, key in _PRODUCER_FIELDS:
            value = getattr(self, attr)
            if value is not None:
                out[key] = value
        if self.pic is not None:
            out["pic"] = self.pic
        return out


@dataclass
class EventArray:
    events: list[dict]
    event_name: str

    def __len__(self) -> int:
        return len(self.events)


class ConversionAborted(Lei2JsonError):
    """Cell validation found problems, so no JSON was produced."""

    code = "DATA_INVALID"

    def __init__(self, issues, warnings=()):
        super().__init__(f"{len(issues)} cell issue(s); conversion aborted")
        self.issues = list(issues)
        self.warnings = list(warnings)


def parse_to_json(
    rows: Sequence[RowValues],
    template: RowTemplate,
    producer: ProducerInfo | None,
    event_name: str,
) -> EventArray:
    """One event per row: fill the skeleton, then add ``eventName`` and ``producer``."""
    bad = [i for r in rows for i in r.issues]
    if bad:
        raise PreconditionViolation(f"{len(bad)} unresolved cell issue(s), first at {bad[0].location}")
    producer_json = producer.to_json() if producer is not None else {}
    events = []
    for row in rows:
        event = template.fill(row.values)
        event["eventName"] = event_name
        if producer_json:
            event["producer"] = dict(producer_json)
        events.append(event)
    return EventArray(events, event_name)


def generate_message(
    sheet: Sheet,
    columns: Sequence[ColumnSpec],
    template: RowTemplate,
    event_name: str,
    producer: ProducerInfo | None = None,
) -> EventArray:
    """Validate the sheet and convert it; raises :class:`ConversionAborted` on any cell issue."""
    result = ingest(sheet, columns)
    if result.issues:
        raise ConversionAborted(result.issues, result.warnings)
    return parse_to_json(result.rows, template, producer, event_name)


def serialize(events: EventArray | list, pretty: bool = False) -> str:
    data = events.events if isinstance(events, EventArray) else events
    if pretty:
        return json.dumps(data, indent=2, ensure_ascii=False)
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False)
