"""CSV builders and bad-cell seeding for the detailed weight fixture."""

from __future__ import annotations

import csv
import io
import random
from pathlib import Path

from lei2json.schema_model import load_schema
from lei2json.template_io import TemplateBundle

FIXTURES = Path(__file__).parent / "fixtures"

DETAILED_HEADERS = [
    "Animal ID", "Live Weight", "Weighed At", "Method", "Scale ID",
    "Calibrated", "Head Count", "Weigh Date", "Recorder Email", "Tags",
]

# header -> [(bad text, expected code)]
BAD_CELLS = {
    "Animal ID": [("", "REQUIRED_MISSING")],
    "Live Weight": [("abc", "TYPE_MISMATCH"), ("", "REQUIRED_MISSING"), ("1,5", "TYPE_MISMATCH")],
    "Weighed At": [("yesterday", "FORMAT_INVALID"), ("2023-05-01T25:00:00Z", "FORMAT_INVALID"),
                   ("", "REQUIRED_MISSING")],
    "Method": [("guess", "ENUM_VIOLATION"), ("Scale", "ENUM_VIOLATION")],
    "Calibrated": [("maybe", "TYPE_MISMATCH"), ("1", "TYPE_MISMATCH")],
    "Head Count": [("1.5", "TYPE_MISMATCH"), ("two", "TYPE_MISMATCH")],
    "Weigh Date": [("2023-13-45", "FORMAT_INVALID"), ("01/02/2023", "FORMAT_INVALID"), ("", "REQUIRED_MISSING")],
    "Recorder Email": [("bob@", "FORMAT_INVALID"), ("bob at farm.com", "FORMAT_INVALID")],
    "Tags": [("a;;b", "TYPE_MISMATCH")],
}


def clean_detailed_row(rng: random.Random, i: int) -> dict[str, str]:
    day = rng.randint(1, 28)
    return {
        "Animal ID": f"AU{100000 + i}",
        "Live Weight": f"{rng.uniform(150, 700):.1f}",
        "Weighed At": f"2023-04-{day:02d}T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:00+10:00",
        "Method": rng.choice(["scale", "estimate", ""]),
        "Scale ID": rng.choice(["S-1", "S-2"]),  # keeps seeded rows from going fully blank
        "Calibrated": rng.choice(["true", "FALSE", "True", ""]),
        "Head Count": rng.choice([str(rng.randint(1, 40)), ""]),
        "Weigh Date": f"2023-04-{day:02d}",
        "Recorder Email": rng.choice(["jo@station.example.com", ""]),
        "Tags": rng.choice(["red", "red;blue", " yellow ; green ", ""]),
    }


def clean_weight_row(rng: random.Random, i: int) -> dict[str, str]:
    return {
        "Animal ID": f"C{1000 + i}",
        "Live Weight": rng.choice([f"{rng.uniform(150, 700):.2f}", str(rng.randint(150, 700))]),
        "Method": rng.choice(["scale", "estimate", ""]),
    }


def csv_text(headers: list[str], rows: list[dict[str, str]], delimiter: str = ",") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", delimiter=delimiter)
    writer.writerow(headers)
    for row in rows:
        writer.writerow([row.get(h, "") for h in headers])
    return buf.getvalue()


def seed_bad_cells(rng: random.Random, rows: list[dict[str, str]], k: int):
    """Corrupt ``k`` distinct cells in place; returns {(row, header): code} with 1-based rows."""
    candidates = [(r, h) for r in range(len(rows)) for h in BAD_CELLS]
    chosen = rng.sample(candidates, k)
    expected = {}
    for r, h in chosen:
        text, code = rng.choice(BAD_CELLS[h])
        rows[r][h] = text
        expected[(r + 1, h)] = code
    return expected


def fixture_bundle(name: str) -> TemplateBundle:
    return TemplateBundle.from_schema(load_schema(FIXTURES / f"{name}.json"))
