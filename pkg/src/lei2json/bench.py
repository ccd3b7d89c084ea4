"""Timing harness for template building, conversion and validation.

Each measured size gets ``runs`` wall-clock samples (after ``warmup``
discarded ones) reported in milliseconds with their mean and population
standard deviation. Synthetic inputs are seeded so reruns see identical
data.
"""

from __future__ import annotations

import csv
import datetime as dt
import gc
import io
import json
import random
import statistics
import tempfile
import time
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path
from typing import Callable, Sequence

from .json_generator import ProducerInfo, generate_message, serialize
from .schema_model import load_schema, parse_schema
from .schema_validator import validate_events
from .tabular_ingest import parse_csv_text
from .template_io import TemplateBundle, render_bundle

FUNCTIONS = ("buildTemplate", "parseToJSON", "validate")
DEFAULT_SIZES = {
    "buildTemplate": [5, 10, 15, 20, 25],
    "parseToJSON": list(range(1000, 10001, 1000)),
    "validate": list(range(1000, 10001, 1000)),
}
# single calls of buildTemplate take tens of microseconds, below timer noise
DEFAULT_INNER = {"buildTemplate": 500, "parseToJSON": 1, "validate": 1}
EVENT_COLUMNS = 8

# (name, displayName, schema fragment, required)
_WEIGHT_FIELDS = [
    ("animalId", "Animal ID", {"type": "string"}, True),
    ("liveWeight", "Live Weight", {"type": "number"}, True),
    ("weighDate", "Weigh Date", {"type": "string", "format": "date"}, True),
    ("recordedAt", "Recorded At", {"type": "string", "format": "date-time"}, False),
    ("method", "Method", {"type": "string", "enum": ["scale", "estimate"]}, False),
    ("fasted", "Fasted", {"type": "boolean"}, False),
    ("headCount", "Head Count", {"type": "integer"}, False),
    ("recorderEmail", "Recorder Email", {"type": "string", "format": "email"}, False),
]
_EXTRA_KINDS = [
    {"type": "string"},
    {"type": "number"},
    {"type": "integer"},
    {"type": "boolean"},
    {"type": "string", "format": "date"},
    {"type": "string", "enum": ["low", "medium", "high"]},
    {"type": "array", "items": {"type": "string"}},
]


def synthetic_schema(size: int, seed: int = 0) -> dict:
    """A weight-like event schema with ``size`` leaf properties."""
    if size < 1:
        raise ValueError("schema size must be at least 1")
    rng = random.Random(seed)
    props, required = {}, []
    for i in range(size):
        if i < len(_WEIGHT_FIELDS):
            name, display, frag, req = _WEIGHT_FIELDS[i]
        else:
            name, display = f"attribute{i + 1}", f"Attribute {i + 1}"
            frag, req = rng.choice(_EXTRA_KINDS), rng.random() < 0.3
        props[name] = {"displayName": display, "description": f"{display} of the animal", **frag}
        if req:
            required.append(name)
    return {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "description": "weight",
        "type": "object",
        "properties": props,
        "required": required,
    }


def _cell(rng: random.Random, frag: dict) -> str:
    if "enum" in frag:
        return rng.choice(frag["enum"])
    kind, fmt = frag["type"], frag.get("format")
    if kind == "number":
        return f"{rng.uniform(80, 900):.1f}"
    if kind == "integer":
        return str(rng.randint(1, 500))
    if kind == "boolean":
        return rng.choice(["true", "false"])
    if kind == "array":
        return ";".join(f"tag{rng.randint(1, 99)}" for _ in range(rng.randint(1, 3)))
    day = dt.date(2020, 1, 1) + dt.timedelta(days=rng.randint(0, 1500))
    if fmt == "date":
        return day.isoformat()
    if fmt == "date-time":
        return f"{day.isoformat()}T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:00Z"
    if fmt == "email":
        return f"user{rng.randint(1, 999)}@farm.example.com"
    return f"AU{rng.randint(10**8, 10**9 - 1)}"


def synthetic_csv(schema: dict, event_count: int, seed: int = 0) -> str:
    """CSV text with a header row and ``event_count`` valid data rows."""
    rng = random.Random(seed + 1)
    props = schema["properties"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([p["displayName"] for p in props.values()])
    for _ in range(event_count):
        writer.writerow([_cell(rng, p) for p in props.values()])
    return buf.getvalue()


def generate_synthetic(
    schema_size: int, event_count: int, out_dir: str | PathLike, seed: int = 0
) -> tuple[Path, Path]:
    """Write ``schema.json`` and ``data.csv`` into ``out_dir``; returns both paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    schema = synthetic_schema(schema_size, seed)
    schema_path = out_dir / "schema.json"
    csv_path = out_dir / "data.csv"
    schema_path.write_text(json.dumps(schema, indent=2) + "\n", encoding="utf-8")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(synthetic_csv(schema, event_count, seed))
    return schema_path, csv_path


@dataclass
class BenchResult:
    function: str
    size: int
    runs: list[float]  # milliseconds per call
    inner: int = 1

    @property
    def mean(self) -> float:
        return statistics.fmean(self.runs)

    @property
    def stddev(self) -> float:
        return statistics.pstdev(self.runs)


@dataclass
class BenchPlan:
    functions: Sequence[str] = FUNCTIONS
    sizes: dict[str, list[int]] = field(default_factory=lambda: dict(DEFAULT_SIZES))
    runs: int = 10
    warmup: int = 1
    seed: int = 0
    inner: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_INNER))


@dataclass
class LinearFit:
    slope: float
    intercept: float
    r2: float


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    """Ordinary least squares line and its coefficient of determination."""
    slope, intercept = statistics.linear_regression(xs, ys)
    try:
        r = statistics.correlation(xs, ys)
    except statistics.StatisticsError:  # constant input
        r = 0.0
    return LinearFit(slope, intercept, r * r)


def adjacent_inversions(values: Sequence[float]) -> int:
    return sum(1 for a, b in zip(values, values[1:]) if b < a)


def _time(op: Callable[[], object], inner: int) -> float:
    gc.collect()
    gc.disable()
    try:
        start = time.perf_counter()
        for _ in range(inner):
            op()
        elapsed = time.perf_counter() - start
    finally:
        gc.enable()
    return elapsed * 1000.0 / inner


def _build_op(size: int, seed: int, workdir: Path) -> Callable[[], object]:
    path = workdir / f"schema-{size}.json"
    path.write_text(json.dumps(synthetic_schema(size, seed)), encoding="utf-8")

    def op():
        return render_bundle(TemplateBundle.from_schema(load_schema(path)))

    return op


def _event_fixture(size: int, seed: int):
    doc = parse_schema(synthetic_schema(EVENT_COLUMNS, seed))
    bundle = TemplateBundle.from_schema(doc)
    text = synthetic_csv(synthetic_schema(EVENT_COLUMNS, seed), size, seed)
    return doc, bundle, text


def _parse_op(size: int, seed: int, workdir: Path) -> Callable[[], object]:
    _, bundle, text = _event_fixture(size, seed)
    producer = ProducerInfo("Bench Producer", "bench@farm.example.com", pic="QABC1234")

    def op():
        events = generate_message(
            parse_csv_text(text), bundle.columns, bundle.row_template, bundle.event_name, producer
        )
        return serialize(events)

    return op


def _validate_op(size: int, seed: int, workdir: Path) -> Callable[[], object]:
    doc, bundle, text = _event_fixture(size, seed)
    events = generate_message(
        parse_csv_text(text), bundle.columns, bundle.row_template, bundle.event_name
    ).events

    def op():
        return validate_events(events, doc)

    return op


_OPS = {"buildTemplate": _build_op, "parseToJSON": _parse_op, "validate": _validate_op}


def run_bench(plan: BenchPlan, progress: Callable[[BenchResult], None] | None = None) -> list[BenchResult]:
    """Time every (function, size) pair ``plan.runs`` times.

    Runs are interleaved round-robin across the sizes of a function, so slow
    spells on a shared machine spread over the whole sweep instead of
    landing on one size and bending the curve.
    """
    if not plan.functions or plan.runs < 1:
        raise ValueError("bench plan needs at least one function and one run")
    results = []
    with tempfile.TemporaryDirectory(prefix="lei2json-bench-") as tmp:
        for function in plan.functions:
            if function not in _OPS:
                raise ValueError(f"unknown bench function {function!r}")
            inner = plan.inner.get(function, 1)
            sizes = list(plan.sizes[function])
            ops = [_OPS[function](size, plan.seed, Path(tmp)) for size in sizes]
            for op in ops:
                for _ in range(plan.warmup):
                    _time(op, inner)
            samples: list[list[float]] = [[] for _ in sizes]
            for _ in range(plan.runs):
                for i, op in enumerate(ops):
                    samples[i].append(_time(op, inner))
            for size, runs in zip(sizes, samples):
                result = BenchResult(function, size, runs, inner)
                results.append(result)
                if progress:
                    progress(result)
    return results


def write_report(results: Sequence[BenchResult], path_or_buf) -> None:
    """CSV with one ``function,size,run,ms`` line per sample, then mean/stddev lines."""
    own = isinstance(path_or_buf, (str, PathLike))
    fh = open(path_or_buf, "w", encoding="utf-8", newline="") if own else path_or_buf
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["function", "size", "run", "ms"])
        for r in results:
            for i, ms in enumerate(r.runs, start=1):
                writer.writerow([r.function, r.size, i, f"{ms:.6f}"])
        for r in results:
            writer.writerow([r.function, r.size, "mean", f"{r.mean:.6f}"])
            writer.writerow([r.function, r.size, "stddev", f"{r.stddev:.6f}"])
    finally:
        if own:
            fh.close()


def fits_by_function(results: Sequence[BenchResult]) -> dict[str, LinearFit]:
    grouped: dict[str, list[BenchResult]] = {}
    for r in results:
        grouped.setdefault(r.function, []).append(r)
    return {
        fn: linear_fit([r.size for r in rs], [r.mean for r in rs])
        for fn, rs in grouped.items()
        if len(rs) >= 2
    }
