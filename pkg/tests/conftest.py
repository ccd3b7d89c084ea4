from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record_criterion(name: str, passed: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((name, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}" + (f" ({detail})" if detail else ""))


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def weight_schema_path() -> Path:
    return FIXTURES / "weight.json"


@pytest.fixture
def weight_raw() -> dict:
    return json.loads((FIXTURES / "weight.json").read_text())


@pytest.fixture
def detailed_schema_path() -> Path:
    return FIXTURES / "weight_detailed.json"


@pytest.fixture
def weight_doc(weight_schema_path):
    from lei2json.schema_model import load_schema

    return load_schema(weight_schema_path)


@pytest.fixture
def weight_bundle(weight_doc):
    from lei2json.template_io import TemplateBundle

    return TemplateBundle.from_schema(weight_doc)


@pytest.fixture
def detailed_bundle(detailed_schema_path):
    from lei2json.schema_model import load_schema
    from lei2json.template_io import TemplateBundle

    return TemplateBundle.from_schema(load_schema(detailed_schema_path))


def write_json(path: Path, obj) -> Path:
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path
