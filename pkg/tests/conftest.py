from __future__ import annotations

import contextlib
from pathlib import Path

import pytest

from sullivan.parser import parse_model

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"
DATA = Path(__file__).resolve().parent / "data"

# models with finite cohomology used throughout the suite
SUITE = ["s2", "s3", "cp2", "s3s3", "s2s4"]

_RESULTS: dict[int, tuple[bool, str]] = {}


def load(name: str):
    return parse_model((MODELS / f"{name}.sul").read_text()).model()


@pytest.fixture
def model():
    return load


@contextlib.contextmanager
def criterion(k: int, label: str):
    """Record PASS/FAIL for an acceptance criterion; failures still raise."""
    try:
        yield
    except BaseException:
        _RESULTS[k] = (False, label)
        raise
    _RESULTS[k] = (True, label)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        ok, label = _RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {label}")
