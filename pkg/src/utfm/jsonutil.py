"""Deterministic JSON rendering with full-precision floats.

Python's ``json`` module renders floats with ``repr`` (shortest round-trip
form). Persisted artifacts here render every float with 17 significant
digits instead, which also round-trips IEEE-754 doubles exactly and keeps
the byte stream stable across runs, so artifact files can be hashed and
diffed.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Any

from .errors import InputError


def format_float(value: float) -> str:
    """Render one finite double with 17 significant digits."""
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f"non-finite value {value!r} cannot be serialized to JSON")
    if value == 0.0:
        value = 0.0  # normalize -0.0 so parse/render round-trips the text
    return format(value, ".17g")


def dumps(obj: Any, *, indent: int | None = 2) -> str:
    """Serialize nested dicts/lists/scalars to deterministic JSON text."""
    pieces: list[str] = []
    _render(obj, pieces, indent, 0)
    return "".join(pieces)


def _render(obj: Any, out: list[str], indent: int | None, depth: int) -> None:
    if obj is None or obj is True or obj is False:
        out.append("null" if obj is None else ("true" if obj else "false"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, bool):  # pragma: no cover - caught above
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, (list, tuple)):
        _render_seq(list(obj), out, indent, depth)
    elif isinstance(obj, dict):
        _render_map(obj, out, indent, depth)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def _newline(out: list[str], indent: int | None, depth: int) -> None:
    if indent is not None:
        out.append("\n" + " " * (indent * depth))


def _render_seq(items: list, out: list[str], indent: int | None, depth: int) -> None:
    if not items:
        out.append("[]")
        return
    out.append("[")
    for i, item in enumerate(items):
        if i:
            out.append("," if indent is not None else ", ")
        _newline(out, indent, depth + 1)
        _render(item, out, indent, depth + 1)
    _newline(out, indent, depth)
    out.append("]")


def _render_map(mapping: dict, out: list[str], indent: int | None, depth: int) -> None:
    if not mapping:
        out.append("{}")
        return
    out.append("{")
    for i, (key, value) in enumerate(mapping.items()):
        if not isinstance(key, str):
            raise TypeError(f"JSON object keys must be strings, got {type(key).__name__}")
        if i:
            out.append("," if indent is not None else ", ")
        _newline(out, indent, depth + 1)
        out.append(json.dumps(key))
        out.append(": ")
        _render(value, out, indent, depth + 1)
    _newline(out, indent, depth)
    out.append("}")


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
