"""
Text codecs for the CLI.

Matrix text: a "rows cols" header, then one line per row with integer or
p/q entries. Parameter files: JSON with "order", "lower" [[j, s, v]],
"diag" [[i, v]] and "upper" [[s, j, v]], values as exact strings or ints.
"""

from __future__ import annotations

import json
import re
import sys
from typing import Any, Dict

from src.core.errors import FormatError
from src.core.matrix import RatMatrix, format_rat, parse_rat
from src.core.params import ParamSet

_HEADER_PATTERN = re.compile(r"^(\d+)\s+(\d+)$", re.ASCII)


def read_source(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path} is not UTF-8 text: {exc.reason} at byte {exc.start}", field="root") from exc


def write_target(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def parse_matrix(text: str) -> RatMatrix:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("empty matrix input", field="header")
    header = _HEADER_PATTERN.match(lines[0])
    if header is None:
        raise FormatError(f"header must be 'rows cols', got {lines[0]!r}", field="header")
    rows, cols = int(header.group(1)), int(header.group(2))
    if rows < 1 or cols < 1:
        raise FormatError(f"matrix must be at least 1x1, got {rows}x{cols}", field="header")
    body = lines[1:]
    if len(body) != rows:
        raise FormatError(f"expected {rows} rows, found {len(body)}", field="rows")
    grid = []
    for number, line in enumerate(body, start=1):
        entries = line.split()
        if len(entries) != cols:
            raise FormatError(f"row {number} has {len(entries)} entries, expected {cols}", field=f"row {number}")
        try:
            grid.append([parse_rat(entry) for entry in entries])
        except FormatError as exc:
            raise FormatError(f"row {number}: {exc}", field=f"row {number}") from exc
    return RatMatrix(grid)


def serialize_matrix(matrix: RatMatrix) -> str:
    lines = [f"{matrix.rows} {matrix.cols}"]
    lines.extend(" ".join(format_rat(value) for value in row) for row in matrix)
    return "\n".join(lines) + "\n"


def hydrate_params(payload: Any) -> ParamSet:
    if not isinstance(payload, dict):
        raise FormatError("parameter file must hold a JSON object", field="root")
    order = payload.get("order")
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise FormatError(f"'order' must be a nonnegative integer, got {order!r}", field="order")
    lower = _indexed(payload, "lower", 2)
    upper = _indexed(payload, "upper", 2)
    diag = {key[0]: value for key, value in _indexed(payload, "diag", 1).items()}
    return ParamSet.from_families(order, lower, diag, upper)


def serialize_params(params: ParamSet) -> Dict[str, Any]:
    return {
        "order": params.order,
        "lower": [[j, s, format_rat(value)] for (j, s), value in params.lower.items()],
        "diag": [[i, format_rat(value)] for i, value in params.diag.items()],
        "upper": [[s, j, format_rat(value)] for (s, j), value in params.upper.items()],
    }


def dumps_params(params: ParamSet, indent: int = 2) -> str:
    return json.dumps(serialize_params(params), indent=indent) + "\n"


def load_params(path: str) -> ParamSet:
    try:
        payload = json.loads(read_source(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"parameter file is not valid JSON: {exc}", field="root") from exc
    return hydrate_params(payload)


def load_matrix(path: str) -> RatMatrix:
    return parse_matrix(read_source(path))


def _indexed(payload: Dict[str, Any], field: str, arity: int) -> Dict[tuple, Any]:
    rows = payload.get(field, [])
    if not isinstance(rows, list):
        raise FormatError(f"'{field}' must be a list", field=field)
    entries: Dict[tuple, Any] = {}
    for position, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != arity + 1:
            raise FormatError(f"'{field}' entry {position} must be a list of {arity} indices and a value", field=field)
        key = tuple(row[:arity])
        if not all(isinstance(index, int) and not isinstance(index, bool) for index in key):
            raise FormatError(f"'{field}' entry {position} has non-integer indices {list(key)}", field=field)
        if key in entries:
            raise FormatError(f"'{field}' repeats index {_label(key)}", field=field)
        entries[key] = _value(row[arity], field, key)
    return entries


def _value(raw: object, field: str, key: tuple) -> object:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise FormatError(f"'{field}' value at {_label(key)} must be an integer or 'p/q' string", field=field)
    if isinstance(raw, str):
        try:
            return parse_rat(raw)
        except FormatError as exc:
            raise FormatError(f"'{field}' value at {_label(key)}: {exc}", field=field) from exc
    return raw


def _label(key: tuple) -> str:
    return "(" + ",".join(str(index) for index in key) + ")"
