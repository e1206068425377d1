"""Matrix file formats and the JSON interchange record.

* Rational CSV: UTF-8, comma-separated, ``#`` starts a comment line;
  cells are integer or ``p/q`` literals.  Rationals are always written in
  canonical reduced form with a positive denominator (``str(Fraction)``
  guarantees this), never as floats.
* Matrix Market array format: the standard dense ``array`` layout,
  column-major values, float64 backend only.  Values are written with
  ``repr`` so they round-trip bit-exactly.
* Interchange record: one JSON document per matrix carrying the input,
  the factorization result, and the per-k existence report
  (schema_version "1").  Used by the ``factor``/``verify``/``xcheck``
  subcommands and by external differential-testing fixtures.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .analysis import ExistenceReport
from .errors import ParseError, ShapeError
from .fields import RATIONAL, float64
from .matrix import Matrix

SCHEMA_VERSION = "1"

MODES = ("general", "unit-lower", "unit-upper", "partial-pivot", "full-pivot")


# -- rational CSV ---------------------------------------------------------------


def parse_rational_csv(text: str) -> Matrix:
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        parsed = []
        for colno, cell in enumerate(cells, start=1):
            try:
                parsed.append(Fraction(cell))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(
                    "row %d, column %d: cannot parse cell %r (%s)" % (len(rows) + 1, colno, cell, exc)
                ) from exc
        if width is None:
            width = len(parsed)
        elif len(parsed) != width:
            raise ParseError(
                "row %d: expected %d cells, got %d (line %d)" % (len(rows) + 1, width, len(parsed), lineno)
            )
        rows.append(parsed)
    if not rows:
        raise ParseError("no matrix rows found")
    return Matrix(rows)


def format_rational_csv(a: Matrix) -> str:
    if not a.field.exact:
        raise ShapeError("rational CSV stores exact matrices only")
    return "\n".join(",".join(str(e) for e in row) for row in a.to_rows()) + "\n"


def read_rational_csv(path) -> Matrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rational_csv(fh.read())


def write_rational_csv(a: Matrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_rational_csv(a))


# -- Matrix Market dense array ----------------------------------------------------


def parse_matrix_market(text: str, zero_tolerance: float | None = None) -> Matrix:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise ParseError("missing MatrixMarket header")
    header = lines[0].lower().split()
    if header[1:3] != ["matrix", "array"] or "real" not in header or "general" not in header:
        raise ParseError("only 'matrix array real general' is supported, got %r" % lines[0])
    body = [ln.strip() for ln in lines[1:] if ln.strip() and not ln.strip().startswith("%")]
    if not body:
        raise ParseError("missing size line")
    try:
        m, n = (int(tok) for tok in body[0].split())
    except ValueError as exc:
        raise ParseError("bad size line %r" % body[0]) from exc
    values = body[1:]
    if len(values) != m * n:
        raise ParseError("expected %d values, got %d" % (m * n, len(values)))
    cells = [[0.0] * n for _ in range(m)]
    idx = 0
    for j in range(n):  # column-major per the format
        for i in range(m):
            try:
                cells[i][j] = float(values[idx])
            except ValueError as exc:
                raise ParseError("row %d, column %d: cannot parse value %r" % (i + 1, j + 1, values[idx])) from exc
            idx += 1
    return Matrix(cells, float64(zero_tolerance))


def format_matrix_market(a: Matrix) -> str:
    if a.field.exact:
        raise ShapeError("Matrix Market output is float64-only; rationals go to CSV")
    out = ["%%MatrixMarket matrix array real general", "%d %d" % (a.rows, a.cols)]
    rows = a.to_rows()
    for j in range(a.cols):
        for i in range(a.rows):
            out.append(repr(rows[i][j]))
    return "\n".join(out) + "\n"


def read_matrix_market(path, zero_tolerance: float | None = None) -> Matrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix_market(fh.read(), zero_tolerance)


def write_matrix_market(a: Matrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix_market(a))


def read_matrix_file(path, field_kind: str = "rational", zero_tolerance: float | None = None) -> Matrix:
    """Dispatch on extension: ``.mtx`` is Matrix Market (float64), anything
    else rational CSV (optionally downgraded to float64 on request)."""
    name = str(path)
    if name.endswith((".mtx", ".mm")):
        return read_matrix_market(path, zero_tolerance)
    mat = read_rational_csv(path)
    if field_kind == "float64":
        return Matrix([[float(e) for e in row] for row in mat.to_rows()], float64(zero_tolerance))
    return mat


# -- JSON interchange record -------------------------------------------------------

_MAP = {"type": "array", "items": {"type": "integer", "minimum": 1}}
_MATRIX = {
    "type": "array",
    "items": {"type": "array", "items": {"type": ["string", "number"]}},
}
_NULLABLE_MATRIX = {
    "anyOf": [{"type": "null"}, _MATRIX],
}

RECORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "n", "field", "matrix", "result", "report"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "n": {"type": "integer", "minimum": 0},
        "cols": {"type": ["integer", "null"], "minimum": 0},
        "field": {"enum": ["rational", "float64"]},
        "mode": {"enum": list(MODES)},
        "tolerance": {"type": ["number", "null"]},
        "matrix": _MATRIX,
        "result": {
            "type": "object",
            "required": ["exists"],
            "properties": {
                "exists": {"type": "boolean"},
                "witness_k": {"type": ["integer", "null"], "minimum": 1},
                "L": _NULLABLE_MATRIX,
                "U": _NULLABLE_MATRIX,
                "rank": {"type": ["integer", "null"], "minimum": 0},
                "row_map": {"anyOf": [{"type": "null"}, _MAP]},
                "col_map": {"anyOf": [{"type": "null"}, _MAP]},
            },
        },
        "report": {
            "anyOf": [
                {"type": "null"},
                {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": [
                            "k", "null_principal", "null_col_block", "null_row_block",
                            "general_ok", "unit_lower_ok", "unit_upper_ok",
                        ],
                    },
                },
            ]
        },
        "gen": {"type": ["object", "null"]},
    },
}


def validate_record(record: dict) -> None:
    """Raise ``jsonschema.ValidationError`` when the record is malformed."""
    jsonschema.validate(record, RECORD_SCHEMA)


def matrix_to_json(a: Matrix) -> list:
    if a.field.exact:
        return [[str(e) for e in row] for row in a.to_rows()]
    return a.to_rows()


def matrix_from_json(cells, field_kind: str, zero_tolerance: float | None = None) -> Matrix:
    if field_kind == "rational":
        try:
            rows = [[Fraction(str(e)) for e in row] for row in cells]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad rational cell in record: %s" % exc) from exc
        return Matrix(rows)
    return Matrix([[float(e) for e in row] for row in cells], float64(zero_tolerance))


def report_to_json(report: ExistenceReport | None):
    if report is None:
        return None
    return [
        {
            "k": row.k,
            "null_principal": row.null_principal,
            "null_col_block": row.null_col_block,
            "null_row_block": row.null_row_block,
            "general_ok": row.general_ok,
            "unit_lower_ok": row.unit_lower_ok,
            "unit_upper_ok": row.unit_upper_ok,
        }
        for row in report.per_k
    ]


def dump_record(record: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, newline at
    the end, so identical records are byte-identical files."""
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def write_record(record: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_record(record))


def read_record(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
