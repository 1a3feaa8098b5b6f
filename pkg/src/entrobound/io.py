"""File formats: CSV tables, sweep-row JSON, density-matrix JSON.

Floats are written with ``repr``, the shortest decimal string that parses
back to the same double, so every table round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources

import jsonschema
import numpy as np

from .errors import ParseError
from .quantum import DensityMatrix


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_value(r.get(c)) for c in columns])
    return buf.getvalue()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def json_text(obj) -> str:
    return json.dumps(_plain(obj), indent=2, allow_nan=False) + "\n"


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, float) and obj != obj:
        return None
    if isinstance(obj, float) and obj in (float("inf"), float("-inf")):
        return repr(obj)
    return obj


# ------------------------------------------------------------ sweep rows


def sweep_schema() -> dict:
    text = resources.files("entrobound").joinpath("schemas/sweep_row.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_sweep_rows(rows: list[dict]) -> None:
    """Raise :class:`ParseError` naming the first row that violates the schema."""
    validator = jsonschema.Draft202012Validator(sweep_schema())
    for i, r in enumerate(rows):
        err = next(iter(validator.iter_errors(r)), None)
        if err is not None:
            raise ParseError(f"row {i}: {err.message}")


def read_sweep_csv(text: str) -> list[dict]:
    """Parse a sweep CSV into schema-valid records, checking every float round-trips exactly."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty sweep file") from None
    rows = []
    for line_no, cells in enumerate(reader, start=2):
        if len(cells) != len(header):
            raise ParseError(f"line {line_no}: expected {len(header)} fields, got {len(cells)}")
        rec = {}
        for name, cell in zip(header, cells):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"line {line_no}, field {name!r}: not a number: {cell!r}") from None
            if repr(v) != cell:
                raise ParseError(f"line {line_no}, field {name!r}: {cell!r} does not round-trip")
            rec[name] = v
        rows.append(rec)
    validate_sweep_rows(rows)
    return rows


# --------------------------------------------------------------- matrices


def matrix_to_json(rho: DensityMatrix) -> dict:
    e = rho.entries
    return {
        "d": rho.d,
        "entries_re": [[float(x) for x in row] for row in np.real(e)],
        "entries_im": [[float(x) for x in row] for row in np.imag(e)],
    }


def write_matrix(path: str, rho: DensityMatrix) -> None:
    write_text(path, json_text(matrix_to_json(rho)))


def _matrix_field(obj: dict, name: str, d: int) -> np.ndarray:
    if name not in obj:
        raise ParseError(f"field {name!r} is missing")
    try:
        a = np.array(obj[name], dtype=np.float64)
    except (TypeError, ValueError):
        raise ParseError(f"field {name!r} must contain only numbers") from None
    if a.shape == (d * d,):
        a = a.reshape(d, d)
    if a.shape != (d, d):
        raise ParseError(f"field {name!r} has shape {a.shape}, expected ({d}, {d}) or ({d * d},)")
    return a


def matrix_from_json(obj) -> DensityMatrix:
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object with fields d, entries_re, entries_im")
    d = obj.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ParseError(f"field 'd' must be a positive integer, got {d!r}")
    re = _matrix_field(obj, "entries_re", d)
    im = _matrix_field(obj, "entries_im", d) if "entries_im" in obj else np.zeros((d, d))
    m = re + 1j * im
    if not np.any(im) and np.count_nonzero(re - np.diag(np.diagonal(re))) == 0:
        return DensityMatrix.diagonal(np.diagonal(re))
    return DensityMatrix(m)


def loads_matrix(text: str) -> DensityMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return matrix_from_json(obj)


def read_matrix(path: str) -> DensityMatrix:
    with open(path, encoding="utf-8") as fh:
        return loads_matrix(fh.read())


def read_distribution(path: str) -> np.ndarray:
    """A JSON array of probabilities, or an object with a ``probs`` array."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(obj, dict):
        if "probs" not in obj:
            raise ParseError("field 'probs' is missing")
        obj = obj["probs"]
    try:
        return np.array(obj, dtype=np.float64).ravel()
    except (TypeError, ValueError):
        raise ParseError("field 'probs' must be an array of numbers") from None
