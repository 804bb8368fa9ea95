"""Table serialisation.

CSV: optional ``#`` comment lines, one header row, fixed column order,
shortest round-trip float formatting (``repr``), LF line endings.
JSON: an array of row objects with the same field names.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .calibration import BeamSpec
from .scan import Measurement, SpectrumTable


def _fmt(v: float) -> str:
    return repr(float(v))


def table_to_csv(table: SpectrumTable, comments=()) -> str:
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    names = table.column_names
    buf.write(",".join(names) + "\n")
    cols = [table.columns[n] for n in names]
    for j in range(len(table)):
        buf.write(",".join(_fmt(c[j]) for c in cols) + "\n")
    return buf.getvalue()


def table_to_json(table: SpectrumTable) -> str:
    rows = [{k: float(v) for k, v in row.items()} for row in table.rows]
    return json.dumps(rows, indent=1) + "\n"


def emit_table(table: SpectrumTable, path, fmt: str = "csv", comments=()) -> None:
    """Write ``table`` to ``path``; identical input gives identical bytes."""
    if fmt == "csv":
        text = table_to_csv(table, comments)
    elif fmt == "json":
        text = table_to_json(table)
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _uncommented(text: str):
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _columns_from_rows(header, rows) -> dict[str, np.ndarray]:
    return {h: np.array([float(r[i]) for r in rows]) for i, h in enumerate(header)}


def read_table(path, axis: str | None = None) -> SpectrumTable:
    """Read a table written by :func:`emit_table` (CSV or JSON by suffix)."""
    text = Path(path).read_text(encoding="utf-8")
    if str(path).endswith(".json"):
        rows = json.loads(text)
        header = list(rows[0]) if rows else []
        columns = {h: np.array([float(r[h]) for r in rows]) for h in header}
    else:
        reader = list(csv.reader(_uncommented(text)))
        header, body = reader[0], reader[1:]
        columns = _columns_from_rows(header, body)
    if axis is None:
        axis = header[0][:-4] if header and header[0].endswith("_mhz") else "delta_p"
    return SpectrumTable(axis, columns)


def read_measurements(path) -> Measurement:
    """Measured data: CSV with ``axis_mhz,value`` and an optional ``sigma`` column."""
    reader = list(csv.reader(_uncommented(Path(path).read_text(encoding="utf-8"))))
    if not reader:
        raise ValueError(f"{path} is empty")
    header = [h.strip() for h in reader[0]]
    for need in ("axis_mhz", "value"):
        if need not in header:
            raise ValueError(f"{path}: missing column {need!r}")
    unknown = [h for h in header if h not in ("axis_mhz", "value", "sigma")]
    if unknown:
        raise ValueError(f"{path}: unknown column {unknown[0]!r}")
    cols = _columns_from_rows(header, reader[1:])
    return Measurement(cols["axis_mhz"], cols["value"], cols.get("sigma"))


def read_pairs(path) -> list[tuple[BeamSpec, float]]:
    """Calibration pairs: CSV with ``power_w,diameter_cm,rabi_mhz``."""
    reader = list(csv.reader(_uncommented(Path(path).read_text(encoding="utf-8"))))
    if not reader:
        raise ValueError(f"{path} is empty")
    header = [h.strip() for h in reader[0]]
    need = ("power_w", "diameter_cm", "rabi_mhz")
    for n in need:
        if n not in header:
            raise ValueError(f"{path}: missing column {n!r}")
    idx = [header.index(n) for n in need]
    return [
        (BeamSpec(float(r[idx[0]]), float(r[idx[1]])), float(r[idx[2]]))
        for r in reader[1:]
    ]
