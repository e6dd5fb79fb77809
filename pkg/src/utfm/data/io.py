"""CSV ingestion and emission for flight-leg records.

The canonical schema is the FlightLegRecord field list, one column per
field, UTF-8, header mandatory. ``delay_code`` serializes as the empty
string when absent.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from ..errors import RecordError, SchemaError
from .records import RECORD_FIELDS, FlightLegRecord

CSV_COLUMNS = RECORD_FIELDS

_INT_FIELDS = frozenset({"dow", "doy", "moy", "season", "ONBD_CT",
                         "sched_route_originator_flag", "SWAP_FLT_FLAG"})
_STR_FIELDS = frozenset({"flight_id", "date", "SCHED_ACFT_TYPE", "ACTL_ACFT_TYPE"})


def _parse_cell(name: str, text: str, row: int):
    try:
        if name == "delay_code":
            return text if text else None
        if name in _STR_FIELDS:
            return text
        if name in _INT_FIELDS:
            return int(text)
        return float(text)
    except ValueError as exc:
        raise RecordError(f"row {row}, column {name}: cannot parse {text!r}",
                          row=row, field=name) from exc


def parse_csv(text: str) -> list[FlightLegRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise SchemaError("CSV input has no header row")
    header = tuple(reader.fieldnames)
    unknown = set(header) - set(CSV_COLUMNS)
    missing = set(CSV_COLUMNS) - set(header)
    if unknown:
        raise SchemaError(f"unknown CSV columns: {sorted(unknown)}")
    if missing:
        raise SchemaError(f"missing CSV columns: {sorted(missing)}")
    records: list[FlightLegRecord] = []
    for i, row in enumerate(reader, start=2):  # header is line 1
        if None in row.values() or None in row:
            raise RecordError(f"row {i}: wrong number of cells", row=i)
        record = FlightLegRecord(**{name: _parse_cell(name, row[name], i)
                                    for name in CSV_COLUMNS})
        record.validate(row=i)
        records.append(record)
    return records


def load_csv(path) -> list[FlightLegRecord]:
    return parse_csv(Path(path).read_text(encoding="utf-8"))


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)  # shortest exact round-trip form
    return str(value)


def render_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow([_format_cell(getattr(record, name)) for name in CSV_COLUMNS])
    return buf.getvalue()


def write_csv(records, path) -> None:
    Path(path).write_text(render_csv(records), encoding="utf-8")
