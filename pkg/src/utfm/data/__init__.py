"""Flight-leg dataset: schema, CSV I/O, segmentation, cross-validation."""

from .crossval import CrossValidationReport, FoldResult, cross_validate
from .io import CSV_COLUMNS, load_csv, parse_csv, render_csv, write_csv
from .records import DELAY_CODES, RECORD_FIELDS, WEATHER_CODES, FlightLegRecord
from .split import DatasetSplit, segment

__all__ = [
    "CrossValidationReport",
    "FoldResult",
    "cross_validate",
    "CSV_COLUMNS",
    "load_csv",
    "parse_csv",
    "render_csv",
    "write_csv",
    "DELAY_CODES",
    "RECORD_FIELDS",
    "WEATHER_CODES",
    "FlightLegRecord",
    "DatasetSplit",
    "segment",
]
