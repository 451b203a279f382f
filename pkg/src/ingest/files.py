"""
File-level helpers that pick a reader or writer from the file name.
"""

import gzip
import logging
from pathlib import Path
from typing import Optional, Union

from src.errors import UsageError
from src.eventlog.conversion import to_event_log
from src.eventlog.model import EventLog, EventStream
from src.ingest.tabular import CsvMapping, export_csv, import_csv
from src.ingest.xes import export_xes, import_xes

logger = logging.getLogger(__name__)


def detect_format(path: Union[str, Path]) -> str:
    """Return 'xes' or 'csv' from the file suffix (.xes, .xes.gz, .csv)."""
    name = Path(path).name.lower()
    if name.endswith(".xes") or name.endswith(".xes.gz"):
        return "xes"
    if name.endswith(".csv"):
        return "csv"
    raise UsageError(f"Cannot tell the format of '{path}' (expected .xes, .xes.gz or .csv)")


def read_event_data(path: Union[str, Path], mapping: Optional[CsvMapping] = None) -> EventLog:
    """
    Load an event log from an XES or CSV file.

    CSV files become a stream first and are then grouped by case.

    Args:
        path: Input file
        mapping: Column mapping for CSV input

    Returns:
        EventLog
    """
    path = Path(path)
    raw = path.read_bytes()
    if path.name.lower().endswith(".gz"):
        raw = gzip.decompress(raw)

    logger.info(f"[INGEST] Reading {path} ({len(raw)} bytes)")
    if detect_format(path) == "xes":
        return import_xes(raw)
    return to_event_log(import_csv(raw, mapping))


def write_event_data(data: Union[EventLog, EventStream], path: Union[str, Path]) -> None:
    """Write a log (or stream) to .xes or .csv depending on the suffix."""
    path = Path(path)
    if detect_format(path) == "csv":
        payload = export_csv(data)
    else:
        payload = export_xes(to_event_log(data) if isinstance(data, EventStream) else data)
        if path.name.lower().endswith(".gz"):
            payload = gzip.compress(payload, mtime=0)
    path.write_bytes(payload)
    logger.info(f"[INGEST] Wrote {path} ({len(payload)} bytes)")
