"""XES and CSV import/export."""

from src.ingest.files import detect_format, read_event_data, write_event_data
from src.ingest.tabular import CsvImporter, CsvMapping, export_csv, import_csv
from src.ingest.xes import XesImporter, export_xes, import_xes

__all__ = [
    "CsvImporter",
    "CsvMapping",
    "XesImporter",
    "detect_format",
    "export_csv",
    "export_xes",
    "import_csv",
    "import_xes",
    "read_event_data",
    "write_event_data",
]
