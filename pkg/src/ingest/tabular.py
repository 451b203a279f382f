"""
CSV import into event streams, and CSV export of streams and logs.
"""

import csv
import io
import logging
from datetime import datetime, timezone
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, model_validator

from src.errors import BadTimestampError, CsvEncodingError, MissingColumnError
from src.eventlog.conversion import to_event_stream
from src.eventlog.model import (
    CONCEPT_NAME,
    STREAM_CASE_KEY,
    TIMESTAMP_KEY,
    AttributeValue,
    Event,
    EventLog,
    EventStream,
    Timestamp,
    format_value,
)

logger = logging.getLogger(__name__)


class CsvMapping(BaseModel):
    """
    Maps CSV columns onto the standard event attributes.

    Attributes:
        case_column: Column holding the case identifier
        activity_column: Column holding the activity name
        timestamp_column: Optional column holding the event time
        timestamp_format: strptime pattern; ISO-8601 when absent
        delimiter: Field delimiter
    """

    case_column: str = Field(default=STREAM_CASE_KEY, min_length=1)
    activity_column: str = Field(default=CONCEPT_NAME, min_length=1)
    timestamp_column: Optional[str] = Field(default=TIMESTAMP_KEY)
    timestamp_format: Optional[str] = Field(default=None)
    delimiter: str = Field(default=",", min_length=1, max_length=1)

    @model_validator(mode="after")
    def validate_columns(self) -> "CsvMapping":
        if self.case_column == self.activity_column:
            raise ValueError("case_column and activity_column must differ")
        return self


class CsvImporter:
    """
    Reads RFC 4180 CSV into an event stream.

    Attributes:
        mapping: Column mapping
        skipped_rows: Data rows skipped during the last import (blank or empty case id)
    """

    def __init__(self, mapping: Optional[CsvMapping] = None):
        self.mapping = mapping or CsvMapping()
        self.skipped_rows: List[int] = []

    def _parse_timestamp(self, raw: str, row: int) -> Timestamp:
        try:
            if self.mapping.timestamp_format is None:
                return Timestamp.parse(raw)
            parsed = datetime.strptime(raw.strip(), self.mapping.timestamp_format)
        except ValueError as e:
            raise BadTimestampError(row, raw) from e
        if parsed.tzinfo is None:
            parsed = parsed.replace(tzinfo=timezone.utc)
        return Timestamp(value=parsed, text=parsed.isoformat())

    def parse(self, source: bytes) -> EventStream:
        """
        Parse CSV bytes.

        Args:
            source: Raw file content (UTF-8, optional BOM)

        Returns:
            EventStream with one event per kept data row

        Raises:
            MissingColumnError: If a mapped column is absent from the header
            BadTimestampError: If a timestamp cell cannot be parsed
            CsvEncodingError: If the bytes are not UTF-8
        """
        self.skipped_rows = []
        mapping = self.mapping
        try:
            text = source.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            raise CsvEncodingError(e.start, e.reason) from e
        reader = csv.reader(io.StringIO(text, newline=""), delimiter=mapping.delimiter)
        header = next(reader, None)
        if header is None:
            raise MissingColumnError(mapping.case_column)

        columns = [mapping.case_column, mapping.activity_column]
        if mapping.timestamp_column is not None:
            columns.append(mapping.timestamp_column)
        for column in columns:
            if column not in header:
                raise MissingColumnError(column)

        index = {name: position for position, name in enumerate(header)}
        standard = {
            mapping.case_column: STREAM_CASE_KEY,
            mapping.activity_column: CONCEPT_NAME,
        }
        if mapping.timestamp_column is not None:
            standard[mapping.timestamp_column] = TIMESTAMP_KEY

        events: List[Event] = []
        # Row numbers count the header as row 1
        for row_number, row in enumerate(reader, start=2):
            cells = row + [""] * (len(header) - len(row))
            case_id = cells[index[mapping.case_column]]
            if not case_id:
                self.skipped_rows.append(row_number)
                continue

            attributes: Dict[str, AttributeValue] = {
                CONCEPT_NAME: cells[index[mapping.activity_column]],
            }
            if mapping.timestamp_column is not None:
                attributes[TIMESTAMP_KEY] = self._parse_timestamp(
                    cells[index[mapping.timestamp_column]], row_number
                )
            for name, position in index.items():
                if name in standard or position >= len(cells) or cells[position] == "":
                    continue
                attributes[name] = cells[position]
            attributes[STREAM_CASE_KEY] = case_id
            events.append(Event(attributes))

        if self.skipped_rows:
            logger.warning(f"[CSV] Skipped {len(self.skipped_rows)} blank rows or rows without a case id")
        logger.info(f"[CSV] Imported {len(events)} events")
        return EventStream(events)


def import_csv(source: bytes, mapping: Optional[CsvMapping] = None) -> EventStream:
    """Parse CSV bytes into an event stream."""
    return CsvImporter(mapping).parse(source)


def export_csv(data: Union[EventStream, EventLog], delimiter: str = ",") -> bytes:
    """
    Write a stream (or a log, flattened first) as CSV.

    Standard columns come first; other columns follow in order of first appearance.
    """
    stream = to_event_stream(data) if isinstance(data, EventLog) else data
    columns: Dict[str, None] = {}
    for key in (stream.case_key, CONCEPT_NAME, TIMESTAMP_KEY):
        if any(key in event for event in stream):
            columns[key] = None
    for event in stream:
        for key in event:
            columns.setdefault(key, None)

    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, delimiter=delimiter)
    writer.writerow(list(columns))
    for event in stream:
        writer.writerow([format_value(event[key]) if key in event else "" for key in columns])
    return buffer.getvalue().encode("utf-8")
