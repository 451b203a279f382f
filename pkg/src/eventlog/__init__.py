"""Event data object model and conversions."""

from src.eventlog.conversion import (
    ConversionTarget,
    convert,
    sort_by_timestamp,
    to_event_log,
    to_event_stream,
)
from src.eventlog.model import (
    CASE_PREFIX,
    CONCEPT_NAME,
    DEFAULT_CLASSIFIER,
    LIFECYCLE_KEY,
    RESOURCE_KEY,
    STREAM_CASE_KEY,
    TIMESTAMP_KEY,
    AttributeValue,
    Classifier,
    Event,
    EventLog,
    EventStream,
    Extension,
    Timestamp,
    Trace,
    classify,
    format_value,
    trace_activities,
    variant_key,
)

__all__ = [
    "CASE_PREFIX",
    "CONCEPT_NAME",
    "DEFAULT_CLASSIFIER",
    "LIFECYCLE_KEY",
    "RESOURCE_KEY",
    "STREAM_CASE_KEY",
    "TIMESTAMP_KEY",
    "AttributeValue",
    "Classifier",
    "ConversionTarget",
    "Event",
    "EventLog",
    "EventStream",
    "Extension",
    "Timestamp",
    "Trace",
    "classify",
    "convert",
    "format_value",
    "sort_by_timestamp",
    "to_event_log",
    "to_event_stream",
    "trace_activities",
    "variant_key",
]
