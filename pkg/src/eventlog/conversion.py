"""
Conversions between event logs and event streams.
"""

import logging
from enum import Enum
from typing import Dict, List, Union

from src.errors import MissingCaseIdError
from src.eventlog.model import (
    CASE_PREFIX,
    CONCEPT_NAME,
    STREAM_CASE_KEY,
    TIMESTAMP_KEY,
    Event,
    EventLog,
    EventStream,
    Timestamp,
    Trace,
    format_value,
)

logger = logging.getLogger(__name__)


class ConversionTarget(str, Enum):
    """Representation to convert event data into."""

    LOG = "log"
    STREAM = "stream"


def convert(
    data: Union[EventLog, EventStream], target: Union[ConversionTarget, str]
) -> Union[EventLog, EventStream]:
    """
    Convert event data to the requested representation.

    Converting to the representation the data already has returns it unchanged.

    Args:
        data: Event log or event stream
        target: "log" or "stream"

    Returns:
        EventLog or EventStream

    Raises:
        MissingCaseIdError: If a stream event lacks the case identifier
    """
    target = ConversionTarget(target)
    if target is ConversionTarget.LOG:
        return data if isinstance(data, EventLog) else to_event_log(data)
    return data if isinstance(data, EventStream) else to_event_stream(data)


def to_event_stream(log: EventLog) -> EventStream:
    """Flatten a log; trace attribute k is copied onto each event as case:k."""
    events: List[Event] = []
    for trace in log:
        case_attributes = {f"{CASE_PREFIX}{key}": value for key, value in trace.attributes.items()}
        for event in trace:
            events.append(Event({**event.attributes, **case_attributes}))

    logger.debug(f"[CONVERT] Flattened {len(log)} traces into {len(events)} events")
    return EventStream(
        events,
        case_key=STREAM_CASE_KEY,
        attributes=log.attributes,
        classifiers=log.classifiers,
        extensions=log.extensions,
    )


def to_event_log(stream: EventStream) -> EventLog:
    """
    Group stream events by case id.

    Traces appear in order of first appearance; events keep stream order.
    Attributes prefixed with case: move to the trace with the prefix stripped.
    """
    case_key = stream.case_key
    groups: Dict[str, List[Event]] = {}
    trace_attributes: Dict[str, Dict] = {}

    for index, event in enumerate(stream):
        raw_case = event.get(case_key)
        if raw_case is None or format_value(raw_case) == "":
            raise MissingCaseIdError(index, case_key)
        case_id = format_value(raw_case)

        attributes = trace_attributes.setdefault(case_id, {})
        if not case_key.startswith(CASE_PREFIX):
            attributes.setdefault(CONCEPT_NAME, case_id)

        event_attributes = {}
        for key, value in event.items():
            if key.startswith(CASE_PREFIX):
                attributes.setdefault(key[len(CASE_PREFIX):], value)
            else:
                event_attributes[key] = value
        groups.setdefault(case_id, []).append(Event(event_attributes))

    traces = [Trace(events, trace_attributes[case_id]) for case_id, events in groups.items()]
    logger.debug(f"[CONVERT] Grouped {len(stream)} events into {len(traces)} traces")
    return EventLog(
        traces,
        attributes=stream.attributes,
        classifiers=stream.classifiers,
        extensions=stream.extensions,
    )


def sort_by_timestamp(log: EventLog) -> EventLog:
    """
    Stable per-trace sort of events by time:timestamp.

    Traces where some event lacks a timestamp are left as they are.
    """
    traces = []
    for trace in log:
        if all(isinstance(event.get(TIMESTAMP_KEY), Timestamp) for event in trace):
            ordered = sorted(trace, key=lambda e: e[TIMESTAMP_KEY].value)
            traces.append(Trace(ordered, trace.attributes))
        else:
            traces.append(trace)
    return log.with_traces(traces)
