"""
Log filters.

A filter is described by a FilterSpec, a pydantic model tagged by `kind`.
Trace-level filters keep or drop whole traces; the event-level attribute
filter removes events and then drops traces left empty. Every filter returns
a sub-multiset of the input traces and applying the same spec twice gives
the same log as applying it once.
"""

import logging
from collections import Counter
from datetime import datetime, timezone
from enum import Enum
from typing import Annotated, Any, FrozenSet, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator, model_validator

from src.errors import InvalidParameterError, MissingTimestampError
from src.eventlog.model import (
    DEFAULT_CLASSIFIER,
    TIMESTAMP_KEY,
    Classifier,
    EventLog,
    Timestamp,
    Trace,
    format_value,
    variant_key,
)

logger = logging.getLogger(__name__)


class TimeFrameMode(str, Enum):
    CONTAINED = "contained"
    INTERSECTING = "intersecting"


class FilterAction(str, Enum):
    KEEP = "keep"
    DROP = "drop"


class AttributeLevel(str, Enum):
    TRACE = "trace"
    EVENT = "event"


class _Filter(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class TimeFrameFilter(_Filter):
    """Traces inside (contained) or overlapping (intersecting) [start, end]."""

    kind: Literal["time_frame"] = "time_frame"
    start: datetime
    end: datetime
    mode: TimeFrameMode = TimeFrameMode.CONTAINED

    @field_validator("start", "end")
    @classmethod
    def _aware(cls, value: datetime) -> datetime:
        return value if value.tzinfo else value.replace(tzinfo=timezone.utc)

    @model_validator(mode="after")
    def _ordered(self) -> "TimeFrameFilter":
        if self.end < self.start:
            raise ValueError("end must not precede start")
        return self


class CasePerformanceFilter(_Filter):
    """Traces whose duration in seconds lies in [min_duration, max_duration]."""

    kind: Literal["case_performance"] = "case_performance"
    min_duration: float = Field(default=0.0, ge=0.0)
    max_duration: Optional[float] = Field(default=None, ge=0.0)


class EndpointsFilter(_Filter):
    """Traces starting with an activity of `start_in` and ending with one of `end_in`; None accepts any."""

    kind: Literal["endpoints"] = "endpoints"
    start_in: Optional[FrozenSet[str]] = None
    end_in: Optional[FrozenSet[str]] = None


class VariantsFilter(_Filter):
    """Traces of the listed variants, or of the `top_k` most frequent ones."""

    kind: Literal["variants"] = "variants"
    keep: Optional[FrozenSet[Tuple[str, ...]]] = None
    top_k: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _one_selector(self) -> "VariantsFilter":
        if (self.keep is None) == (self.top_k is None):
            raise ValueError("exactly one of 'keep' and 'top_k' must be given")
        return self


class AttributeFilter(_Filter):
    """Keep or drop traces (or events) whose attribute value is among `values`."""

    kind: Literal["attribute"] = "attribute"
    level: AttributeLevel = AttributeLevel.TRACE
    key: str = Field(min_length=1)
    values: FrozenSet[str]
    action: FilterAction = FilterAction.KEEP


class PathFilter(_Filter):
    """Keep or drop traces in which `target` directly follows `source`."""

    kind: Literal["path"] = "path"
    source: str
    target: str
    action: FilterAction = FilterAction.KEEP


FilterSpec = Annotated[
    Union[
        TimeFrameFilter,
        CasePerformanceFilter,
        EndpointsFilter,
        VariantsFilter,
        AttributeFilter,
        PathFilter,
    ],
    Field(discriminator="kind"),
]

_SPEC_ADAPTER: TypeAdapter = TypeAdapter(FilterSpec)


def parse_filter(data: Mapping[str, Any]) -> FilterSpec:
    """
    Build a FilterSpec from a plain mapping with a `kind` key.

    Raises:
        InvalidParameterError: If the mapping matches no branch
    """
    try:
        return _SPEC_ADAPTER.validate_python(dict(data))
    except ValidationError as e:
        raise InvalidParameterError(f"Invalid filter: {e}") from e


def split_variant_key(key: str) -> Tuple[str, ...]:
    """Inverse of variant_key: single commas separate labels, doubled commas are literal."""
    labels: List[str] = []
    current: List[str] = []
    i = 0
    while i < len(key):
        if key[i] == ",":
            if key[i + 1 : i + 2] == ",":
                current.append(",")
                i += 2
                continue
            labels.append("".join(current))
            current = []
        else:
            current.append(key[i])
        i += 1
    labels.append("".join(current))
    return tuple(labels)


def trace_span(trace: Trace) -> Optional[Tuple[Timestamp, Timestamp]]:
    """
    Earliest and latest timestamp of a trace; None for an empty trace.

    Raises:
        MissingTimestampError: If an event has no time:timestamp
    """
    if len(trace) == 0:
        return None
    stamps = []
    for event in trace:
        value = event.get(TIMESTAMP_KEY)
        if not isinstance(value, Timestamp):
            raise MissingTimestampError(trace.case_id)
        stamps.append(value)
    return min(stamps), max(stamps)


def _time_frame(log: EventLog, spec: TimeFrameFilter) -> List[Trace]:
    kept = []
    for trace in log:
        span = trace_span(trace)
        if span is None:
            continue
        first, last = span[0].value, span[1].value
        if spec.mode is TimeFrameMode.CONTAINED:
            inside = spec.start <= first and last <= spec.end
        else:
            inside = first <= spec.end and last >= spec.start
        if inside:
            kept.append(trace)
    return kept


def _case_performance(log: EventLog, spec: CasePerformanceFilter) -> List[Trace]:
    kept = []
    for trace in log:
        span = trace_span(trace)
        if span is None:
            continue
        duration = (span[1].value - span[0].value).total_seconds()
        if duration < spec.min_duration:
            continue
        if spec.max_duration is not None and duration > spec.max_duration:
            continue
        kept.append(trace)
    return kept


def _endpoints(log: EventLog, spec: EndpointsFilter, classifier: Classifier) -> List[Trace]:
    kept = []
    for trace, activities in zip(log, log.variants(classifier)):
        if not activities:
            continue
        if spec.start_in is not None and activities[0] not in spec.start_in:
            continue
        if spec.end_in is not None and activities[-1] not in spec.end_in:
            continue
        kept.append(trace)
    return kept


def _variants(log: EventLog, spec: VariantsFilter, classifier: Classifier) -> List[Trace]:
    sequences = log.variants(classifier)
    if spec.keep is not None:
        selected = set(spec.keep)
    else:
        counts = Counter(sequences)
        ranked = sorted(counts, key=lambda v: (-counts[v], variant_key(v)))
        selected = set(ranked[: spec.top_k])
    return [trace for trace, sequence in zip(log, sequences) if sequence in selected]


def _matches(attributes: Mapping, key: str, values: FrozenSet[str]) -> bool:
    return key in attributes and format_value(attributes[key]) in values


def _attribute(log: EventLog, spec: AttributeFilter) -> List[Trace]:
    keep = spec.action is FilterAction.KEEP
    if spec.level is AttributeLevel.TRACE:
        return [t for t in log if _matches(t.attributes, spec.key, spec.values) == keep]

    kept = []
    for trace in log:
        events = [e for e in trace if _matches(e, spec.key, spec.values) == keep]
        if events:
            kept.append(trace if len(events) == len(trace) else Trace(events, trace.attributes))
    return kept


def _path(log: EventLog, spec: PathFilter, classifier: Classifier) -> List[Trace]:
    keep = spec.action is FilterAction.KEEP
    pair = (spec.source, spec.target)
    kept = []
    for trace, activities in zip(log, log.variants(classifier)):
        present = pair in zip(activities, activities[1:])
        if present == keep:
            kept.append(trace)
    return kept


def filter_log(log: EventLog, spec: FilterSpec, classifier: Classifier = DEFAULT_CLASSIFIER) -> EventLog:
    """
    Apply one filter.

    Args:
        log: Event log
        spec: One FilterSpec branch
        classifier: Activity classifier for endpoint, variant and path filters

    Returns:
        New EventLog with the log metadata of the input

    Raises:
        MissingTimestampError: Time-frame and performance filters need timestamps on every event
    """
    if isinstance(spec, Mapping):
        spec = parse_filter(spec)

    if isinstance(spec, TimeFrameFilter):
        traces = _time_frame(log, spec)
    elif isinstance(spec, CasePerformanceFilter):
        traces = _case_performance(log, spec)
    elif isinstance(spec, EndpointsFilter):
        traces = _endpoints(log, spec, classifier)
    elif isinstance(spec, VariantsFilter):
        traces = _variants(log, spec, classifier)
    elif isinstance(spec, AttributeFilter):
        traces = _attribute(log, spec)
    elif isinstance(spec, PathFilter):
        traces = _path(log, spec, classifier)
    else:
        raise InvalidParameterError(f"Unsupported filter: {spec!r}")

    logger.info(f"[FILTER] {spec.kind}: kept {len(traces)}/{len(log)} traces")
    return log.with_traces(traces)

