"""
Time series and attribute distributions.

All histograms use `bins` equal-width intervals over [min, max] of the data.
A value falls into bin floor((x - min) / width); the maximum lands in the
last bin. When every value is identical the width is one unit (one second,
or 1.0 for attributes).
"""

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Callable, List, Tuple

import numpy as np

from src.analytics.filters import trace_span
from src.errors import EmptyLogError, InvalidParameterError, MissingTimestampError, NonNumericValueError
from src.eventlog.model import TIMESTAMP_KEY, EventLog, Timestamp

logger = logging.getLogger(__name__)


class TimeSeriesKind(str, Enum):
    EVENTS_PER_TIME = "events_per_time"
    CASE_DURATION = "case_duration"


@dataclass(frozen=True)
class Histogram:
    """
    Attributes:
        bins: (label of the interval start, count) per bin
        starts: Numeric interval starts
        width: Interval width
        ignored: Events left out (attribute distributions only)
    """

    bins: Tuple[Tuple[str, int], ...]
    starts: Tuple[float, ...]
    width: float
    ignored: int = 0

    @property
    def total(self) -> int:
        return sum(count for _, count in self.bins)


def format_number(value: float) -> str:
    value = float(value)
    return str(int(value)) if value.is_integer() else repr(value)


def format_instant(seconds: float) -> str:
    return datetime.fromtimestamp(seconds, tz=timezone.utc).isoformat()


def equal_width_histogram(
    values: List[float], bins: int, label: Callable[[float], str] = format_number, ignored: int = 0
) -> Histogram:
    """
    Bin values into `bins` equal-width intervals over their range.

    Raises:
        InvalidParameterError: If bins < 1
    """
    if bins < 1:
        raise InvalidParameterError(f"bins must be at least 1, got {bins}")
    if not values:
        return Histogram(bins=(), starts=(), width=0.0, ignored=ignored)

    data = np.asarray(values, dtype=float)
    low, high = float(data.min()), float(data.max())
    width = (high - low) / bins if high > low else 1.0
    index = np.minimum(np.floor((data - low) / width).astype(int), bins - 1)
    counts = np.bincount(index, minlength=bins)
    starts = tuple(low + i * width for i in range(bins))
    return Histogram(
        bins=tuple((label(s), int(c)) for s, c in zip(starts, counts)),
        starts=starts,
        width=width,
        ignored=ignored,
    )


def time_series(log: EventLog, kind: TimeSeriesKind = TimeSeriesKind.EVENTS_PER_TIME, bins: int = 10) -> Histogram:
    """
    Events per time interval, or the distribution of case durations.

    Args:
        log: Event log
        kind: events_per_time (labels are ISO-8601 instants) or case_duration (labels in seconds)
        bins: Number of intervals

    Raises:
        MissingTimestampError: If an event lacks time:timestamp
        EmptyLogError: If there is nothing to count
    """
    kind = TimeSeriesKind(kind)
    if kind is TimeSeriesKind.EVENTS_PER_TIME:
        values = []
        for trace in log:
            for event in trace:
                stamp = event.get(TIMESTAMP_KEY)
                if not isinstance(stamp, Timestamp):
                    raise MissingTimestampError(trace.case_id)
                values.append(stamp.epoch_seconds())
        label = format_instant
    else:
        values = []
        for trace in log:
            span = trace_span(trace)
            if span is not None:
                values.append((span[1].value - span[0].value).total_seconds())
        label = format_number

    if not values:
        raise EmptyLogError(f"No values for {kind.value}")
    histogram = equal_width_histogram(values, bins, label)
    logger.debug(f"[GRAPHS] {kind.value}: {len(values)} values in {bins} bins")
    return histogram


def attribute_distribution(log: EventLog, key: str, bins: int = 10) -> Histogram:
    """
    Histogram of a numeric event attribute.

    Events without the attribute are ignored and counted. Booleans are not
    numeric.

    Raises:
        NonNumericValueError: If an event holds a non-numeric value under `key`
    """
    values: List[float] = []
    ignored = 0
    for trace in log:
        for event in trace:
            if key not in event:
                ignored += 1
                continue
            value = event[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise NonNumericValueError(key, value)
            values.append(float(value))
    if not values:
        logger.warning(f"[GRAPHS] No event carries '{key}'")
    return equal_width_histogram(values, bins, format_number, ignored)
