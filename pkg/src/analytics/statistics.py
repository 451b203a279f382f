"""Case and variant statistics."""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.eventlog.model import (
    DEFAULT_CLASSIFIER,
    TIMESTAMP_KEY,
    Classifier,
    EventLog,
    Timestamp,
    Trace,
    trace_activities,
    variant_key,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CaseInfo:
    """
    Per-case figures.

    Attributes:
        case_id: Case identifier
        start: Earliest event timestamp, if any event has one
        end: Latest event timestamp, if any event has one
        duration: end - start in seconds, None without timestamps
        event_count: Number of events
        variant: Comma-joined activity labels
    """

    case_id: str
    start: Optional[Timestamp]
    end: Optional[Timestamp]
    duration: Optional[float]
    event_count: int
    variant: str


@dataclass(frozen=True)
class DurationSummary:
    count: int
    mean: Optional[float]
    median: Optional[float]
    minimum: Optional[float]
    maximum: Optional[float]


@dataclass(frozen=True)
class CaseStats:
    """
    Statistics of a log.

    Attributes:
        cases: One CaseInfo per trace, in log order
        variants: (variant, count) sorted by count descending, then variant
        durations: Aggregates over cases that have a duration
    """

    cases: Tuple[CaseInfo, ...]
    variants: Tuple[Tuple[str, int], ...]
    durations: DurationSummary

    @property
    def trace_count(self) -> int:
        return len(self.cases)


def _case_info(trace: Trace, classifier: Classifier) -> CaseInfo:
    stamps = [e[TIMESTAMP_KEY] for e in trace if isinstance(e.get(TIMESTAMP_KEY), Timestamp)]
    start = min(stamps) if stamps else None
    end = max(stamps) if stamps else None
    duration = (end.value - start.value).total_seconds() if stamps else None
    return CaseInfo(
        case_id=trace.case_id,
        start=start,
        end=end,
        duration=duration,
        event_count=len(trace),
        variant=variant_key(trace_activities(trace, classifier)),
    )


def summarize_durations(durations: List[float]) -> DurationSummary:
    if not durations:
        return DurationSummary(0, None, None, None, None)
    values = np.asarray(durations, dtype=float)
    return DurationSummary(
        count=int(values.size),
        mean=float(np.mean(values)),
        median=float(np.median(values)),
        minimum=float(np.min(values)),
        maximum=float(np.max(values)),
    )


def case_statistics(log: EventLog, classifier: Classifier = DEFAULT_CLASSIFIER) -> CaseStats:
    """
    Per-case information, the variant table and duration aggregates.

    Traces without timestamps have no duration and are left out of the
    aggregates.
    """
    cases = tuple(_case_info(trace, classifier) for trace in log)
    counts = Counter(case.variant for case in cases)
    table = tuple(sorted(counts.items(), key=lambda item: (-item[1], item[0])))
    durations = summarize_durations([c.duration for c in cases if c.duration is not None])
    logger.info(f"[STATS] {len(cases)} cases, {len(table)} variants")
    return CaseStats(cases=cases, variants=table, durations=durations)
