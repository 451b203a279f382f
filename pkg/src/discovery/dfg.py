"""
Directly-follows graph extraction.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import FrozenSet, Iterable, Mapping, Sequence, Tuple

from src.eventlog.model import DEFAULT_CLASSIFIER, Classifier, EventLog

logger = logging.getLogger(__name__)

Edge = Tuple[str, str]


@dataclass(frozen=True)
class DirectlyFollowsGraph:
    """
    Directly-follows counts with start and end activity counts.

    Attributes:
        activities: Activity labels
        counts: (a, b) -> number of times b directly follows a
        start_counts: a -> number of traces starting with a
        end_counts: a -> number of traces ending with a
    """

    activities: FrozenSet[str] = frozenset()
    counts: Mapping[Edge, int] = field(default_factory=dict)
    start_counts: Mapping[str, int] = field(default_factory=dict)
    end_counts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "activities", frozenset(self.activities))
        for name in ("counts", "start_counts", "end_counts"):
            positive = {k: v for k, v in dict(getattr(self, name)).items() if v > 0}
            object.__setattr__(self, name, MappingProxyType(dict(sorted(positive.items()))))

    @classmethod
    def from_sequences(cls, sequences: Iterable[Sequence[str]]) -> "DirectlyFollowsGraph":
        """Count directly-follows pairs over activity sequences."""
        activities = set()
        counts: Counter = Counter()
        starts: Counter = Counter()
        ends: Counter = Counter()
        for sequence in sequences:
            if not sequence:
                continue
            activities.update(sequence)
            starts[sequence[0]] += 1
            ends[sequence[-1]] += 1
            counts.update(zip(sequence, sequence[1:]))
        return cls(frozenset(activities), counts, starts, ends)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(self.counts)

    @property
    def start_activities(self) -> FrozenSet[str]:
        return frozenset(self.start_counts)

    @property
    def end_activities(self) -> FrozenSet[str]:
        return frozenset(self.end_counts)

    def __add__(self, other: "DirectlyFollowsGraph") -> "DirectlyFollowsGraph":
        return DirectlyFollowsGraph(
            self.activities | other.activities,
            Counter(self.counts) + Counter(other.counts),
            Counter(self.start_counts) + Counter(other.start_counts),
            Counter(self.end_counts) + Counter(other.end_counts),
        )

    def __hash__(self) -> int:
        return hash(
            (
                self.activities,
                tuple(self.counts.items()),
                tuple(self.start_counts.items()),
                tuple(self.end_counts.items()),
            )
        )


def discover_dfg(log: EventLog, classifier: Classifier = DEFAULT_CLASSIFIER) -> DirectlyFollowsGraph:
    """
    Build the directly-follows graph of a log.

    Empty traces contribute nothing.

    Args:
        log: Event log
        classifier: Activity classifier

    Returns:
        DirectlyFollowsGraph
    """
    dfg = DirectlyFollowsGraph.from_sequences(log.variants(classifier))
    logger.info(
        f"[DFG] {len(dfg.activities)} activities, {len(dfg.counts)} edges from {len(log)} traces"
    )
    return dfg
