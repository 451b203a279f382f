"""
Social network analysis over the resources of a log.

- handover: how often work passes from one resource to the next within a case.
- working_together: share of cases in which two resources both appear.
- subcontracting: how often r1 hands work to r2 and gets it straight back.
- similar_activities: Pearson correlation of per-resource activity profiles.

Events without a resource are skipped; consecutive relations are taken over
the remaining events.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

from src.errors import NoResourcesError
from src.eventlog.model import DEFAULT_CLASSIFIER, RESOURCE_KEY, Classifier, EventLog, classify, format_value

logger = logging.getLogger(__name__)


class SNAMetric(str, Enum):
    HANDOVER = "handover"
    WORKING_TOGETHER = "working_together"
    SUBCONTRACTING = "subcontracting"
    SIMILAR_ACTIVITIES = "similar_activities"


DIRECTED = {SNAMetric.HANDOVER: True, SNAMetric.SUBCONTRACTING: True}


@dataclass(frozen=True, eq=False)
class SNAResult:
    """
    Resource-by-resource matrix of one metric.

    Attributes:
        metric: Metric computed
        resources: Resource names, sorted; row/column order of the matrix
        matrix: Read-only float matrix, rows are sources for directed metrics
        directed: Whether (r1, r2) and (r2, r1) differ in meaning
        skipped_events: Events without a resource
    """

    metric: SNAMetric
    resources: Tuple[str, ...]
    matrix: np.ndarray
    directed: bool
    skipped_events: int

    def value(self, source: str, target: str) -> float:
        index = {r: i for i, r in enumerate(self.resources)}
        return float(self.matrix[index[source], index[target]])

    def edges(self, threshold: float = 0.0) -> List[Tuple[str, str, float]]:
        """Non-zero entries at or above `threshold`; undirected metrics list each pair once."""
        result = []
        for i, source in enumerate(self.resources):
            for j, target in enumerate(self.resources):
                if not self.directed and j <= i:
                    continue
                value = float(self.matrix[i, j])
                if value > 0 and value >= threshold:
                    result.append((source, target, value))
        return result


def _resource_sequences(log: EventLog, resource_key: str, classifier: Classifier):
    sequences: List[List[Tuple[str, str]]] = []
    skipped = 0
    for trace in log:
        sequence = []
        for event in trace:
            if resource_key not in event:
                skipped += 1
                continue
            sequence.append((format_value(event[resource_key]), classify(event, classifier)))
        sequences.append(sequence)
    return sequences, skipped


def _handover(sequences, index: Dict[str, int], size: int) -> np.ndarray:
    counts = np.zeros((size, size))
    for sequence in sequences:
        for (r1, _), (r2, _) in zip(sequence, sequence[1:]):
            counts[index[r1], index[r2]] += 1
    total = counts.sum()
    return counts / total if total else counts


def _working_together(sequences, index: Dict[str, int], size: int, cases: int) -> np.ndarray:
    counts = np.zeros((size, size))
    for sequence in sequences:
        present = sorted({index[r] for r, _ in sequence})
        for a in present:
            for b in present:
                if a != b:
                    counts[a, b] += 1
    return counts / cases if cases else counts


def _subcontracting(sequences, index: Dict[str, int], size: int) -> np.ndarray:
    counts = np.zeros((size, size))
    windows = 0
    for sequence in sequences:
        resources = [r for r, _ in sequence]
        for first, middle, last in zip(resources, resources[1:], resources[2:]):
            windows += 1
            if first == last and middle != first:
                counts[index[first], index[middle]] += 1
    return counts / windows if windows else counts


def _similar_activities(sequences, index: Dict[str, int], size: int) -> np.ndarray:
    activities = sorted({a for sequence in sequences for _, a in sequence})
    column = {a: j for j, a in enumerate(activities)}
    profile = np.zeros((size, len(activities)))
    for sequence in sequences:
        for resource, activity in sequence:
            profile[index[resource], column[activity]] += 1

    centred = profile - profile.mean(axis=1, keepdims=True)
    squares = (centred * centred).sum(axis=1)
    matrix = np.zeros((size, size))
    for i in range(size):
        for j in range(i + 1, size):
            denominator = np.sqrt(squares[i] * squares[j])
            if denominator > 0:
                value = float(centred[i] @ centred[j]) / denominator
                matrix[i, j] = matrix[j, i] = min(1.0, max(-1.0, value))
    return matrix


def sna(
    log: EventLog,
    metric: SNAMetric = SNAMetric.HANDOVER,
    resource_key: str = RESOURCE_KEY,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> SNAResult:
    """
    Compute one social network metric.

    Args:
        log: Event log
        metric: handover, working_together, subcontracting or similar_activities
        resource_key: Event attribute holding the resource
        classifier: Activity classifier (similar_activities only)

    Returns:
        SNAResult with resources in sorted order

    Raises:
        NoResourcesError: If no event carries `resource_key`
    """
    metric = SNAMetric(metric)
    sequences, skipped = _resource_sequences(log, resource_key, classifier)
    resources = tuple(sorted({r for sequence in sequences for r, _ in sequence}))
    if not resources:
        raise NoResourcesError(resource_key)
    if skipped:
        logger.warning(f"[SNA] {skipped} events without '{resource_key}' skipped")

    index = {r: i for i, r in enumerate(resources)}
    size = len(resources)
    if metric is SNAMetric.HANDOVER:
        matrix = _handover(sequences, index, size)
    elif metric is SNAMetric.WORKING_TOGETHER:
        matrix = _working_together(sequences, index, size, len(log))
    elif metric is SNAMetric.SUBCONTRACTING:
        matrix = _subcontracting(sequences, index, size)
    else:
        matrix = _similar_activities(sequences, index, size)

    matrix.setflags(write=False)
    logger.info(f"[SNA] {metric.value}: {size} resources")
    return SNAResult(
        metric=metric,
        resources=resources,
        matrix=matrix,
        directed=DIRECTED.get(metric, False),
        skipped_events=skipped,
    )
