"""
Model quality metrics.

- Fitness: average per-trace fitness from token replay or alignments.
- Precision: escaping edges. At every replayed prefix state, the activities
  the model allows (after silent closure) are compared with the activities
  that follow that prefix somewhere in the log.
- Generalization: 1 - mean over transitions of 1/sqrt(executions).
- Simplicity: 1 / (1 + max(0, mean arc degree - 2)).
"""

import logging
import math
from collections import Counter, defaultdict
from enum import Enum
from typing import Dict, FrozenSet, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.config import DEFAULT_SEARCH_BUDGET, DEFAULT_SILENT_DEPTH
from src.conformance.alignments import AlignmentCosts, align
from src.conformance.token_replay import TokenReplayer, token_replay
from src.errors import EmptyNetError
from src.eventlog.model import DEFAULT_CLASSIFIER, Classifier, EventLog
from src.petrinet.model import AcceptingPetriNet
from src.petrinet.semantics import Vector

logger = logging.getLogger(__name__)


class FitnessMethod(str, Enum):
    TOKEN = "token"
    ALIGNMENT = "alignment"


class FitnessResult(BaseModel):
    """
    Log-level fitness.

    Attributes:
        average_trace_fitness: Mean of the per-trace fitness values
        perc_fit_traces: Percentage of traces with fitness 1
        method: Conformance technique used
    """

    model_config = ConfigDict(frozen=True)

    average_trace_fitness: float = Field(ge=0.0, le=1.0)
    perc_fit_traces: float = Field(ge=0.0, le=100.0)
    method: FitnessMethod


def evaluate_fitness(
    log: EventLog,
    anet: AcceptingPetriNet,
    method: FitnessMethod = FitnessMethod.TOKEN,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
    costs: Optional[AlignmentCosts] = None,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
    workers: int = 1,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> FitnessResult:
    """
    Average trace fitness and share of perfectly fitting traces.

    A trace fits when replay needs no missing and leaves no remaining tokens
    (token) or when its optimal alignment costs 0 (alignment). An empty log
    scores 1.0 and 100 %.
    """
    method = FitnessMethod(method)
    if method is FitnessMethod.TOKEN:
        replayed = token_replay(log, anet, silent_depth, classifier)
        values = [r.trace_fitness for r in replayed]
        fits = [r.is_fit for r in replayed]
    else:
        aligned = align(log, anet, costs, True, search_budget, workers, classifier)
        values = [a.fitness for a in aligned]
        fits = [a.is_fit for a in aligned]

    if not values:
        return FitnessResult(average_trace_fitness=1.0, perc_fit_traces=100.0, method=method)
    average = min(1.0, max(0.0, sum(values) / len(values)))
    return FitnessResult(
        average_trace_fitness=average,
        perc_fit_traces=100.0 * sum(fits) / len(fits),
        method=method,
    )


def evaluate_precision(
    log: EventLog,
    anet: AcceptingPetriNet,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> float:
    """
    Escaping-edges precision.

    The initial state is counted once, with the start activities as observed
    behaviour. Every non-empty proper prefix is counted once per occurrence,
    with the activities that directly follow it anywhere in the log as
    observed behaviour. Markings come from token replay, so artificial tokens
    force the replay through deviations.

    Returns:
        Value in [0, 1]; 1.0 when the model allows nothing at any state

    Raises:
        DuplicateLabelError: If two transitions share a label
    """
    replayer = TokenReplayer(anet, silent_depth)
    compiled = replayer.compiled
    sequences = log.variants(classifier)

    following: Dict[Tuple[str, ...], Set[str]] = defaultdict(set)
    occurrences: Counter = Counter()
    for sequence in sequences:
        for i in range(1, len(sequence)):
            prefix = sequence[:i]
            following[prefix].add(sequence[i])
            occurrences[prefix] += 1

    markings: Dict[Tuple[str, ...], Vector] = {}
    for sequence in dict.fromkeys(sequences):
        if len(sequence) < 2:
            continue
        for i, marking in enumerate(replayer.prefix_markings(sequence[:-1]), start=1):
            markings.setdefault(sequence[:i], marking)

    allowed_cache: Dict[Vector, FrozenSet[str]] = {}

    def allowed(marking: Vector) -> FrozenSet[str]:
        if marking not in allowed_cache:
            allowed_cache[marking] = compiled.visible_enabled(
                compiled.silent_closure(marking, silent_depth)
            )
        return allowed_cache[marking]

    escaping = total = 0
    starts = {sequence[0] for sequence in sequences if sequence}
    if starts:
        initial = allowed(compiled.initial)
        total += len(initial)
        escaping += len(initial - starts)

    for prefix, count in occurrences.items():
        enabled_here = allowed(markings[prefix])
        total += count * len(enabled_here)
        escaping += count * len(enabled_here - following[prefix])

    precision = 1.0 if total == 0 else 1.0 - escaping / total
    logger.debug(f"[PRECISION] {escaping} escaping of {total} allowed over {len(occurrences)} prefixes")
    return precision


def evaluate_generalization(
    log: EventLog,
    anet: AcceptingPetriNet,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> float:
    """
    Generalization from token-replay execution counts.

    Visible transitions and silent transitions that fired contribute
    1/sqrt(executions), or 1 when never executed. A net without
    transitions scores 0.0.
    """
    transitions = anet.net.transitions
    if not transitions:
        return 0.0
    executions = Counter(
        transition for result in token_replay(log, anet, silent_depth, classifier)
        for transition in result.fired_sequence
    )
    penalty = 0.0
    for transition in transitions:
        fired = executions[transition.id]
        if fired > 0:
            penalty += 1.0 / math.sqrt(fired)
        elif not transition.is_silent:
            penalty += 1.0
    return min(1.0, max(0.0, 1.0 - penalty / len(transitions)))


def evaluate_simplicity(anet: AcceptingPetriNet) -> float:
    """
    Inverse arc-degree simplicity.

    Raises:
        EmptyNetError: If the net has no places and no transitions
    """
    degrees = degree_census(anet)
    if not degrees:
        raise EmptyNetError("Simplicity is undefined for a net without nodes")
    mean_degree = sum(degrees.values()) / len(degrees)
    return 1.0 / (1.0 + max(0.0, mean_degree - 2.0))


def degree_census(anet: AcceptingPetriNet) -> Dict[str, int]:
    """In-degree plus out-degree of every place and transition."""
    net = anet.net
    degrees: Dict[str, int] = {p: 0 for p in net.places}
    degrees.update({t.id: 0 for t in net.transitions})
    for source, target in net.arcs:
        degrees[source] += 1
        degrees[target] += 1
    return degrees
