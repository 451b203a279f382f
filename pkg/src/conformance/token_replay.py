"""
Token-based replay.

Each trace is replayed on the net from the initial marking. A transition that
is not enabled is first approached through a shortest sequence of silent
transitions; failing that, the missing tokens are inserted artificially.
At the end the final marking is consumed and leftover tokens are counted.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.config import DEFAULT_SILENT_DEPTH
from src.errors import DuplicateLabelError
from src.eventlog.model import DEFAULT_CLASSIFIER, Classifier, EventLog
from src.petrinet.model import AcceptingPetriNet
from src.petrinet.semantics import CompiledNet, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReplayResult:
    """
    Token counts of one replayed trace.

    Attributes:
        produced: Tokens produced, initial marking included
        consumed: Tokens consumed, final marking included
        missing: Tokens that had to be inserted
        remaining: Tokens left after consuming the final marking
        trace_fitness: 1/2 (1 - missing/consumed) + 1/2 (1 - remaining/produced)
        reached_final: Marking at the end equalled the final marking
        fired_sequence: Fired transition ids, silent ones included
    """

    produced: int
    consumed: int
    missing: int
    remaining: int
    trace_fitness: float
    reached_final: bool
    fired_sequence: Tuple[str, ...]

    @property
    def is_fit(self) -> bool:
        return self.missing == 0 and self.remaining == 0


def replay_fitness(produced: int, consumed: int, missing: int, remaining: int) -> float:
    missing_part = 1.0 - missing / consumed if consumed else 1.0
    remaining_part = 1.0 - remaining / produced if produced else 1.0
    return 0.5 * missing_part + 0.5 * remaining_part


class TokenReplayer:
    """
    Replays activity sequences on one accepting Petri net.

    Attributes:
        anet: The net
        silent_depth: Maximum silent firings tried before inserting tokens
    """

    def __init__(self, anet: AcceptingPetriNet, silent_depth: int = DEFAULT_SILENT_DEPTH):
        """
        Compile the net for replay.

        Raises:
            DuplicateLabelError: If two transitions share a label
        """
        self.anet = anet
        self.silent_depth = silent_depth
        self.compiled = CompiledNet(anet)
        for label, transitions in self.compiled.by_label.items():
            if len(transitions) > 1:
                ids = tuple(self.compiled.transition_ids[t] for t in transitions)
                raise DuplicateLabelError(label, ids)

    def _steps(self, activities: Sequence[str], counters: Dict[str, int], fired: List[int]) -> Iterator[Vector]:
        """Replay events one by one, yielding the marking after each."""
        compiled = self.compiled
        marking = compiled.initial
        counters["produced"] += sum(marking)

        for activity in activities:
            candidates = compiled.by_label.get(activity)
            if candidates is None:
                counters["missing"] += 1
                counters["consumed"] += 1
                counters["produced"] += 1
                counters["remaining_unknown"] += 1
                yield marking
                continue

            transition = candidates[0]
            if not compiled.is_enabled(marking, transition):
                path = compiled.silent_path(
                    marking, lambda v: compiled.is_enabled(v, transition), self.silent_depth
                )
                for silent in path or []:
                    marking = self._fire(marking, silent, counters, fired)
                if not compiled.is_enabled(marking, transition):
                    tokens = list(marking)
                    for place in compiled.pre[transition]:
                        if tokens[place] < 1:
                            counters["missing"] += 1
                            tokens[place] += 1
                    marking = tuple(tokens)
            marking = self._fire(marking, transition, counters, fired)
            yield marking

    def _fire(self, marking: Vector, transition: int, counters: Dict[str, int], fired: List[int]) -> Vector:
        counters["consumed"] += len(self.compiled.pre[transition])
        counters["produced"] += len(self.compiled.post[transition])
        fired.append(transition)
        return self.compiled.fire(marking, transition)

    def replay(self, activities: Sequence[str]) -> ReplayResult:
        """Replay one activity sequence and account for all tokens."""
        compiled = self.compiled
        counters: Dict[str, int] = Counter()
        fired: List[int] = []
        marking = compiled.initial
        for marking in self._steps(activities, counters, fired):
            pass

        final = compiled.final

        def covers(vector: Vector) -> bool:
            return all(have >= need for have, need in zip(vector, final))

        if not covers(marking):
            path = compiled.silent_path(marking, covers, self.silent_depth)
            for silent in path or []:
                marking = self._fire(marking, silent, counters, fired)

        reached_final = marking == final
        tokens = list(marking)
        for place, required in enumerate(final):
            if required == 0:
                continue
            counters["consumed"] += required
            if tokens[place] < required:
                counters["missing"] += required - tokens[place]
                tokens[place] = 0
            else:
                tokens[place] -= required
        remaining = sum(tokens) + counters["remaining_unknown"]

        produced, consumed, missing = counters["produced"], counters["consumed"], counters["missing"]
        return ReplayResult(
            produced=produced,
            consumed=consumed,
            missing=missing,
            remaining=remaining,
            trace_fitness=replay_fitness(produced, consumed, missing, remaining),
            reached_final=reached_final and counters["remaining_unknown"] == 0,
            fired_sequence=tuple(compiled.transition_ids[t] for t in fired),
        )

    def prefix_markings(self, activities: Sequence[str]) -> List[Vector]:
        """Markings after each event; entry i is the state after activities[: i + 1]."""
        return list(self._steps(activities, Counter(), []))


def token_replay(
    log: EventLog,
    anet: AcceptingPetriNet,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> List[ReplayResult]:
    """
    Replay every trace of a log; identical variants are replayed once.

    Args:
        log: Event log
        anet: Accepting Petri net with unique labels
        silent_depth: BFS depth for silent transitions
        classifier: Activity classifier

    Returns:
        One ReplayResult per trace, in log order

    Raises:
        DuplicateLabelError: If two transitions share a label
    """
    replayer = TokenReplayer(anet, silent_depth)
    cache: Dict[Tuple[str, ...], ReplayResult] = {}
    results = []
    for activities in log.variants(classifier):
        if activities not in cache:
            cache[activities] = replayer.replay(activities)
        results.append(cache[activities])

    fit = sum(1 for r in results if r.is_fit)
    logger.info(f"[REPLAY] {fit}/{len(results)} traces fit ({len(cache)} variants)")
    return results
