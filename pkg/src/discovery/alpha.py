"""
Alpha and Alpha+ miners.

Ordering relations are derived from directly-follows counts. Places come
from the maximal pairs (A, B) of activity sets where every a in A causally
precedes every b in B and each side is pairwise unrelated. Alpha+ removes
length-one-loop activities first and reattaches each one as a self-loop on
the places that sit between its predecessors and successors.
"""

import logging
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from src.errors import EmptyTraceError, NoStartOrEndError
from src.eventlog.model import DEFAULT_CLASSIFIER, Classifier, EventLog
from src.discovery.dfg import DirectlyFollowsGraph
from src.petrinet.model import AcceptingPetriNet, Marking, PetriNet, Transition

logger = logging.getLogger(__name__)

PlacePair = Tuple[FrozenSet[str], FrozenSet[str]]

SOURCE = "source"
SINK = "sink"
_START = "|>"
_END = "[]"


class Relation(str, Enum):
    CAUSAL = "->"
    REVERSE_CAUSAL = "<-"
    PARALLEL = "||"
    UNRELATED = "#"


class AlphaVariant(str, Enum):
    CLASSIC = "classic"
    PLUS = "plus"


class Footprint:
    """
    Ordering relations between every ordered pair of activities.

    Attributes:
        activities: Activities, sorted
    """

    def __init__(self, activities: Iterable[str], follows: Set[Tuple[str, str]]):
        self.activities: Tuple[str, ...] = tuple(sorted(set(activities)))
        self._follows = frozenset(follows)

    @classmethod
    def from_dfg(cls, dfg: DirectlyFollowsGraph) -> "Footprint":
        return cls(dfg.activities, set(dfg.counts))

    def relation(self, a: str, b: str) -> Relation:
        forward = (a, b) in self._follows
        backward = (b, a) in self._follows
        if forward and backward:
            return Relation.PARALLEL
        if forward:
            return Relation.CAUSAL
        if backward:
            return Relation.REVERSE_CAUSAL
        return Relation.UNRELATED

    def causal(self, a: str, b: str) -> bool:
        return self.relation(a, b) is Relation.CAUSAL

    def unrelated(self, a: str, b: str) -> bool:
        return self.relation(a, b) is Relation.UNRELATED


def maximal_pairs(footprint: Footprint) -> Set[PlacePair]:
    """
    Maximal (A, B) pairs of the Alpha algorithm.

    Pairs grow one activity at a time from causal seed pairs. The set of
    valid pairs is closed under removing elements, so a pair is maximal
    exactly when no single activity can be added to either side.
    """
    activities = footprint.activities
    free = {a for a in activities if footprint.unrelated(a, a)}
    unrelated_cache: Dict[Tuple[str, str], bool] = {}

    def unrelated(a: str, b: str) -> bool:
        key = (a, b) if a <= b else (b, a)
        if key not in unrelated_cache:
            unrelated_cache[key] = footprint.unrelated(a, b)
        return unrelated_cache[key]

    def extensions(pair: PlacePair) -> List[PlacePair]:
        left, right = pair
        grown = []
        for x in free:
            if x not in left and all(unrelated(x, a) for a in left) and all(
                footprint.causal(x, b) for b in right
            ):
                grown.append((left | {x}, right))
            if x not in right and all(unrelated(x, b) for b in right) and all(
                footprint.causal(a, x) for a in left
            ):
                grown.append((left, right | {x}))
        return grown

    seen: Set[PlacePair] = set()
    stack: List[PlacePair] = [
        (frozenset([a]), frozenset([b]))
        for a in sorted(free)
        for b in sorted(free)
        if footprint.causal(a, b)
    ]
    maximal: Set[PlacePair] = set()
    while stack:
        pair = stack.pop()
        if pair in seen:
            continue
        seen.add(pair)
        grown = extensions(pair)
        if not grown:
            maximal.add(pair)
        stack.extend(g for g in grown if g not in seen)
    return maximal


def _place_id(pair: PlacePair) -> str:
    left, right = pair
    return "p({" + ",".join(sorted(left)) + "},{" + ",".join(sorted(right)) + "})"


def _unique(candidate: str, taken: Set[str]) -> str:
    while candidate in taken:
        candidate += "'"
    return candidate


def _alpha_net(dfg: DirectlyFollowsGraph, reserved: FrozenSet[str] = frozenset()) -> Tuple[
    List[str], List[Transition], List[Tuple[str, str]], Dict[str, PlacePair]
]:
    """
    Classic construction. Returns places, transitions, arcs and place id -> pair.

    Place ids avoid the activities of `dfg` and the `reserved` names.
    """
    if not dfg.start_counts or not dfg.end_counts:
        raise NoStartOrEndError("Log has no start or end activities")

    taken = set(dfg.activities) | reserved
    transitions = [Transition(a, a) for a in sorted(dfg.activities)]
    source = _unique(SOURCE, taken)
    taken.add(source)
    sink = _unique(SINK, taken)
    taken.add(sink)

    places = [source, sink]
    arcs: List[Tuple[str, str]] = []
    pairs: Dict[str, PlacePair] = {
        source: (frozenset([_START]), dfg.start_activities),
        sink: (dfg.end_activities, frozenset([_END])),
    }
    arcs.extend((source, a) for a in sorted(dfg.start_activities))
    arcs.extend((a, sink) for a in sorted(dfg.end_activities))

    for pair in sorted(maximal_pairs(Footprint.from_dfg(dfg)), key=_place_id):
        place = _unique(_place_id(pair), taken)
        taken.add(place)
        places.append(place)
        pairs[place] = pair
        left, right = pair
        arcs.extend((a, place) for a in sorted(left))
        arcs.extend((place, b) for b in sorted(right))
    return places, transitions, arcs, pairs


def discover_alpha(
    log: EventLog,
    variant: AlphaVariant = AlphaVariant.CLASSIC,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> AcceptingPetriNet:
    """
    Discover an accepting Petri net with the Alpha or Alpha+ miner.

    Args:
        log: Event log whose traces are all non-empty
        variant: CLASSIC or PLUS
        classifier: Activity classifier

    Returns:
        AcceptingPetriNet with im = [source:1] and fm = [sink:1]

    Raises:
        EmptyTraceError: If a trace has no events
        NoStartOrEndError: If the log yields no start or end activities
    """
    variant = AlphaVariant(variant)
    for trace in log:
        if len(trace) == 0:
            raise EmptyTraceError(trace.case_id)
    sequences = log.variants(classifier)
    dfg = DirectlyFollowsGraph.from_sequences(sequences)

    if variant is AlphaVariant.CLASSIC:
        places, transitions, arcs, _ = _alpha_net(dfg)
    else:
        places, transitions, arcs = _alpha_plus_net(sequences, dfg)

    net = PetriNet(places, transitions, arcs)
    logger.info(f"[ALPHA] {variant.value}: {net}")
    return AcceptingPetriNet(net, Marking({places[0]: 1}), Marking({places[1]: 1}))


def _alpha_plus_net(
    sequences: List[Tuple[str, ...]], dfg: DirectlyFollowsGraph
) -> Tuple[List[str], List[Transition], List[Tuple[str, str]]]:
    loops = sorted(a for a in dfg.activities if dfg.counts.get((a, a), 0) > 0)
    if not loops:
        places, transitions, arcs, _ = _alpha_net(dfg)
        return places, transitions, arcs

    loop_set = set(loops)
    filtered = [tuple(a for a in s if a not in loop_set) for s in sequences]
    reduced = DirectlyFollowsGraph.from_sequences(filtered)
    if not reduced.activities:
        raise NoStartOrEndError("Log consists of length-one loops only")
    places, transitions, arcs, pairs = _alpha_net(reduced, frozenset(loop_set))

    # Neighbours of each loop activity in the original log, with virtual
    # start/end markers standing for the source and sink places.
    before: Dict[str, Set[str]] = {a: set() for a in loops}
    after: Dict[str, Set[str]] = {a: set() for a in loops}
    for sequence in sequences:
        framed = (_START,) + sequence + (_END,)
        for x, y in zip(framed, framed[1:]):
            if y in loop_set and x != y:
                before[y].add(x)
            if x in loop_set and x != y:
                after[x].add(y)

    taken = set(places) | {t.id for t in transitions} | loop_set
    for activity in loops:
        transitions.append(Transition(activity, activity))
        # Neighbours that are themselves loop activities were removed from the reduced log
        preds = before[activity] - loop_set
        succs = after[activity] - loop_set
        matches = [
            place
            for place, (left, right) in pairs.items()
            if preds and succs and preds <= left and succs <= right
        ]
        if not matches:
            place = _unique(f"loop({activity})", taken)
            taken.add(place)
            places.append(place)
            arcs.extend((p, place) for p in sorted(preds) if p not in (_START, _END))
            arcs.extend((place, s) for s in sorted(succs) if s not in (_START, _END))
            matches = [place]
            logger.warning(f"[ALPHA] No place between {sorted(preds)} and {sorted(succs)} for '{activity}'")
        for place in matches:
            arcs.append((place, activity))
            arcs.append((activity, place))
    return places, transitions, arcs
