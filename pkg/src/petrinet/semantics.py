"""
Firing semantics.

`enabled` and `fire` work on Marking objects. CompiledNet maps places and
transitions to integer indices and markings to count vectors; replay,
alignments and reachability search run on that representation.
"""

from collections import deque
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from src.errors import ForeignPlaceError, NotEnabledError
from src.petrinet.model import AcceptingPetriNet, Marking

Vector = Tuple[int, ...]


def _check_marking(anet: AcceptingPetriNet, m: Marking) -> None:
    for place in m:
        if not anet.net.has_place(place):
            raise ForeignPlaceError(place)


def enabled(anet: AcceptingPetriNet, m: Marking) -> FrozenSet[str]:
    """
    Transitions enabled in a marking.

    Raises:
        ForeignPlaceError: If the marking names a place outside the net
    """
    _check_marking(anet, m)
    net = anet.net
    return frozenset(
        t.id for t in net.transitions if all(m.count(p) >= 1 for p in net.preset(t.id))
    )


def fire(anet: AcceptingPetriNet, m: Marking, t: str) -> Marking:
    """
    Fire transition `t` in marking `m`.

    Returns:
        The successor marking

    Raises:
        ForeignPlaceError: If the marking names a place outside the net
        NotEnabledError: If `t` is unknown or not enabled
    """
    _check_marking(anet, m)
    net = anet.net
    try:
        inputs = net.preset(t)
        outputs = net.postset(t)
        net.transition(t)
    except KeyError:
        raise NotEnabledError(t)
    if any(m.count(p) < 1 for p in inputs):
        raise NotEnabledError(t)

    tokens = dict(m.items())
    for place in inputs:
        tokens[place] -= 1
    for place in outputs:
        tokens[place] = tokens.get(place, 0) + 1
    return Marking(tokens)


class CompiledNet:
    """
    Index-based view of an accepting Petri net.

    Attributes:
        anet: Source net
        place_ids: Place ids by index
        transition_ids: Transition ids by index (sorted by id)
        labels: Transition labels by index (None = silent)
        pre: Input place indices per transition
        post: Output place indices per transition
        silent: Indices of silent transitions
        by_label: Transition indices per visible label
        initial: Initial marking vector
        final: Final marking vector
    """

    def __init__(self, anet: AcceptingPetriNet):
        net = anet.net
        self.anet = anet
        self.place_ids: Tuple[str, ...] = net.places
        self.place_index: Dict[str, int] = {p: i for i, p in enumerate(net.places)}
        self.transition_ids: Tuple[str, ...] = tuple(t.id for t in net.transitions)
        self.labels: Tuple[Optional[str], ...] = tuple(t.label for t in net.transitions)
        self.pre: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(self.place_index[p] for p in net.preset(t.id)) for t in net.transitions
        )
        self.post: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(self.place_index[p] for p in net.postset(t.id)) for t in net.transitions
        )
        self.silent: Tuple[int, ...] = tuple(i for i, l in enumerate(self.labels) if l is None)
        by_label: Dict[str, List[int]] = {}
        for index, label in enumerate(self.labels):
            if label is not None:
                by_label.setdefault(label, []).append(index)
        self.by_label: Dict[str, Tuple[int, ...]] = {k: tuple(v) for k, v in by_label.items()}
        self.initial: Vector = self.encode(anet.im)
        self.final: Vector = self.encode(anet.fm)

    def encode(self, m: Marking) -> Vector:
        vector = [0] * len(self.place_ids)
        for place, count in m.items():
            if place not in self.place_index:
                raise ForeignPlaceError(place)
            vector[self.place_index[place]] = count
        return tuple(vector)

    def decode(self, vector: Vector) -> Marking:
        return Marking({self.place_ids[i]: c for i, c in enumerate(vector) if c})

    def is_enabled(self, vector: Vector, transition: int) -> bool:
        return all(vector[i] >= 1 for i in self.pre[transition])

    def enabled(self, vector: Vector) -> Iterator[int]:
        for transition in range(len(self.transition_ids)):
            if self.is_enabled(vector, transition):
                yield transition

    def fire(self, vector: Vector, transition: int) -> Vector:
        tokens = list(vector)
        for i in self.pre[transition]:
            tokens[i] -= 1
        for i in self.post[transition]:
            tokens[i] += 1
        return tuple(tokens)

    def silent_path(
        self, vector: Vector, goal: Callable[[Vector], bool], max_depth: int
    ) -> Optional[List[int]]:
        """
        Shortest sequence of silent firings reaching a vector that satisfies `goal`.

        Breadth-first, at most `max_depth` firings, silent transitions tried in id order.
        """
        if goal(vector):
            return []
        frontier = deque([(vector, [])])
        seen: Set[Vector] = {vector}
        while frontier:
            current, path = frontier.popleft()
            if len(path) >= max_depth:
                continue
            for transition in self.silent:
                if not self.is_enabled(current, transition):
                    continue
                successor = self.fire(current, transition)
                if successor in seen:
                    continue
                extended = path + [transition]
                if goal(successor):
                    return extended
                seen.add(successor)
                frontier.append((successor, extended))
        return None

    def silent_closure(self, vector: Vector, max_depth: int) -> List[Vector]:
        """All vectors reachable with at most `max_depth` silent firings, including `vector`."""
        reached = [vector]
        seen: Set[Vector] = {vector}
        frontier = deque([(vector, 0)])
        while frontier:
            current, depth = frontier.popleft()
            if depth >= max_depth:
                continue
            for transition in self.silent:
                if self.is_enabled(current, transition):
                    successor = self.fire(current, transition)
                    if successor not in seen:
                        seen.add(successor)
                        reached.append(successor)
                        frontier.append((successor, depth + 1))
        return reached

    def visible_enabled(self, vectors: Sequence[Vector]) -> FrozenSet[str]:
        """Labels of visible transitions enabled in any of the given vectors."""
        labels = set()
        for vector in vectors:
            for transition in self.enabled(vector):
                label = self.labels[transition]
                if label is not None:
                    labels.add(label)
        return frozenset(labels)
