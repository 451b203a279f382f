"""
State-space exploration: reachability graphs, language membership and
bounded language enumeration.
"""

import logging
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Deque, Dict, FrozenSet, List, Mapping, Sequence, Set, Tuple

from src.config import DEFAULT_STATE_BOUND
from src.errors import InvalidParameterError, StateSpaceExceededError
from src.petrinet.model import AcceptingPetriNet, Marking, PetriNet
from src.petrinet.semantics import CompiledNet, Vector

logger = logging.getLogger(__name__)

TAU = "tau"


@dataclass(frozen=True)
class TransitionSystem:
    """
    Labelled transition system.

    Attributes:
        states: State id -> marking payload
        transitions: (source state, label, target state) triples, sorted
        initial: Initial state id
    """

    states: Mapping[str, Marking]
    transitions: Tuple[Tuple[str, str, str], ...]
    initial: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", MappingProxyType(dict(self.states)))
        for source, _, target in self.transitions:
            if source not in self.states or target not in self.states:
                raise ValueError(f"Transition ({source}, {target}) references an unknown state")
        if self.initial not in self.states:
            raise ValueError(f"Initial state '{self.initial}' is not a state")

    def successors(self, state: str) -> List[Tuple[str, str]]:
        return [(label, target) for source, label, target in self.transitions if source == state]


def reachability_graph(anet: AcceptingPetriNet, state_bound: int = DEFAULT_STATE_BOUND) -> TransitionSystem:
    """
    Breadth-first construction of the reachability graph from im.

    States are named s0, s1, ... in discovery order; transitions are explored
    in id order, so the result is deterministic.

    Args:
        anet: Accepting Petri net
        state_bound: Maximum number of distinct markings

    Returns:
        TransitionSystem whose edges carry transition labels (tau for silent)

    Raises:
        StateSpaceExceededError: If more than `state_bound` markings are reachable
        InvalidParameterError: If `state_bound` is below 1
    """
    if state_bound < 1:
        raise InvalidParameterError(f"state_bound must be at least 1, got {state_bound}")
    compiled = CompiledNet(anet)
    names: Dict[Vector, str] = {compiled.initial: "s0"}
    queue: Deque[Vector] = deque([compiled.initial])
    edges: Set[Tuple[str, str, str]] = set()

    while queue:
        vector = queue.popleft()
        for transition in compiled.enabled(vector):
            successor = compiled.fire(vector, transition)
            if successor not in names:
                if len(names) >= state_bound:
                    raise StateSpaceExceededError(state_bound, len(names) + 1)
                names[successor] = f"s{len(names)}"
                queue.append(successor)
            label = compiled.labels[transition]
            edges.add((names[vector], TAU if label is None else label, names[successor]))

    logger.debug(f"[REACH] {len(names)} states, {len(edges)} edges")
    states = {name: compiled.decode(vector) for vector, name in names.items()}
    return TransitionSystem(states, tuple(sorted(edges)), "s0")


def accepts(
    anet: AcceptingPetriNet, activities: Sequence[str], state_bound: int = DEFAULT_STATE_BOUND
) -> bool:
    """
    True if some firing sequence from im to fm has `activities` as its visible labels.

    Raises:
        StateSpaceExceededError: If the search visits more than `state_bound` states
    """
    compiled = CompiledNet(anet)
    start = (compiled.initial, 0)
    seen: Set[Tuple[Vector, int]] = {start}
    queue: Deque[Tuple[Vector, int]] = deque([start])
    while queue:
        vector, position = queue.popleft()
        if position == len(activities) and vector == compiled.final:
            return True
        for transition in compiled.enabled(vector):
            label = compiled.labels[transition]
            if label is None:
                state = (compiled.fire(vector, transition), position)
            elif position < len(activities) and label == activities[position]:
                state = (compiled.fire(vector, transition), position + 1)
            else:
                continue
            if state not in seen:
                if len(seen) >= state_bound:
                    raise StateSpaceExceededError(state_bound, len(seen) + 1)
                seen.add(state)
                queue.append(state)
    return False


def net_language(
    anet: AcceptingPetriNet, max_length: int, state_bound: int = DEFAULT_STATE_BOUND
) -> FrozenSet[Tuple[str, ...]]:
    """
    Visible-label sequences of length <= `max_length` of firing sequences im -> fm.

    Raises:
        StateSpaceExceededError: If the search visits more than `state_bound` states
    """
    compiled = CompiledNet(anet)
    start: Tuple[Vector, Tuple[str, ...]] = (compiled.initial, ())
    seen = {start}
    queue = deque([start])
    words: Set[Tuple[str, ...]] = set()
    while queue:
        vector, word = queue.popleft()
        if vector == compiled.final:
            words.add(word)
        for transition in compiled.enabled(vector):
            label = compiled.labels[transition]
            if label is None:
                state = (compiled.fire(vector, transition), word)
            elif len(word) < max_length:
                state = (compiled.fire(vector, transition), word + (label,))
            else:
                continue
            if state not in seen:
                if len(seen) >= state_bound:
                    raise StateSpaceExceededError(state_bound, len(seen) + 1)
                seen.add(state)
                queue.append(state)
    return frozenset(words)


def is_workflow_net(net: PetriNet) -> bool:
    """
    Structural workflow-net check.

    Exactly one place without inputs, exactly one place without outputs, and
    every node lies on a path from the former to the latter.
    """
    sources = [p for p in net.places if not net.preset(p)]
    sinks = [p for p in net.places if not net.postset(p)]
    if len(sources) != 1 or len(sinks) != 1:
        return False

    def reach(start: str, step) -> Set[str]:
        seen = {start}
        stack = [start]
        while stack:
            for nxt in step(stack.pop()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    nodes = set(net.places) | {t.id for t in net.transitions}
    forward = reach(sources[0], net.postset)
    backward = reach(sinks[0], net.preset)
    return nodes <= forward and nodes <= backward
