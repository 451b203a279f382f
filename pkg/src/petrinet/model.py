"""
Petri nets, markings and accepting Petri nets.

All arc weights are 1. Nets are immutable once built; their sorted node
tuples make every iteration order deterministic.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from src.errors import ForeignPlaceError, InvalidNetError


@dataclass(frozen=True, order=True)
class Transition:
    """
    A transition with an optional activity label.

    Attributes:
        id: Identifier, unique across places and transitions
        label: Activity label; None marks a silent (tau) transition
    """

    id: str
    label: Optional[str] = None

    @property
    def is_silent(self) -> bool:
        return self.label is None


class Marking(Mapping):
    """
    Multiset of tokens over places.

    Only places holding at least one token are stored; looking up any other
    place through `count` gives 0. Markings are hashable.
    """

    __slots__ = ("_tokens", "_hash")

    def __init__(self, tokens: Optional[Union[Mapping, Iterable[Tuple[str, int]]]] = None):
        items = dict(tokens or {})
        for place, count in items.items():
            if not isinstance(count, int) or count < 0:
                raise ValueError(f"Token count for '{place}' must be a non-negative integer")
        self._tokens: Dict[str, int] = {p: c for p, c in sorted(items.items()) if c > 0}
        self._hash: Optional[int] = None

    def count(self, place: str) -> int:
        return self._tokens.get(place, 0)

    def total(self) -> int:
        return sum(self._tokens.values())

    def covers(self, other: "Marking") -> bool:
        """True if this marking holds at least the tokens of `other`."""
        return all(self.count(p) >= c for p, c in other.items())

    def __getitem__(self, place: str) -> int:
        return self._tokens[place]

    def __iter__(self) -> Iterator[str]:
        return iter(self._tokens)

    def __len__(self) -> int:
        return len(self._tokens)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._tokens.items()))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Marking):
            return self._tokens == other._tokens
        return super().__eq__(other)

    def __repr__(self) -> str:
        return f"Marking({self._tokens!r})"

    def __str__(self) -> str:
        return "[" + ", ".join(f"{p}:{c}" for p, c in self._tokens.items()) + "]"


class PetriNet:
    """
    Bipartite graph of places and transitions.

    Attributes:
        places: Place ids, sorted
        transitions: Transitions, sorted by id
        arcs: (source, target) pairs, sorted
    """

    def __init__(
        self,
        places: Iterable[str],
        transitions: Iterable[Transition],
        arcs: Iterable[Tuple[str, str]],
    ):
        """
        Build and validate a net.

        Args:
            places: Place ids
            transitions: Transitions (id + optional label)
            arcs: Place->transition and transition->place pairs

        Raises:
            InvalidNetError: On duplicate ids or arcs that are not bipartite
        """
        place_list = list(places)
        transition_list = list(transitions)
        place_set = set(place_list)
        if len(place_set) != len(place_list):
            raise InvalidNetError("Duplicate place ids")
        by_id: Dict[str, Transition] = {}
        for transition in transition_list:
            if transition.id in by_id or transition.id in place_set:
                raise InvalidNetError(f"Duplicate node id '{transition.id}'")
            by_id[transition.id] = transition

        arc_set = set()
        preset: Dict[str, List[str]] = {node: [] for node in (*place_set, *by_id)}
        postset: Dict[str, List[str]] = {node: [] for node in (*place_set, *by_id)}
        for source, target in arcs:
            forward = source in place_set and target in by_id
            backward = source in by_id and target in place_set
            if not (forward or backward):
                raise InvalidNetError(f"Arc ({source}, {target}) must join a place and a transition")
            if (source, target) in arc_set:
                continue
            arc_set.add((source, target))
            postset[source].append(target)
            preset[target].append(source)

        self.places: Tuple[str, ...] = tuple(sorted(place_set))
        self.transitions: Tuple[Transition, ...] = tuple(sorted(by_id.values()))
        self.arcs: Tuple[Tuple[str, str], ...] = tuple(sorted(arc_set))
        self._by_id = MappingProxyType(by_id)
        self._preset = MappingProxyType({n: tuple(sorted(v)) for n, v in preset.items()})
        self._postset = MappingProxyType({n: tuple(sorted(v)) for n, v in postset.items()})

    def transition(self, transition_id: str) -> Transition:
        return self._by_id[transition_id]

    def has_place(self, place: str) -> bool:
        return place in self._preset and place not in self._by_id

    def preset(self, node: str) -> Tuple[str, ...]:
        """Input nodes of a place or transition."""
        return self._preset[node]

    def postset(self, node: str) -> Tuple[str, ...]:
        """Output nodes of a place or transition."""
        return self._postset[node]

    @property
    def labels(self) -> FrozenSet[str]:
        return frozenset(t.label for t in self.transitions if t.label is not None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PetriNet):
            return NotImplemented
        return (self.places, self.transitions, self.arcs) == (
            other.places,
            other.transitions,
            other.arcs,
        )

    def __hash__(self) -> int:
        return hash((self.places, self.transitions, self.arcs))

    def __repr__(self) -> str:
        return (
            f"PetriNet(places={len(self.places)}, transitions={len(self.transitions)}, "
            f"arcs={len(self.arcs)})"
        )


@dataclass(frozen=True)
class AcceptingPetriNet:
    """
    A Petri net with initial and final markings.

    Attributes:
        net: The Petri net
        im: Initial marking
        fm: Final marking
    """

    net: PetriNet
    im: Marking
    fm: Marking

    def __post_init__(self) -> None:
        for marking in (self.im, self.fm):
            for place in marking:
                if not self.net.has_place(place):
                    raise ForeignPlaceError(place)
