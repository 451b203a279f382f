"""
JSON document format for accepting Petri nets, used to pass models between
CLI commands.
"""

import json
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from src.errors import DataError, InvalidNetError
from src.petrinet.model import AcceptingPetriNet, Marking, PetriNet, Transition


class TransitionEntry(BaseModel):
    id: str
    label: Optional[str] = None


class NetDocument(BaseModel):
    """
    Serialized accepting Petri net.

    Attributes:
        places: Place ids
        transitions: Transition ids with optional labels (null = silent)
        arcs: [source, target] pairs
        im: Initial marking, place -> count
        fm: Final marking, place -> count
    """

    places: List[str] = Field(default_factory=list)
    transitions: List[TransitionEntry] = Field(default_factory=list)
    arcs: List[Tuple[str, str]] = Field(default_factory=list)
    im: Dict[str, int] = Field(default_factory=dict)
    fm: Dict[str, int] = Field(default_factory=dict)

    @classmethod
    def from_net(cls, anet: AcceptingPetriNet) -> "NetDocument":
        net = anet.net
        return cls(
            places=list(net.places),
            transitions=[TransitionEntry(id=t.id, label=t.label) for t in net.transitions],
            arcs=[tuple(arc) for arc in net.arcs],
            im=dict(anet.im.items()),
            fm=dict(anet.fm.items()),
        )

    def to_net(self) -> AcceptingPetriNet:
        """
        Rebuild the accepting net.

        Raises:
            InvalidNetError: If the document violates net invariants
        """
        try:
            net = PetriNet(
                self.places,
                [Transition(t.id, t.label) for t in self.transitions],
                self.arcs,
            )
            return AcceptingPetriNet(net, Marking(self.im), Marking(self.fm))
        except ValueError as e:
            raise InvalidNetError(f"Invalid net document: {e}") from e


def dump_net(anet: AcceptingPetriNet) -> str:
    """Serialize a net as deterministic, indented JSON."""
    return NetDocument.from_net(anet).model_dump_json(indent=2) + "\n"


def load_net(text: str) -> AcceptingPetriNet:
    """
    Parse a net document.

    Raises:
        DataError: If the text is not a valid net document
    """
    try:
        document = NetDocument.model_validate(json.loads(text))
    except (json.JSONDecodeError, ValidationError) as e:
        raise DataError(f"Invalid net document: {e}") from e
    return document.to_net()
