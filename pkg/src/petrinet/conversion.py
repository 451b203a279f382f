"""
Process tree to Petri net conversion.

Every subtree is built between an entry and an exit place. Sequences chain
their children through fresh intermediate places, choices share the entry
and exit places, and parallel and loop blocks get their own places joined
to the surroundings by silent split/join transitions.
"""

import logging
from typing import Iterable, List, Optional, Tuple

from src.petrinet.model import AcceptingPetriNet, Marking, PetriNet, Transition
from src.petrinet.process_tree import Operator, ProcessTree

logger = logging.getLogger(__name__)

SOURCE = "source"
SINK = "sink"


class _NetBuilder:
    def __init__(self) -> None:
        self.places: List[str] = [SOURCE, SINK]
        self.transitions: List[Transition] = []
        self.arcs: List[Tuple[str, str]] = []
        self._place_counter = 0
        self._visible_counter = 0
        self._silent_counter = 0

    def place(self) -> str:
        self._place_counter += 1
        place = f"p{self._place_counter}"
        self.places.append(place)
        return place

    def transition(self, label: Optional[str]) -> str:
        if label is None:
            self._silent_counter += 1
            transition_id = f"tau{self._silent_counter}"
        else:
            self._visible_counter += 1
            transition_id = f"t{self._visible_counter}"
        self.transitions.append(Transition(transition_id, label))
        return transition_id

    def connect(self, entry: str, transition: str, exit_: str) -> None:
        self.arcs.append((entry, transition))
        self.arcs.append((transition, exit_))

    def build(self, node: ProcessTree, entry: str, exit_: str) -> None:
        if node.is_leaf:
            self.connect(entry, self.transition(node.label), exit_)
            return

        if node.operator is Operator.SEQUENCE:
            current = entry
            for index, child in enumerate(node.children):
                following = exit_ if index == len(node.children) - 1 else self.place()
                self.build(child, current, following)
                current = following

        elif node.operator is Operator.XOR:
            for child in node.children:
                self.build(child, entry, exit_)

        elif node.operator is Operator.PARALLEL:
            split = self.transition(None)
            join = self.transition(None)
            self.arcs.append((entry, split))
            self.arcs.append((join, exit_))
            for child in node.children:
                child_entry, child_exit = self.place(), self.place()
                self.arcs.append((split, child_entry))
                self.arcs.append((child_exit, join))
                self.build(child, child_entry, child_exit)

        elif node.operator is Operator.LOOP:
            loop_entry, loop_exit = self.place(), self.place()
            self.connect(entry, self.transition(None), loop_entry)
            self.build(node.children[0], loop_entry, loop_exit)
            for redo in node.children[1:]:
                self.build(redo, loop_exit, loop_entry)
            self.connect(loop_exit, self.transition(None), exit_)


def tree_to_petri(tree: ProcessTree) -> AcceptingPetriNet:
    """
    Convert a process tree into an accepting Petri net.

    Args:
        tree: Process tree

    Returns:
        Workflow net with im = [source:1] and fm = [sink:1]

    Raises:
        MalformedTreeError: If the tree violates arity rules
    """
    tree.validate()
    builder = _NetBuilder()
    builder.build(tree, SOURCE, SINK)
    net = PetriNet(builder.places, builder.transitions, builder.arcs)
    logger.debug(f"[CONVERT] Tree {tree} -> {net}")
    return AcceptingPetriNet(net, Marking({SOURCE: 1}), Marking({SINK: 1}))


def flower_tree(activities: Iterable[str]) -> ProcessTree:
    """loop(tau, a1, ..., an) over the sorted distinct activities."""
    labels = sorted(set(activities))
    if not labels:
        return ProcessTree.loop(ProcessTree.tau(), ProcessTree.tau())
    return ProcessTree.loop(ProcessTree.tau(), *(ProcessTree.leaf(a) for a in labels))


def flower_model(activities: Iterable[str]) -> AcceptingPetriNet:
    """Accepting net that replays any sequence over `activities`."""
    return tree_to_petri(flower_tree(activities))
