"""Accepting Petri nets, process trees and transition systems."""

from src.petrinet.conversion import SINK, SOURCE, flower_model, flower_tree, tree_to_petri
from src.petrinet.model import AcceptingPetriNet, Marking, PetriNet, Transition
from src.petrinet.process_tree import Operator, ProcessTree, bounded_language
from src.petrinet.reachability import (
    TAU,
    TransitionSystem,
    accepts,
    is_workflow_net,
    net_language,
    reachability_graph,
)
from src.petrinet.semantics import CompiledNet, enabled, fire
from src.petrinet.serialization import NetDocument, dump_net, load_net

__all__ = [
    "SINK",
    "SOURCE",
    "TAU",
    "AcceptingPetriNet",
    "CompiledNet",
    "Marking",
    "NetDocument",
    "Operator",
    "PetriNet",
    "ProcessTree",
    "Transition",
    "TransitionSystem",
    "accepts",
    "bounded_language",
    "dump_net",
    "enabled",
    "fire",
    "flower_model",
    "flower_tree",
    "is_workflow_net",
    "load_net",
    "net_language",
    "reachability_graph",
    "tree_to_petri",
]
