"""
Graphviz DOT emission.

Output is built line by line from sorted structures, so equal inputs give
byte-identical text. Every identifier is double-quoted.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from src.analytics.sna import SNAResult
from src.discovery.dfg import DirectlyFollowsGraph
from src.errors import MalformedObjectError, MalformedTreeError
from src.petrinet.model import AcceptingPetriNet
from src.petrinet.process_tree import ProcessTree
from src.petrinet.reachability import TransitionSystem

logger = logging.getLogger(__name__)

TOKEN = "\u25cf"

START_COLOR = "#c8e6c9"
END_COLOR = "#ffcdd2"

Renderable = Union[DirectlyFollowsGraph, AcceptingPetriNet, ProcessTree, TransitionSystem, SNAResult]


class DotKind(str, Enum):
    DFG = "dfg"
    PETRI = "petri"
    TREE = "tree"
    TRANSITION_SYSTEM = "transition_system"
    SNA = "sna"


@dataclass(frozen=True)
class DotDocument:
    text: str
    kind: DotKind


class RenderOptions(BaseModel):
    """
    Attributes:
        threshold: SNA edges below this value are omitted
        rankdir: Graph direction
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    threshold: float = Field(default=0.0, ge=0.0)
    rankdir: Literal["LR", "TB", "RL", "BT"] = "LR"


def quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _attributes(values: Dict[str, str]) -> str:
    return "[" + ", ".join(f"{key}={quote(value)}" for key, value in values.items()) + "]"


def _document(keyword: str, name: str, options: RenderOptions, body: List[str]) -> str:
    lines = [f"{keyword} {name} {{", f"  rankdir={options.rankdir};"]
    lines.extend(f"  {line}" for line in body)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dfg_to_dot(dfg: DirectlyFollowsGraph, options: RenderOptions) -> str:
    body = ['node [shape="box", style="rounded"];']
    for activity in sorted(dfg.activities):
        attributes = {"label": activity}
        starts, ends = dfg.start_counts.get(activity, 0), dfg.end_counts.get(activity, 0)
        if starts and ends:
            attributes.update(style="rounded,filled", fillcolor=START_COLOR, penwidth="2")
        elif starts:
            attributes.update(style="rounded,filled", fillcolor=START_COLOR)
        elif ends:
            attributes.update(style="rounded,filled", fillcolor=END_COLOR)
        body.append(f"{quote(activity)} {_attributes(attributes)};")
    for (source, target), count in dfg.counts.items():
        body.append(f"{quote(source)} -> {quote(target)} {_attributes({'label': str(count)})};")
    return _document("digraph", "dfg", options, body)


def petri_to_dot(anet: AcceptingPetriNet, options: RenderOptions) -> str:
    net = anet.net
    body = []
    for place in net.places:
        attributes = {
            "shape": "doublecircle" if anet.fm.count(place) else "circle",
            "label": TOKEN * anet.im.count(place),
            "xlabel": place,
        }
        body.append(f"{quote(place)} {_attributes(attributes)};")
    for transition in net.transitions:
        if transition.is_silent:
            attributes = {"shape": "box", "style": "filled", "fillcolor": "black", "label": ""}
        else:
            attributes = {"shape": "box", "label": transition.label}
        body.append(f"{quote(transition.id)} {_attributes(attributes)};")
    for source, target in net.arcs:
        body.append(f"{quote(source)} -> {quote(target)};")
    return _document("digraph", "petri", options, body)


def tree_to_dot(tree: ProcessTree, options: RenderOptions) -> str:
    try:
        tree.validate()
    except MalformedTreeError as e:
        raise MalformedObjectError(str(e)) from e

    nodes: List[str] = []
    edges: List[str] = []

    def visit(node: ProcessTree) -> str:
        node_id = f"n{len(nodes)}"
        if node.is_tau:
            attributes = {"shape": "box", "style": "filled", "fillcolor": "black", "label": "tau", "fontcolor": "white"}
        elif node.is_leaf:
            attributes = {"shape": "box", "label": node.label}
        else:
            attributes = {"shape": "circle", "label": node.operator.value}
        nodes.append(f"{quote(node_id)} {_attributes(attributes)};")
        for child in node.children:
            edges.append(f"{quote(node_id)} -> {quote(visit(child))};")
        return node_id

    visit(tree)
    return _document("digraph", "tree", options.model_copy(update={"rankdir": "TB"}), nodes + edges)


def ts_to_dot(ts: TransitionSystem, options: RenderOptions) -> str:
    body = []
    for state, marking in ts.states.items():
        attributes = {"shape": "ellipse", "label": str(marking)}
        if state == ts.initial:
            attributes["penwidth"] = "2"
        body.append(f"{quote(state)} {_attributes(attributes)};")
    for source, label, target in ts.transitions:
        body.append(f"{quote(source)} -> {quote(target)} {_attributes({'label': label})};")
    return _document("digraph", "ts", options, body)


def sna_to_dot(result: SNAResult, options: RenderOptions) -> str:
    keyword, arrow = ("digraph", "->") if result.directed else ("graph", "--")
    body = ['node [shape="ellipse"];']
    body.extend(f"{quote(resource)};" for resource in result.resources)
    for source, target, value in result.edges(options.threshold):
        body.append(f"{quote(source)} {arrow} {quote(target)} {_attributes({'label': f'{value:.3f}'})};")
    return _document(keyword, "sna", options, body)


def to_dot(obj: Renderable, options: Optional[RenderOptions] = None) -> DotDocument:
    """
    Render a supported object as DOT.

    Args:
        obj: DirectlyFollowsGraph, AcceptingPetriNet, ProcessTree, TransitionSystem or SNAResult
        options: Rendering options

    Returns:
        DotDocument with the DOT text and the object kind

    Raises:
        MalformedObjectError: If the object is unsupported or invalid
    """
    options = options or RenderOptions()
    if isinstance(obj, DirectlyFollowsGraph):
        document = DotDocument(dfg_to_dot(obj, options), DotKind.DFG)
    elif isinstance(obj, AcceptingPetriNet):
        document = DotDocument(petri_to_dot(obj, options), DotKind.PETRI)
    elif isinstance(obj, ProcessTree):
        document = DotDocument(tree_to_dot(obj, options), DotKind.TREE)
    elif isinstance(obj, TransitionSystem):
        document = DotDocument(ts_to_dot(obj, options), DotKind.TRANSITION_SYSTEM)
    elif isinstance(obj, SNAResult):
        document = DotDocument(sna_to_dot(obj, options), DotKind.SNA)
    else:
        raise MalformedObjectError(f"Cannot render objects of type {type(obj).__name__}")
    logger.debug(f"[RENDER] {document.kind.value}: {len(document.text)} characters")
    return document
