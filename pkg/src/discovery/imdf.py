"""
Inductive Miner over directly-follows graphs (IMDF).

The miner searches the graph for a cut in the order xor, sequence, parallel,
loop. Each part of a cut becomes a child subtree, mined recursively from the
projected sub-graph. When no cut applies the flower model over the remaining
activities is returned.
"""

import logging
from collections import Counter
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

from src.discovery.dfg import DirectlyFollowsGraph, discover_dfg
from src.errors import InvalidParameterError
from src.eventlog.model import DEFAULT_CLASSIFIER, Classifier, EventLog
from src.petrinet.process_tree import Operator, ProcessTree

logger = logging.getLogger(__name__)

Part = FrozenSet[str]


def _part_key(part: Part) -> Tuple[str, ...]:
    return tuple(sorted(part))


def _graph(dfg: DirectlyFollowsGraph) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(sorted(dfg.activities))
    graph.add_edges_from(edge for edge in dfg.counts if edge[0] != edge[1])
    return graph


def _filter_noise(dfg: DirectlyFollowsGraph, threshold: float) -> DirectlyFollowsGraph:
    """Drop edges whose count is below threshold x the strongest edge into the same target."""
    if threshold <= 0 or not dfg.counts:
        return dfg
    strongest: Dict[str, int] = {}
    for (_, target), count in dfg.counts.items():
        strongest[target] = max(strongest.get(target, 0), count)
    kept = {
        edge: count
        for edge, count in dfg.counts.items()
        if count >= threshold * strongest[edge[1]]
    }
    return DirectlyFollowsGraph(dfg.activities, kept, dfg.start_counts, dfg.end_counts)


def _occurrences(dfg: DirectlyFollowsGraph, part: Part) -> int:
    incoming = sum(count for (_, b), count in dfg.counts.items() if b in part)
    return incoming + sum(dfg.start_counts.get(a, 0) for a in part)


def _project(
    dfg: DirectlyFollowsGraph, part: Part, starts: Counter, ends: Counter
) -> DirectlyFollowsGraph:
    counts = {(a, b): c for (a, b), c in dfg.counts.items() if a in part and b in part}
    return DirectlyFollowsGraph(
        part,
        counts,
        {a: c for a, c in starts.items() if a in part},
        {a: c for a, c in ends.items() if a in part},
    )


def _boundary_counts(dfg: DirectlyFollowsGraph, part: Part) -> Tuple[Counter, Counter]:
    """Start/end counts of a part: original ones plus edges entering/leaving it."""
    starts: Counter = Counter({a: c for a, c in dfg.start_counts.items() if a in part})
    ends: Counter = Counter({a: c for a, c in dfg.end_counts.items() if a in part})
    for (a, b), count in dfg.counts.items():
        if a not in part and b in part:
            starts[b] += count
        elif a in part and b not in part:
            ends[a] += count
    return starts, ends


def xor_cut(dfg: DirectlyFollowsGraph) -> Optional[List[Part]]:
    """Weakly connected components, if there are at least two."""
    components = [frozenset(c) for c in nx.weakly_connected_components(_graph(dfg))]
    if len(components) < 2:
        return None
    return sorted(components, key=_part_key)


def sequence_cut(dfg: DirectlyFollowsGraph) -> Optional[List[Part]]:
    """
    Ordered blocks where every activity of an earlier block reaches every
    activity of a later one and never the other way round.

    Strongly connected components are condensed; components that are mutually
    unreachable are merged transitively, which leaves a total order of blocks.
    """
    graph = _graph(dfg)
    condensed = nx.condensation(graph)
    closure = nx.transitive_closure_dag(condensed)
    incomparable = nx.Graph()
    incomparable.add_nodes_from(condensed.nodes)
    for u, v in combinations(sorted(condensed.nodes), 2):
        if not closure.has_edge(u, v) and not closure.has_edge(v, u):
            incomparable.add_edge(u, v)

    groups = list(nx.connected_components(incomparable))
    if len(groups) < 2:
        return None

    position = {node: index for index, node in enumerate(nx.topological_sort(condensed))}
    groups.sort(key=lambda group: min(position[node] for node in group))
    return [
        frozenset().union(*(condensed.nodes[node]["members"] for node in group))
        for group in groups
    ]


def parallel_cut(dfg: DirectlyFollowsGraph) -> Optional[List[Part]]:
    """
    Partition where every cross pair is connected in both directions.

    Every part must contain a start and an end activity and occur at least as
    often as the graph is entered; parts failing this are optional behaviour
    and are merged into the first valid part.
    """
    graph = _graph(dfg)
    activities = sorted(dfg.activities)
    unlinked = nx.Graph()
    unlinked.add_nodes_from(activities)
    for a, b in combinations(activities, 2):
        if not (graph.has_edge(a, b) and graph.has_edge(b, a)):
            unlinked.add_edge(a, b)

    parts = sorted((frozenset(c) for c in nx.connected_components(unlinked)), key=_part_key)
    if len(parts) < 2:
        return None

    entries = sum(dfg.start_counts.values())
    starts, ends = dfg.start_activities, dfg.end_activities
    valid = [
        p for p in parts if p & starts and p & ends and _occurrences(dfg, p) >= entries
    ]
    if not valid:
        return None
    rest = [p for p in parts if p not in valid]
    if rest:
        valid[0] = valid[0].union(*rest)
    if len(valid) < 2:
        return None
    return sorted(valid, key=_part_key)


def loop_cut(dfg: DirectlyFollowsGraph) -> Optional[List[Part]]:
    """
    Do-part holding all start and end activities, followed by redo-parts.

    A component outside the start/end activities is a redo-part only if it
    is entered from every end activity and from nothing else, and leaves to
    every start activity and to nothing else.
    """
    starts, ends = dfg.start_activities, dfg.end_activities
    do_part = set(starts | ends)
    if not do_part:
        return None
    graph = _graph(dfg)
    others = graph.subgraph(sorted(dfg.activities - do_part))
    components = sorted((frozenset(c) for c in nx.weakly_connected_components(others)), key=_part_key)

    redo_parts: List[Part] = []
    for component in components:
        entered = left = False
        is_redo = True
        for node in component:
            sources = {a for a in graph.predecessors(node) if a not in component}
            targets = {b for b in graph.successors(node) if b not in component}
            entered = entered or bool(sources)
            left = left or bool(targets)
            if sources and sources != ends:
                is_redo = False
            if targets and targets != starts:
                is_redo = False
        if is_redo and entered and left:
            redo_parts.append(component)
        else:
            do_part |= component

    if not redo_parts:
        return None
    return [frozenset(do_part)] + redo_parts


def _skippable_sequence_parts(dfg: DirectlyFollowsGraph, parts: Sequence[Part]) -> List[bool]:
    index = {a: i for i, part in enumerate(parts) for a in part}
    skippable = [False] * len(parts)
    for a in dfg.start_activities:
        for i in range(index[a]):
            skippable[i] = True
    for a in dfg.end_activities:
        for i in range(index[a] + 1, len(parts)):
            skippable[i] = True
    for a, b in dfg.counts:
        for i in range(index[a] + 1, index[b]):
            skippable[i] = True
    return skippable


class InductiveMiner:
    """
    Recursive cut detection on a directly-follows graph.

    Attributes:
        noise_threshold: Relative edge-frequency cutoff applied at every level
    """

    def __init__(self, noise_threshold: float = 0.0):
        if not 0.0 <= noise_threshold <= 1.0:
            raise InvalidParameterError(f"noise_threshold must lie in [0, 1], got {noise_threshold}")
        self.noise_threshold = noise_threshold

    def mine(self, dfg: DirectlyFollowsGraph) -> ProcessTree:
        dfg = _filter_noise(dfg, self.noise_threshold)
        activities = sorted(dfg.activities)

        if not activities:
            return ProcessTree.tau()
        if len(activities) == 1:
            leaf = ProcessTree.leaf(activities[0])
            if dfg.counts.get((activities[0], activities[0]), 0) > 0:
                return ProcessTree.loop(leaf, ProcessTree.tau())
            return leaf

        parts = xor_cut(dfg)
        if parts:
            logger.debug(f"[IMDF] xor cut {[sorted(p) for p in parts]}")
            return ProcessTree.xor(*(self.mine(_project(dfg, p, *_restricted(dfg, p))) for p in parts))

        parts = sequence_cut(dfg)
        if parts:
            logger.debug(f"[IMDF] sequence cut {[sorted(p) for p in parts]}")
            skippable = _skippable_sequence_parts(dfg, parts)
            children = []
            for part, optional in zip(parts, skippable):
                child = self.mine(_project(dfg, part, *_boundary_counts(dfg, part)))
                children.append(ProcessTree.xor(child, ProcessTree.tau()) if optional else child)
            return ProcessTree.sequence(*children)

        parts = parallel_cut(dfg)
        if parts:
            logger.debug(f"[IMDF] parallel cut {[sorted(p) for p in parts]}")
            return ProcessTree.parallel(
                *(self.mine(_project(dfg, p, *_restricted(dfg, p))) for p in parts)
            )

        parts = loop_cut(dfg)
        if parts:
            logger.debug(f"[IMDF] loop cut {[sorted(p) for p in parts]}")
            do_part = parts[0]
            children = [self.mine(_project(dfg, do_part, *_restricted(dfg, do_part)))]
            for redo in parts[1:]:
                children.append(self.mine(_project(dfg, redo, *_boundary_counts(dfg, redo))))
            return ProcessTree.loop(*children)

        logger.debug(f"[IMDF] flower fall-through over {activities}")
        return ProcessTree.loop(ProcessTree.tau(), *(ProcessTree.leaf(a) for a in activities))


def _restricted(dfg: DirectlyFollowsGraph, part: Part) -> Tuple[Counter, Counter]:
    return (
        Counter({a: c for a, c in dfg.start_counts.items() if a in part}),
        Counter({a: c for a, c in dfg.end_counts.items() if a in part}),
    )


def discover_imdf(
    source: Union[EventLog, DirectlyFollowsGraph],
    noise_threshold: float = 0.0,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> ProcessTree:
    """
    Discover a process tree with the DFG-based inductive miner.

    Args:
        source: Event log or directly-follows graph
        noise_threshold: Fraction in [0, 1]; 0 keeps every edge
        classifier: Activity classifier (logs only)

    Returns:
        ProcessTree containing every activity exactly once as a leaf
    """
    miner = InductiveMiner(noise_threshold)
    if isinstance(source, DirectlyFollowsGraph):
        return miner.mine(source)

    dfg = discover_dfg(source, classifier)
    tree = miner.mine(dfg)
    has_empty = any(len(trace) == 0 for trace in source)
    if has_empty and dfg.activities:
        tree = ProcessTree.xor(ProcessTree.tau(), tree)
    logger.info(f"[IMDF] Discovered {tree}")
    return tree
