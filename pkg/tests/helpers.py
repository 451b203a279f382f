"""
Builders for logs, nets and trees used across the test modules.
"""

import random
from datetime import datetime, timedelta, timezone
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.eventlog import (
    CONCEPT_NAME,
    RESOURCE_KEY,
    TIMESTAMP_KEY,
    Classifier,
    Event,
    EventLog,
    Timestamp,
    Trace,
)
from src.petrinet import AcceptingPetriNet, Marking, PetriNet, ProcessTree, Transition

BASE_TIME = datetime(2024, 1, 1, tzinfo=timezone.utc)

REQUEST_TRACE = ("register request", "check ticket", "examine thoroughly", "decide", "reject request")


def stamp(seconds: float) -> Timestamp:
    return Timestamp.from_datetime(BASE_TIME + timedelta(seconds=seconds))


def make_trace(
    case_id: str,
    activities: Sequence[str],
    start_seconds: float = 0.0,
    step_seconds: float = 60.0,
    resources: Optional[Sequence[str]] = None,
    timestamps: bool = True,
) -> Trace:
    events = []
    for i, activity in enumerate(activities):
        attributes: Dict = {CONCEPT_NAME: activity}
        if timestamps:
            attributes[TIMESTAMP_KEY] = stamp(start_seconds + i * step_seconds)
        if resources is not None:
            attributes[RESOURCE_KEY] = resources[i]
        events.append(Event(attributes))
    return Trace(events, {CONCEPT_NAME: case_id})


def make_log(sequences: Iterable[Union[str, Sequence[str]]], step_seconds: float = 60.0) -> EventLog:
    """
    Log with one trace per sequence; a string stands for single-letter activities.

    Case ids are c0, c1, ...; trace i starts i hours after BASE_TIME.
    """
    traces = []
    for i, sequence in enumerate(sequences):
        activities = list(sequence)
        traces.append(make_trace(f"c{i}", activities, start_seconds=3600.0 * i, step_seconds=step_seconds))
    return EventLog(traces)


def make_net(
    places: Iterable[str],
    transitions: Dict[str, Optional[str]],
    arcs: Iterable[Tuple[str, str]],
    im: Dict[str, int],
    fm: Dict[str, int],
) -> AcceptingPetriNet:
    net = PetriNet(places, [Transition(t, label) for t, label in transitions.items()], arcs)
    return AcceptingPetriNet(net, Marking(im), Marking(fm))


def request_handling_net() -> AcceptingPetriNet:
    """
    Request-handling model with silent split, join and decision steps.

    register request; then check ticket in parallel with one of the two
    examinations; decide; then either reinitiate (back to the split) or a
    silent step followed by reject request or pay compensation.
    """
    places = ["start", "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "end"]
    transitions = {
        "t_register": "register request",
        "tau_split": None,
        "t_check": "check ticket",
        "t_thorough": "examine thoroughly",
        "t_casual": "examine casually",
        "tau_join": None,
        "t_decide": "decide",
        "t_reinitiate": "reinitiate request",
        "tau_decided": None,
        "t_reject": "reject request",
        "t_pay": "pay compensation",
    }
    arcs = [
        ("start", "t_register"),
        ("t_register", "p1"),
        ("p1", "tau_split"),
        ("tau_split", "p2"),
        ("tau_split", "p3"),
        ("p2", "t_check"),
        ("t_check", "p4"),
        ("p3", "t_thorough"),
        ("t_thorough", "p5"),
        ("p3", "t_casual"),
        ("t_casual", "p5"),
        ("p4", "tau_join"),
        ("p5", "tau_join"),
        ("tau_join", "p6"),
        ("p6", "t_decide"),
        ("t_decide", "p7"),
        ("p7", "t_reinitiate"),
        ("t_reinitiate", "p1"),
        ("p7", "tau_decided"),
        ("tau_decided", "p8"),
        ("p8", "t_reject"),
        ("t_reject", "end"),
        ("p8", "t_pay"),
        ("t_pay", "end"),
    ]
    return make_net(places, transitions, arcs, {"start": 1}, {"end": 1})


# Random instances


def random_sequences(
    rng: random.Random, alphabet: Sequence[str], count: int, max_length: int, min_length: int = 1
) -> List[Tuple[str, ...]]:
    return [
        tuple(rng.choice(alphabet) for _ in range(rng.randint(min_length, max_length)))
        for _ in range(count)
    ]


def random_log(rng: random.Random, traces: int = 8, max_length: int = 6) -> EventLog:
    """Log with typed attributes at every level, for round-trip checks."""
    alphabet = ["a", "b", "c", "d", "e"]
    resources = ["r1", "r2", "r3"]
    result = []
    for i in range(traces):
        events = []
        for j in range(rng.randint(0, max_length)):
            attributes: Dict = {
                CONCEPT_NAME: rng.choice(alphabet),
                TIMESTAMP_KEY: stamp(3600 * i + 60 * j + rng.randint(0, 59)),
                RESOURCE_KEY: rng.choice(resources),
            }
            if rng.random() < 0.5:
                attributes["cost"] = rng.randint(-100, 100)
            if rng.random() < 0.5:
                attributes["amount"] = round(rng.uniform(0, 1000), 3)
            if rng.random() < 0.3:
                attributes["urgent"] = rng.random() < 0.5
            events.append(Event(attributes))
        trace_attributes: Dict = {CONCEPT_NAME: f"case-{i}"}
        if rng.random() < 0.5:
            trace_attributes["channel"] = rng.choice(["web", "phone", "mail"])
        result.append(Trace(events, trace_attributes))
    return EventLog(
        result,
        attributes={"source": "generator", "seed": rng.randint(0, 1000)},
        classifiers=[Classifier("Activity", (CONCEPT_NAME,))],
    )


def random_structured_tree(rng: random.Random, labels: List[str], max_leaves: int = 5) -> ProcessTree:
    """Sequence/xor tree over distinct labels, consumed from `labels`."""
    budget = rng.randint(1, max_leaves)

    def build(leaves: int) -> ProcessTree:
        if leaves == 1:
            return ProcessTree.leaf(labels.pop(0))
        arity = rng.randint(2, min(3, leaves))
        cuts = sorted(rng.sample(range(1, leaves), arity - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [leaves])]
        children = [build(size) for size in sizes]
        if rng.random() < 0.5:
            return ProcessTree.sequence(*children)
        return ProcessTree.xor(*children)

    return build(budget)


def random_tree(rng: random.Random, max_leaves: int = 5) -> ProcessTree:
    """Tree over all four operators with distinct labels and occasional tau leaves."""
    labels = [chr(ord("a") + i) for i in range(max_leaves)]
    budget = rng.randint(1, max_leaves)

    def build(leaves: int) -> ProcessTree:
        if leaves == 1:
            if rng.random() < 0.15:
                return ProcessTree.tau()
            return ProcessTree.leaf(labels.pop(0))
        arity = rng.randint(2, min(3, leaves))
        cuts = sorted(rng.sample(range(1, leaves), arity - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [leaves])]
        children = [build(size) for size in sizes]
        operator = rng.choice(["seq", "xor", "and", "loop"])
        if operator == "seq":
            return ProcessTree.sequence(*children)
        if operator == "xor":
            return ProcessTree.xor(*children)
        if operator == "and":
            return ProcessTree.parallel(*children)
        return ProcessTree.loop(*children)

    return build(budget)


def random_state_machine(rng: random.Random, alphabet: Sequence[str] = ("a", "b", "c")) -> AcceptingPetriNet:
    """
    One-token net over at most five places.

    A chain p0 -> ... -> pn guarantees the final marking is reachable; extra
    transitions add choices, loops, silent steps and duplicate labels.
    """
    size = rng.randint(2, 5)
    places = [f"p{i}" for i in range(size)]
    transitions: Dict[str, Optional[str]] = {}
    arcs = []

    def label() -> Optional[str]:
        return None if rng.random() < 0.25 else rng.choice(alphabet)

    for i in range(size - 1):
        transitions[f"c{i}"] = label()
        arcs += [(places[i], f"c{i}"), (f"c{i}", places[i + 1])]
    for j in range(rng.randint(0, 4)):
        source, target = rng.choice(places), rng.choice(places)
        transitions[f"x{j}"] = label()
        arcs += [(source, f"x{j}"), (f"x{j}", target)]
    return make_net(places, transitions, arcs, {places[0]: 1}, {places[-1]: 1})
