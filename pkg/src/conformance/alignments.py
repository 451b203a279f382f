"""
Optimal alignments between traces and accepting Petri nets.

The search runs A* over the synchronous product of the net and the trace.
A state is (marking, trace position); moves are synchronous (label matches
the next event), model-only (silent or visible transition) and log-only.
The heuristic charges one log move for every remaining event whose label no
transition carries, which never overestimates. At equal f-score the search
prefers states reached by synchronous, then silent, then model, then log
moves, then the lexicographically smaller transition id.
"""

import heapq
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import count
from typing import Dict, List, Literal, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.config import DEFAULT_SEARCH_BUDGET
from src.errors import NoFinalMarkingPathError, SearchBudgetExceededError
from src.eventlog.model import DEFAULT_CLASSIFIER, Classifier, EventLog
from src.petrinet.model import AcceptingPetriNet
from src.petrinet.semantics import CompiledNet, Vector

logger = logging.getLogger(__name__)

SKIP = ">>"

_SYNC, _SILENT, _MODEL, _LOG = 0, 1, 2, 3

State = Tuple[Vector, int]


class AlignmentCosts(BaseModel):
    """
    Move costs. Synchronous and silent moves are free.

    Attributes:
        log_move: Cost of an event the model does not follow
        visible_model_move: Cost of a visible transition without a matching event
    """

    model_config = ConfigDict(frozen=True)

    log_move: int = Field(default=10, gt=0)
    visible_model_move: int = Field(default=10, gt=0)
    silent_model_move: Literal[0] = 0
    synchronous_move: Literal[0] = 0


class Move(NamedTuple):
    """
    One alignment step.

    `log` is an activity or '>>'; `model` is an activity, None for a silent
    transition, or '>>'.
    """

    log: str
    model: Optional[str]


@dataclass(frozen=True)
class Alignment:
    """
    Result of aligning one trace.

    Attributes:
        moves: Alignment steps in order
        cost: Total move cost
        fitness: 1 - cost / (all-log-moves cost + cheapest model-only path)
        optimal: True when the search terminated normally
        transitions: Fired transition id per move (None for log moves)
        expanded: States expanded by the search
    """

    moves: Tuple[Move, ...]
    cost: int
    fitness: float
    optimal: bool
    transitions: Tuple[Optional[str], ...]
    expanded: int

    @property
    def is_fit(self) -> bool:
        return self.cost == 0


class AlignmentSearch:
    """
    Aligns activity sequences against one net.

    Attributes:
        anet: The net
        costs: Move costs
        heuristic: Use the A* heuristic; False gives plain Dijkstra
        search_budget: Maximum expanded states per sequence
    """

    def __init__(
        self,
        anet: AcceptingPetriNet,
        costs: Optional[AlignmentCosts] = None,
        heuristic: bool = True,
        search_budget: int = DEFAULT_SEARCH_BUDGET,
    ):
        self.anet = anet
        self.costs = costs or AlignmentCosts()
        self.heuristic = heuristic
        self.search_budget = search_budget
        self.compiled = CompiledNet(anet)
        self._model_only_cost: Optional[int] = None

    def model_only_cost(self) -> int:
        """
        Cost of the cheapest firing sequence from im to fm.

        Raises:
            NoFinalMarkingPathError: If fm is unreachable
        """
        if self._model_only_cost is None:
            _, cost, _ = self._search(())
            self._model_only_cost = cost
        return self._model_only_cost

    def align(self, activities: Sequence[str]) -> Alignment:
        """
        Compute an optimal alignment.

        Raises:
            NoFinalMarkingPathError: If fm is unreachable
            SearchBudgetExceededError: If the search expands too many states
        """
        activities = tuple(activities)
        path, cost, expanded = self._search(activities)
        worst = len(activities) * self.costs.log_move + self.model_only_cost()
        fitness = max(0.0, 1.0 - cost / worst) if worst else 1.0

        moves: List[Move] = []
        transitions: List[Optional[str]] = []
        position = 0
        for kind, transition in path:
            if kind == _LOG:
                moves.append(Move(activities[position], SKIP))
                transitions.append(None)
                position += 1
                continue
            label = self.compiled.labels[transition]
            transitions.append(self.compiled.transition_ids[transition])
            if kind == _SYNC:
                moves.append(Move(activities[position], label))
                position += 1
            else:
                moves.append(Move(SKIP, label))

        logger.debug(f"[ALIGN] {len(activities)} events: cost {cost}, {expanded} states expanded")
        return Alignment(tuple(moves), cost, fitness, True, tuple(transitions), expanded)

    def _search(self, activities: Tuple[str, ...]) -> Tuple[List[Tuple[int, Optional[int]]], int, int]:
        compiled = self.compiled
        costs = self.costs
        length = len(activities)

        unmatched = [0] * (length + 1)
        for i in range(length - 1, -1, -1):
            unmatched[i] = unmatched[i + 1] + (activities[i] not in compiled.by_label)

        def h(position: int) -> int:
            return unmatched[position] * costs.log_move if self.heuristic else 0

        start: State = (compiled.initial, 0)
        best: Dict[State, int] = {start: 0}
        parent: Dict[State, Tuple[State, int, Optional[int]]] = {}
        closed = set()
        tiebreak = count()
        # Equal f: sync, silent, model, log, then transition id
        heap = [(h(0), _SYNC, "", next(tiebreak), start)]
        expanded = 0

        def push(state: State, successor: State, step: int, kind: int, transition: Optional[int]) -> None:
            if successor in closed:
                return
            g = best[state] + step
            if g < best.get(successor, g + 1):
                best[successor] = g
                parent[successor] = (state, kind, transition)
                tid = "" if transition is None else compiled.transition_ids[transition]
                heapq.heappush(heap, (g + h(successor[1]), kind, tid, next(tiebreak), successor))

        while heap:
            f, _, _, _, state = heapq.heappop(heap)
            if state in closed or f != best[state] + h(state[1]):
                continue
            closed.add(state)
            marking, position = state

            if position == length and marking == compiled.final:
                path: List[Tuple[int, Optional[int]]] = []
                while state in parent:
                    state, kind, transition = parent[state]
                    path.append((kind, transition))
                path.reverse()
                return path, best[(marking, position)], expanded

            expanded += 1
            if expanded > self.search_budget:
                raise SearchBudgetExceededError(self.search_budget)

            if position < length:
                for transition in compiled.by_label.get(activities[position], ()):
                    if compiled.is_enabled(marking, transition):
                        successor = (compiled.fire(marking, transition), position + 1)
                        push(state, successor, 0, _SYNC, transition)
                push(state, (marking, position + 1), costs.log_move, _LOG, None)

            for transition in compiled.enabled(marking):
                successor = (compiled.fire(marking, transition), position)
                if compiled.labels[transition] is None:
                    push(state, successor, 0, _SILENT, transition)
                else:
                    push(state, successor, costs.visible_model_move, _MODEL, transition)

        raise NoFinalMarkingPathError("The final marking is not reachable from the initial marking")


def align_trace(
    activities: Sequence[str],
    anet: AcceptingPetriNet,
    costs: Optional[AlignmentCosts] = None,
    heuristic: bool = True,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> Alignment:
    """Align a single activity sequence."""
    return AlignmentSearch(anet, costs, heuristic, search_budget).align(activities)


def align(
    log: EventLog,
    anet: AcceptingPetriNet,
    costs: Optional[AlignmentCosts] = None,
    heuristic: bool = True,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
    workers: int = 1,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> List[Alignment]:
    """
    Align every trace of a log.

    Each distinct variant is aligned once; with `workers` > 1 variants are
    aligned concurrently. Results follow log order.

    Args:
        log: Event log
        anet: Accepting Petri net
        costs: Move costs (defaults 10/10/0/0)
        heuristic: False switches to Dijkstra
        search_budget: Maximum expanded states per variant
        workers: Number of worker threads
        classifier: Activity classifier

    Returns:
        One Alignment per trace; identical variants share one object

    Raises:
        NoFinalMarkingPathError: If fm is unreachable
        SearchBudgetExceededError: If a variant exceeds the budget
    """
    search = AlignmentSearch(anet, costs, heuristic, search_budget)
    sequences = log.variants(classifier)
    unique = list(dict.fromkeys(sequences))
    search.model_only_cost()

    if workers > 1 and len(unique) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            aligned = list(pool.map(search.align, unique))
    else:
        aligned = [search.align(sequence) for sequence in unique]

    by_variant = dict(zip(unique, aligned))
    fit = sum(1 for a in aligned if a.is_fit)
    logger.info(f"[ALIGN] {len(unique)} variants aligned, {fit} with cost 0")
    return [by_variant[sequence] for sequence in sequences]


def _render_part(part: Optional[str]) -> str:
    return "tau" if part is None else repr(part)


def format_alignment(alignment: Alignment) -> str:
    """Move list in the form [('a', 'a'), ('>>', tau), ...]."""
    return "[" + ", ".join(
        f"({_render_part(m.log)}, {_render_part(m.model)})" for m in alignment.moves
    ) + "]"
