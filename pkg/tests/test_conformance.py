"""
Tests for token-based replay and alignments.
"""

import heapq
import random

import pytest

from src.conformance import (
    SKIP,
    AlignmentCosts,
    AlignmentSearch,
    Move,
    TokenReplayer,
    align,
    align_trace,
    format_alignment,
    token_replay,
)
from src.errors import DuplicateLabelError, NoFinalMarkingPathError, SearchBudgetExceededError
from src.eventlog import trace_activities
from src.ingest import import_xes
from src.petrinet import CompiledNet, Marking, fire, flower_model
from tests.helpers import REQUEST_TRACE, make_log, make_net, random_sequences, random_state_machine


def dijkstra_cost(anet, activities, log_move=10, model_move=10):
    """Optimal alignment cost by uniform-cost search over (marking, position)."""
    compiled = CompiledNet(anet)
    start = (compiled.initial, 0)
    best = {start: 0}
    heap = [(0, 0, start)]
    tick = 1
    while heap:
        g, _, state = heapq.heappop(heap)
        if g > best[state]:
            continue
        marking, position = state
        if position == len(activities) and marking == compiled.final:
            return g
        steps = []
        if position < len(activities):
            steps.append(((marking, position + 1), log_move))
        for t in compiled.enabled(marking):
            successor = compiled.fire(marking, t)
            label = compiled.labels[t]
            if label is None:
                steps.append(((successor, position), 0))
            else:
                steps.append(((successor, position), model_move))
                if position < len(activities) and label == activities[position]:
                    steps.append(((successor, position + 1), 0))
        for successor, cost in steps:
            if g + cost < best.get(successor, g + cost + 1):
                best[successor] = g + cost
                heapq.heappush(heap, (g + cost, tick, successor))
                tick += 1
    return None


def replay_moves(anet, alignment):
    """Fire the model side of an alignment; return the final marking."""
    marking = anet.im
    for transition in alignment.transitions:
        if transition is not None:
            marking = fire(anet, marking, transition)
    return marking


class TestTokenReplay:
    """Test suite for token-based replay."""

    def test_fitting_trace(self, alpha_net):
        """Test a trace of the net replays without missing or remaining tokens."""
        result = TokenReplayer(alpha_net).replay(["a", "b", "d"])
        assert (result.produced, result.consumed, result.missing, result.remaining) == (4, 4, 0, 0)
        assert result.trace_fitness == 1.0
        assert result.reached_final
        assert result.fired_sequence == ("a", "b", "d")

    def test_skipped_activity(self, alpha_net):
        """Test <a, d> misses one token and leaves one behind."""
        result = TokenReplayer(alpha_net).replay(["a", "d"])
        assert (result.produced, result.consumed, result.missing, result.remaining) == (3, 3, 1, 1)
        assert result.trace_fitness == pytest.approx(2 / 3)
        assert not result.reached_final
        assert not result.is_fit

    def test_unknown_activity(self, alpha_net):
        """Test an activity without a transition counts as one missing and one remaining token."""
        result = TokenReplayer(alpha_net).replay(["a", "x", "b", "d"])
        assert (result.produced, result.consumed, result.missing, result.remaining) == (5, 5, 1, 1)
        assert result.trace_fitness == pytest.approx(0.8)
        assert not result.reached_final

    def test_silent_transitions(self, request_net):
        """Test silent split, join and decision steps are fired on demand."""
        result = TokenReplayer(request_net).replay(REQUEST_TRACE)
        assert result.is_fit
        assert result.fired_sequence == (
            "t_register",
            "tau_split",
            "t_check",
            "t_thorough",
            "tau_join",
            "t_decide",
            "tau_decided",
            "t_reject",
        )

    @pytest.mark.parametrize("seed", range(100))
    def test_flower_model_fits_everything(self, seed):
        """Test every log replays perfectly on the flower model of its own alphabet."""
        rng = random.Random(seed)
        log = make_log(random_sequences(rng, "abcdef", rng.randint(1, 20), 6))
        alphabet = sorted({activity for trace in log for activity in trace_activities(trace)})
        anet = flower_model(alphabet)
        assert all(r.trace_fitness == 1.0 for r in token_replay(log, anet))

    def test_duplicate_labels_rejected(self):
        """Test nets with two transitions sharing a label are refused."""
        arcs = [("p", "t1"), ("t1", "q"), ("p", "t2"), ("t2", "q")]
        anet = make_net(["p", "q"], {"t1": "a", "t2": "a"}, arcs, {"p": 1}, {"q": 1})
        with pytest.raises(DuplicateLabelError) as exc_info:
            TokenReplayer(anet)
        assert exc_info.value.transitions == ("t1", "t2")

    def test_results_follow_log_order(self, alpha_net):
        """Test one result per trace, shared between identical variants."""
        results = token_replay(make_log(["abd", "ad", "abd"]), alpha_net)
        assert len(results) == 3
        assert results[0] is results[2]
        assert results[1].missing == 1

    def test_empty_trace(self, alpha_net):
        """Test an empty trace leaves the initial token and misses the final one."""
        result = TokenReplayer(alpha_net).replay([])
        assert (result.produced, result.consumed, result.missing, result.remaining) == (1, 1, 1, 1)
        assert result.trace_fitness == 0.0


class TestAlignments:
    """Test suite for optimal alignments."""

    def test_fitting_trace(self, request_net):
        """Test the running example trace aligns at cost 0 with silent moves interleaved."""
        alignment = align_trace(REQUEST_TRACE, request_net)
        assert alignment.cost == 0
        assert alignment.fitness == 1.0
        assert format_alignment(alignment) == (
            "[('register request', 'register request'), ('>>', tau), "
            "('check ticket', 'check ticket'), ('examine thoroughly', 'examine thoroughly'), "
            "('>>', tau), ('decide', 'decide'), ('>>', tau), ('reject request', 'reject request')]"
        )

    def test_model_move(self, alpha_net):
        """Test <a, d> needs one model move on b."""
        alignment = align_trace(["a", "d"], alpha_net)
        assert alignment.cost == 10
        assert alignment.moves == (Move("a", "a"), Move(SKIP, "b"), Move("d", "d"))
        assert alignment.transitions == ("a", "b", "d")
        assert alignment.fitness == pytest.approx(1 - 10 / 50)

    def test_log_move(self, alpha_net):
        """Test an unknown activity becomes a log move."""
        alignment = align_trace(["a", "x", "b", "d"], alpha_net)
        assert alignment.cost == 10
        assert Move("x", SKIP) in alignment.moves
        assert alignment.transitions[alignment.moves.index(Move("x", SKIP))] is None

    @pytest.mark.parametrize("heuristic", [True, False])
    def test_silent_move_before_log_move(self, heuristic):
        """Test equal-cost moves are ordered sync, silent, model, log."""
        anet = make_net(
            ["p0", "p1", "p2"],
            {"tau": None, "t_a": "a"},
            [("p0", "tau"), ("tau", "p1"), ("p1", "t_a"), ("t_a", "p2")],
            {"p0": 1},
            {"p2": 1},
        )
        alignment = align_trace(["x", "a"], anet, heuristic=heuristic)
        assert alignment.cost == 10
        assert alignment.moves == (Move(SKIP, None), Move("x", SKIP), Move("a", "a"))
        assert alignment.transitions == ("tau", None, "t_a")

    def test_empty_trace(self, alpha_net):
        """Test an empty trace costs the cheapest model-only path."""
        search = AlignmentSearch(alpha_net)
        assert search.model_only_cost() == 30
        alignment = search.align([])
        assert alignment.cost == 30
        assert alignment.fitness == 0.0

    def test_unreachable_final_marking(self):
        """Test a net whose final marking cannot be reached raises NoFinalMarkingPathError."""
        anet = make_net(["p", "q"], {"t": "a"}, [("p", "t"), ("t", "p")], {"p": 1}, {"q": 1})
        with pytest.raises(NoFinalMarkingPathError):
            align_trace(["a"], anet)

    def test_search_budget(self, request_net):
        """Test a tiny budget raises SearchBudgetExceededError."""
        with pytest.raises(SearchBudgetExceededError) as exc_info:
            align_trace(REQUEST_TRACE, request_net, search_budget=1)
        assert exc_info.value.budget == 1

    def test_variants_share_results(self, abd_acd_log, alpha_net):
        """Test identical variants are aligned once and results follow log order."""
        alignments = align(abd_acd_log, alpha_net)
        assert len(alignments) == 5
        assert alignments[0] is alignments[1]
        assert alignments[2] is alignments[4]
        assert all(a.is_fit for a in alignments)

    def test_workers(self, rng, alpha_net):
        """Test threaded alignment gives the same costs as sequential."""
        log = make_log(random_sequences(rng, "abcdx", 30, 5))
        sequential = [a.cost for a in align(log, alpha_net)]
        assert [a.cost for a in align(log, alpha_net, workers=4)] == sequential

    def test_zero_cost_means_replay_fit(self, fixtures_dir, request_net):
        """Test cost-0 alignments replay with no missing or remaining tokens."""
        log = import_xes((fixtures_dir / "running_example.xes").read_bytes())
        for alignment, result in zip(align(log, request_net), token_replay(log, request_net)):
            assert alignment.is_fit
            assert result.is_fit

    @pytest.mark.parametrize("seed", range(200))
    def test_optimal_against_uniform_cost_search(self, seed):
        """Test A* cost equals exhaustive search on small random nets."""
        rng = random.Random(seed)
        anet = random_state_machine(rng)
        trace = random_sequences(rng, "abcd", 1, 4, min_length=0)[0]
        alignment = align_trace(trace, anet)
        assert alignment.cost == dijkstra_cost(anet, trace)

        # Model side replays from im to fm; log side is the trace
        assert replay_moves(anet, alignment) == anet.fm
        assert tuple(m.log for m in alignment.moves if m.log != SKIP) == trace

        assert align_trace(trace, anet, heuristic=False).cost == alignment.cost
        tripled = AlignmentCosts(log_move=30, visible_model_move=30)
        assert align_trace(trace, anet, costs=tripled).cost == 3 * alignment.cost

        search = AlignmentSearch(anet)
        assert alignment.cost <= len(trace) * 10 + search.model_only_cost()
        assert 0.0 <= alignment.fitness <= 1.0

    def test_costs_validated(self):
        """Test non-positive costs are rejected."""
        with pytest.raises(ValueError):
            AlignmentCosts(log_move=0)

    def test_initial_marking_is_final(self):
        """Test a net with im == fm aligns the empty trace at cost 0."""
        anet = make_net(["p"], {"t": "a"}, [("p", "t"), ("t", "p")], {"p": 1}, {"p": 1})
        alignment = align_trace([], anet)
        assert alignment.moves == ()
        assert alignment.cost == 0
        assert replay_moves(anet, alignment) == Marking({"p": 1})
