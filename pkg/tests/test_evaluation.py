"""
Tests for the quality metrics and the combined report.
"""

import math
import random

import pytest

from src.discovery import discover_alpha, discover_imdf
from src.errors import DuplicateLabelError, EmptyNetError
from src.eventlog import EventLog
from src.evaluation import (
    FitnessMethod,
    QualityReport,
    degree_census,
    evaluate,
    evaluate_fitness,
    evaluate_generalization,
    evaluate_precision,
    evaluate_simplicity,
)
from src.petrinet import AcceptingPetriNet, Marking, PetriNet, flower_model, tree_to_petri
from tests.helpers import make_log, make_net, random_log


@pytest.fixture
def self_loop_net():
    """One place p marked initially and finally, with a- and b-labelled self-loops."""
    arcs = [("p", "t1"), ("t1", "p"), ("p", "t2"), ("t2", "p")]
    return make_net(["p"], {"t1": "a", "t2": "b"}, arcs, {"p": 1}, {"p": 1})


class TestFitness:
    """Test suite for log-level fitness."""

    def test_perfect(self, abd_acd_log, alpha_net):
        """Test a log replaying perfectly scores 1.0 and 100 %."""
        result = evaluate_fitness(abd_acd_log, alpha_net)
        assert result.average_trace_fitness == 1.0
        assert result.perc_fit_traces == 100.0
        assert result.method is FitnessMethod.TOKEN

    def test_token_average(self, alpha_net):
        """Test the token average over a fitting and a deviating trace."""
        result = evaluate_fitness(make_log(["abd", "ad"]), alpha_net)
        assert result.average_trace_fitness == pytest.approx((1 + 2 / 3) / 2)
        assert result.perc_fit_traces == 50.0

    def test_alignment_average(self, alpha_net):
        """Test alignment fitness uses the normalized alignment cost."""
        result = evaluate_fitness(make_log(["abd", "ad"]), alpha_net, method="alignment")
        assert result.average_trace_fitness == pytest.approx((1 + 0.8) / 2)
        assert result.perc_fit_traces == 50.0
        assert result.method is FitnessMethod.ALIGNMENT

    def test_empty_log(self, alpha_net):
        """Test an empty log scores 1.0."""
        result = evaluate_fitness(EventLog(), alpha_net)
        assert (result.average_trace_fitness, result.perc_fit_traces) == (1.0, 100.0)


class TestPrecision:
    """Test suite for escaping-edges precision."""

    def test_flower_model(self):
        """Test the flower model over a, b, c escapes at the start and after a."""
        precision = evaluate_precision(make_log(["ab", "ac"]), flower_model("abc"))
        assert precision == pytest.approx(1 - 4 / 9)

    def test_discovered_model(self):
        """Test the Alpha model allows only observed continuations."""
        log = make_log(["ab", "ac"])
        assert evaluate_precision(log, discover_alpha(log)) == 1.0

    def test_single_event_traces(self):
        """Test a log of one-event traces counts only the initial state."""
        log = make_log(["a", "b"])
        assert evaluate_precision(log, flower_model("abc")) == pytest.approx(2 / 3)

    def test_duplicate_labels(self):
        """Test precision requires unique labels."""
        anet = make_net(["p"], {"t1": "a", "t2": "a"}, [("p", "t1"), ("p", "t2")], {"p": 1}, {})
        with pytest.raises(DuplicateLabelError):
            evaluate_precision(make_log(["a"]), anet)


class TestGeneralization:
    """Test suite for generalization."""

    def test_execution_counts(self, self_loop_net):
        """Test 4 executions of a and 1 of b give 1 - (1/2 + 1) / 2."""
        assert evaluate_generalization(make_log(["aaaab"]), self_loop_net) == pytest.approx(0.25)

    def test_unexecuted_transitions(self, self_loop_net):
        """Test never-fired visible transitions count fully."""
        assert evaluate_generalization(EventLog(), self_loop_net) == 0.0

    def test_example(self, abd_acd_log, alpha_net):
        """Test the abd/acd log against its Alpha model."""
        penalty = 2 / math.sqrt(5) + 1 / math.sqrt(2) + 1 / math.sqrt(3)
        assert evaluate_generalization(abd_acd_log, alpha_net) == pytest.approx(1 - penalty / 4)


class TestSimplicity:
    """Test suite for simplicity."""

    def test_mean_degree_two(self, alpha_net):
        """Test a net with mean degree 2 scores 1.0."""
        assert sum(degree_census(alpha_net).values()) == 16
        assert evaluate_simplicity(alpha_net) == 1.0

    def test_mean_degree_three(self):
        """Test a net with mean degree 3 scores 0.5."""
        anet = make_net(
            ["p", "q"],
            {"t1": "a", "t2": "b"},
            [("p", "t1"), ("p", "t2"), ("q", "t1"), ("q", "t2"), ("t1", "p"), ("t2", "q")],
            {"p": 1},
            {"q": 1},
        )
        assert degree_census(anet) == {"p": 3, "q": 3, "t1": 3, "t2": 3}
        assert evaluate_simplicity(anet) == 0.5

    def test_empty_net(self):
        """Test simplicity is undefined without nodes."""
        with pytest.raises(EmptyNetError):
            evaluate_simplicity(AcceptingPetriNet(PetriNet([], [], []), Marking(), Marking()))


class TestReport:
    """Test suite for the combined quality report."""

    def test_flat_view(self, abd_acd_log, alpha_net):
        """Test the flat view lists all values in report order."""
        report = evaluate(abd_acd_log, alpha_net)
        flat = report.flat()
        assert list(flat) == [
            "fitness.average_trace_fitness",
            "fitness.perc_fit_traces",
            "fitness.method",
            "precision",
            "generalization",
            "simplicity",
        ]
        assert flat["fitness.method"] == "token"
        assert flat["precision"] == 1.0
        assert flat["simplicity"] == 1.0

    @pytest.mark.parametrize("seed", range(100))
    def test_random_pairs_stay_in_range(self, seed):
        """Test every metric lies in [0, 1] for random logs against other logs' models."""
        rng = random.Random(seed)
        anet = tree_to_petri(discover_imdf(random_log(rng)))
        log = random_log(rng)
        method = FitnessMethod.ALIGNMENT if seed % 5 == 0 else FitnessMethod.TOKEN
        report = evaluate(log, anet, method=method)
        assert isinstance(report, QualityReport)
        for key, value in report.flat().items():
            if key == "fitness.method":
                continue
            upper = 100.0 if key == "fitness.perc_fit_traces" else 1.0
            assert 0.0 <= value <= upper
