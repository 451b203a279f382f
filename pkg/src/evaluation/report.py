"""Combined quality report over the four metrics."""

import logging
from typing import Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from src.config import DEFAULT_SEARCH_BUDGET, DEFAULT_SILENT_DEPTH
from src.conformance.alignments import AlignmentCosts
from src.eventlog.model import DEFAULT_CLASSIFIER, Classifier, EventLog
from src.evaluation.metrics import (
    FitnessMethod,
    FitnessResult,
    evaluate_fitness,
    evaluate_generalization,
    evaluate_precision,
    evaluate_simplicity,
)
from src.petrinet.model import AcceptingPetriNet

logger = logging.getLogger(__name__)


class QualityReport(BaseModel):
    """Fitness, precision, generalization and simplicity of one model against one log."""

    model_config = ConfigDict(frozen=True)

    fitness: FitnessResult
    precision: float = Field(ge=0.0, le=1.0)
    generalization: float = Field(ge=0.0, le=1.0)
    simplicity: float = Field(ge=0.0, le=1.0)

    def flat(self) -> Dict[str, Union[str, float]]:
        """Flat key-value view, keys in report order."""
        return {
            "fitness.average_trace_fitness": self.fitness.average_trace_fitness,
            "fitness.perc_fit_traces": self.fitness.perc_fit_traces,
            "fitness.method": self.fitness.method.value,
            "precision": self.precision,
            "generalization": self.generalization,
            "simplicity": self.simplicity,
        }


def evaluate(
    log: EventLog,
    anet: AcceptingPetriNet,
    method: FitnessMethod = FitnessMethod.TOKEN,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
    costs: Optional[AlignmentCosts] = None,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
    workers: int = 1,
    classifier: Classifier = DEFAULT_CLASSIFIER,
) -> QualityReport:
    """
    Compute all four quality dimensions.

    Args:
        log: Event log
        anet: Accepting Petri net
        method: Fitness technique, "token" or "alignment"
        silent_depth: Silent BFS depth for replay-based metrics
        costs: Alignment costs (alignment fitness only)
        search_budget: Alignment state budget
        workers: Alignment worker threads
        classifier: Activity classifier

    Returns:
        QualityReport

    Raises:
        DuplicateLabelError: Precision and generalization need unique labels
        EmptyNetError: If the net has no nodes
    """
    report = QualityReport(
        fitness=evaluate_fitness(
            log, anet, method, silent_depth, costs, search_budget, workers, classifier
        ),
        precision=evaluate_precision(log, anet, silent_depth, classifier),
        generalization=evaluate_generalization(log, anet, silent_depth, classifier),
        simplicity=evaluate_simplicity(anet),
    )
    logger.info(f"[EVALUATE] {report.flat()}")
    return report
