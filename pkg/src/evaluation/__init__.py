"""Model quality: fitness, precision, generalization and simplicity."""

from src.evaluation.metrics import (
    FitnessMethod,
    FitnessResult,
    degree_census,
    evaluate_fitness,
    evaluate_generalization,
    evaluate_precision,
    evaluate_simplicity,
)
from src.evaluation.report import QualityReport, evaluate

__all__ = [
    "FitnessMethod",
    "FitnessResult",
    "QualityReport",
    "degree_census",
    "evaluate",
    "evaluate_fitness",
    "evaluate_generalization",
    "evaluate_precision",
    "evaluate_simplicity",
]
