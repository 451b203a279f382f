"""Conformance checking: token-based replay and optimal alignments."""

from src.conformance.alignments import (
    SKIP,
    Alignment,
    AlignmentCosts,
    AlignmentSearch,
    Move,
    align,
    align_trace,
    format_alignment,
)
from src.conformance.token_replay import ReplayResult, TokenReplayer, replay_fitness, token_replay

__all__ = [
    "SKIP",
    "Alignment",
    "AlignmentCosts",
    "AlignmentSearch",
    "Move",
    "ReplayResult",
    "TokenReplayer",
    "align",
    "align_trace",
    "format_alignment",
    "replay_fitness",
    "token_replay",
]
