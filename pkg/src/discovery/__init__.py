"""Process discovery: directly-follows graphs, Alpha(+) and IMDF."""

from src.discovery.alpha import (
    AlphaVariant,
    Footprint,
    Relation,
    discover_alpha,
    maximal_pairs,
)
from src.discovery.dfg import DirectlyFollowsGraph, discover_dfg
from src.discovery.factory import VARIANTS, discover, resolve_parameters
from src.discovery.imdf import InductiveMiner, discover_imdf

__all__ = [
    "VARIANTS",
    "AlphaVariant",
    "DirectlyFollowsGraph",
    "Footprint",
    "InductiveMiner",
    "Relation",
    "discover",
    "discover_alpha",
    "discover_dfg",
    "discover_imdf",
    "maximal_pairs",
    "resolve_parameters",
]
