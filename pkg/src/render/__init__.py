"""DOT rendering of graphs, nets, trees, transition systems and social networks."""

from src.render.dot import DotDocument, DotKind, RenderOptions, quote, to_dot
from src.render.grammar import DotGraph, check_dot

__all__ = [
    "DotDocument",
    "DotGraph",
    "DotKind",
    "RenderOptions",
    "check_dot",
    "quote",
    "to_dot",
]
