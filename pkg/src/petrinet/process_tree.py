"""
Process trees: block-structured models over sequence, exclusive choice,
parallel and loop operators.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from src.errors import MalformedTreeError


class Operator(str, Enum):
    SEQUENCE = "seq"
    XOR = "xor"
    PARALLEL = "and"
    LOOP = "loop"


_SYMBOLS = {
    Operator.SEQUENCE: "->",
    Operator.XOR: "X",
    Operator.PARALLEL: "+",
    Operator.LOOP: "*",
}


@dataclass(frozen=True)
class ProcessTree:
    """
    A process tree node.

    A node is an operator node (operator set, children non-empty), a leaf
    (label set) or a tau leaf (neither set). Construction does not validate;
    the builder classmethods and `validate` do.

    Attributes:
        operator: Operator of an inner node
        label: Activity of a leaf
        children: Ordered children; for loops the first child is the do-part
    """

    operator: Optional[Operator] = None
    label: Optional[str] = None
    children: Tuple["ProcessTree", ...] = ()

    @classmethod
    def leaf(cls, label: str) -> "ProcessTree":
        return cls(label=label)

    @classmethod
    def tau(cls) -> "ProcessTree":
        return cls()

    @classmethod
    def sequence(cls, *children: "ProcessTree") -> "ProcessTree":
        return cls(operator=Operator.SEQUENCE, children=tuple(children)).validate()

    @classmethod
    def xor(cls, *children: "ProcessTree") -> "ProcessTree":
        return cls(operator=Operator.XOR, children=tuple(children)).validate()

    @classmethod
    def parallel(cls, *children: "ProcessTree") -> "ProcessTree":
        return cls(operator=Operator.PARALLEL, children=tuple(children)).validate()

    @classmethod
    def loop(cls, *children: "ProcessTree") -> "ProcessTree":
        return cls(operator=Operator.LOOP, children=tuple(children)).validate()

    @property
    def is_leaf(self) -> bool:
        return self.operator is None

    @property
    def is_tau(self) -> bool:
        return self.operator is None and self.label is None

    def validate(self) -> "ProcessTree":
        """
        Check arity rules on the whole subtree.

        Returns:
            self, for chaining

        Raises:
            MalformedTreeError: On a leaf with children, an operator without
                children or a loop with fewer than two children
        """
        stack = [self]
        while stack:
            node = stack.pop()
            if node.operator is None:
                if node.children:
                    raise MalformedTreeError("Leaf nodes cannot have children")
                continue
            if node.label is not None:
                raise MalformedTreeError(f"Operator node '{node.operator.value}' cannot carry a label")
            if not node.children:
                raise MalformedTreeError(f"Operator '{node.operator.value}' needs at least one child")
            if node.operator is Operator.LOOP and len(node.children) < 2:
                raise MalformedTreeError("Loop needs a do-part and at least one redo-part")
            stack.extend(node.children)
        return self

    def leaves(self) -> List["ProcessTree"]:
        """Leaves in pre-order, tau leaves included."""
        if self.is_leaf:
            return [self]
        result: List[ProcessTree] = []
        for child in self.children:
            result.extend(child.leaves())
        return result

    def activities(self) -> List[str]:
        return [leaf.label for leaf in self.leaves() if leaf.label is not None]

    def __str__(self) -> str:
        if self.is_tau:
            return "tau"
        if self.is_leaf:
            return f"'{self.label}'"
        inner = ", ".join(str(child) for child in self.children)
        return f"{_SYMBOLS[self.operator]}( {inner} )"


Word = Tuple[str, ...]


def _interleavings(left: Word, right: Word) -> Set[Word]:
    if not left:
        return {right}
    if not right:
        return {left}
    return {(left[0],) + w for w in _interleavings(left[1:], right)} | {
        (right[0],) + w for w in _interleavings(left, right[1:])
    }


def _concatenate(parts: Iterable[Set[Word]], limit: Optional[int] = None) -> Set[Word]:
    result: Set[Word] = {()}
    for part in parts:
        result = {a + b for a, b in product(result, part) if _fits(a, b, limit)}
    return result


def _fits(left: Word, right: Word, limit: Optional[int]) -> bool:
    return limit is None or len(left) + len(right) <= limit


def bounded_language(
    tree: ProcessTree, loop_unrolling: int = 2, max_length: Optional[int] = None
) -> FrozenSet[Word]:
    """
    Visible-label sequences of a tree.

    Loops are unrolled at most `loop_unrolling` times through a redo-part, so
    the result is finite. Used as an independent oracle for net construction.

    Args:
        tree: Well-formed process tree
        loop_unrolling: Maximum number of redo iterations per loop
        max_length: Leave out words longer than this; sub-words are pruned
            while building, which keeps parallel blocks tractable

    Returns:
        Set of activity tuples
    """
    tree.validate()
    return frozenset(_language(tree, loop_unrolling, max_length))


def _language(node: ProcessTree, k: int, limit: Optional[int]) -> Set[Word]:
    if node.is_tau:
        return {()}
    if node.is_leaf:
        return {(node.label,)} if limit is None or limit >= 1 else set()

    child_languages = [_language(child, k, limit) for child in node.children]
    if node.operator is Operator.SEQUENCE:
        return _concatenate(child_languages, limit)
    if node.operator is Operator.XOR:
        return set().union(*child_languages)
    if node.operator is Operator.PARALLEL:
        result: Set[Word] = {()}
        for language in child_languages:
            result = {
                w
                for a, b in product(result, language)
                if _fits(a, b, limit)
                for w in _interleavings(a, b)
            }
        return result

    do, redos = child_languages[0], set().union(*child_languages[1:])
    result = set(do)
    current = set(do)
    for _ in range(k):
        current = _concatenate([current, redos, do], limit)
        result |= current
    return result
