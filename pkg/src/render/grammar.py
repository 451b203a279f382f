"""
Minimal DOT grammar checker.

Covers the subset the renderer emits plus the common DOT forms: optional
`strict`, graph/digraph, statements separated by optional semicolons, node,
edge and attribute statements, `ID = ID` assignments, subgraphs, quoted
strings, numerals, HTML strings and comments. Edge operators must match the
graph type.
"""

import re
from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple

from src.errors import DotSyntaxError

_KEYWORDS = {"strict", "graph", "digraph", "node", "edge", "subgraph"}
_IDENT = re.compile(r"[A-Za-z_\u0080-\uffff][A-Za-z0-9_\u0080-\uffff]*")
_NUMERAL = re.compile(r"-?(\.[0-9]+|[0-9]+(\.[0-9]*)?)")
_SPACE = re.compile(r"\s+|//[^\n]*|/\*.*?\*/|^#[^\n]*", re.DOTALL | re.MULTILINE)
_PUNCTUATION = ("->", "--", "{", "}", "[", "]", "=", ";", ",", ":")


@dataclass
class DotGraph:
    """What a successful check found."""

    directed: bool
    name: Optional[str]
    nodes: Set[str] = field(default_factory=set)
    edges: List[Tuple[str, str]] = field(default_factory=list)


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    position: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    while i < len(text):
        space = _SPACE.match(text, i)
        if space and space.end() > i:
            i = space.end()
            continue
        if text.startswith("/*", i):
            raise DotSyntaxError("unterminated comment", i)
        if text[i] == '"':
            j = i + 1
            while j < len(text) and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            if j >= len(text):
                raise DotSyntaxError("unterminated string", i)
            tokens.append(_Token("id", text[i + 1 : j].replace('\\"', '"'), i))
            i = j + 1
            continue
        if text[i] == "<":
            depth, j = 0, i
            while j < len(text):
                if text[j] == "<":
                    depth += 1
                elif text[j] == ">":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if depth:
                raise DotSyntaxError("unterminated HTML string", i)
            tokens.append(_Token("id", text[i + 1 : j], i))
            i = j + 1
            continue
        punctuation = next((p for p in _PUNCTUATION if text.startswith(p, i)), None)
        if punctuation:
            tokens.append(_Token(punctuation, punctuation, i))
            i += len(punctuation)
            continue
        for pattern in (_NUMERAL, _IDENT):
            match = pattern.match(text, i)
            if match:
                word = match.group()
                kind = word.lower() if word.lower() in _KEYWORDS else "id"
                tokens.append(_Token(kind, word, i))
                i = match.end()
                break
        else:
            raise DotSyntaxError(f"unexpected character {text[i]!r}", i)
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token]):
        self.tokens = tokens
        self.index = 0
        self.graph: Optional[DotGraph] = None

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def accept(self, kind: str) -> Optional[_Token]:
        if self.current.kind == kind:
            token = self.current
            self.index += 1
            return token
        return None

    def expect(self, kind: str) -> _Token:
        token = self.accept(kind)
        if token is None:
            shown = self.current.value or "end of input"
            raise DotSyntaxError(f"expected '{kind}', found '{shown}'", self.current.position)
        return token

    def parse(self) -> DotGraph:
        self.accept("strict")
        if self.accept("digraph"):
            directed = True
        else:
            self.expect("graph")
            directed = False
        name = self.accept("id")
        self.graph = DotGraph(directed=directed, name=name.value if name else None)
        self.expect("{")
        self.statements()
        self.expect("}")
        self.expect("eof")
        return self.graph

    def statements(self) -> None:
        while self.current.kind not in ("}", "eof"):
            self.statement()
            self.accept(";")

    def statement(self) -> None:
        kind = self.current.kind
        if kind in ("graph", "node", "edge"):
            self.index += 1
            self.attribute_lists(required=True)
            return
        if kind == "id" and self.tokens[self.index + 1].kind == "=":
            self.index += 2
            self.expect("id")
            return
        members = self.operand()
        while self.current.kind in ("->", "--"):
            operator = self.current
            expected = "->" if self.graph.directed else "--"
            if operator.kind != expected:
                graph_type = "digraph" if self.graph.directed else "graph"
                raise DotSyntaxError(f"edge operator '{operator.kind}' in a {graph_type}", operator.position)
            self.index += 1
            targets = self.operand()
            self.graph.edges.extend((s, t) for s in members for t in targets)
            members = targets
        self.attribute_lists(required=False)

    def operand(self) -> List[str]:
        if self.current.kind in ("subgraph", "{"):
            return self.subgraph()
        node = self.expect("id").value
        if self.accept(":"):
            self.expect("id")
            if self.accept(":"):
                self.expect("id")
        self.graph.nodes.add(node)
        return [node]

    def subgraph(self) -> List[str]:
        if self.accept("subgraph"):
            self.accept("id")
        before = set(self.graph.nodes)
        self.expect("{")
        self.statements()
        self.expect("}")
        return sorted(self.graph.nodes - before)

    def attribute_lists(self, required: bool) -> None:
        if required and self.current.kind != "[":
            self.expect("[")
        while self.accept("["):
            while not self.accept("]"):
                self.expect("id")
                self.expect("=")
                self.expect("id")
                self.accept(",") or self.accept(";")


def check_dot(text: str) -> DotGraph:
    """
    Check DOT text against the grammar.

    Returns:
        DotGraph with the graph type, name, node ids and edges

    Raises:
        DotSyntaxError: With the character offset of the first problem
    """
    return _Parser(_tokenize(text)).parse()
