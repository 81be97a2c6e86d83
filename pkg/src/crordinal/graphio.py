"""Edge-list and DOT-subset reading/writing for :class:`FiniteGraph`.

Edge list: one ``u v`` pair per line, a lone label declares an isolated
vertex, ``#`` starts a comment.  DOT: ``graph NAME { a -- b; c; }`` with
optional double-quoted ids and no attributes.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, List, Tuple

from .finite import FiniteGraph

__all__ = ["GraphParseError", "parse_edge_list", "parse_dot", "read_graph", "format_edge_list", "format_dot"]


class GraphParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class _Builder:
    def __init__(self):
        self.index: Dict[str, int] = {}
        self.edges: List[Tuple[int, int]] = []

    def vertex(self, label: str) -> int:
        if label not in self.index:
            self.index[label] = len(self.index)
        return self.index[label]

    def edge(self, a: str, b: str, line: int) -> None:
        if a == b:
            raise GraphParseError(f"self-loop on {a!r}", line)
        self.edges.append((self.vertex(a), self.vertex(b)))

    def build(self) -> FiniteGraph:
        labels = sorted(self.index, key=self.index.get)
        return FiniteGraph.from_edges(len(labels), set(self.edges), labels)


def parse_edge_list(text: str) -> FiniteGraph:
    b = _Builder()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            b.vertex(parts[0])
        elif len(parts) == 2:
            b.edge(parts[0], parts[1], lineno)
        else:
            raise GraphParseError(f"expected 'u v', got {len(parts)} fields", lineno)
    return b.build()


_DOT_TOKEN = re.compile(r'\s*(?:(--)|("(?:[^"\\]|\\.)*")|([A-Za-z0-9_.()\-,+^*]+)|([{};])|(\S))')


def _dot_tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("//", 1)[0]
        if line.lstrip().startswith("#"):
            continue
        pos = 0
        while pos < len(line):
            m = _DOT_TOKEN.match(line, pos)
            if m is None or m.end() == pos:
                break
            pos = m.end()
            edge, quoted, ident, punct, junk = m.groups()
            if junk is not None:
                raise GraphParseError(f"unexpected character {junk!r}", lineno)
            if edge:
                yield "--", None, lineno
            elif quoted is not None:
                yield "id", quoted[1:-1].replace('\\"', '"'), lineno
            elif ident is not None:
                # '--' inside an identifier run means an edge operator
                if "--" in ident:
                    pieces = ident.split("--")
                    for i, piece in enumerate(pieces):
                        if i:
                            yield "--", None, lineno
                        if piece:
                            yield "id", piece, lineno
                else:
                    yield "id", ident, lineno
            else:
                yield punct, None, lineno


def parse_dot(text: str) -> FiniteGraph:
    tokens = list(_dot_tokens(text))
    if not tokens:
        raise GraphParseError("empty DOT input", 1)
    i = 0
    kind, value, line = tokens[0]
    if kind == "id" and value == "strict":
        i += 1
    if i >= len(tokens) or tokens[i][0] != "id" or tokens[i][1] != "graph":
        line = tokens[min(i, len(tokens) - 1)][2]
        raise GraphParseError("expected 'graph' (only undirected graphs are supported)", line)
    i += 1
    if i < len(tokens) and tokens[i][0] == "id":
        i += 1
    if i >= len(tokens) or tokens[i][0] != "{":
        raise GraphParseError("expected '{'", tokens[min(i, len(tokens) - 1)][2])
    i += 1
    b = _Builder()
    while i < len(tokens) and tokens[i][0] != "}":
        kind, value, line = tokens[i]
        if kind == ";":
            i += 1
            continue
        if kind != "id":
            raise GraphParseError(f"expected a vertex id, got {kind!r}", line)
        chain = [value]
        i += 1
        while i < len(tokens) and tokens[i][0] == "--":
            if i + 1 >= len(tokens) or tokens[i + 1][0] != "id":
                raise GraphParseError("dangling '--'", tokens[i][2])
            chain.append(tokens[i + 1][1])
            i += 2
        if len(chain) == 1:
            b.vertex(chain[0])
        for a, c in zip(chain, chain[1:]):
            b.edge(a, c, line)
    if i >= len(tokens):
        raise GraphParseError("missing '}'", tokens[-1][2])
    return b.build()


def read_graph(path) -> FiniteGraph:
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith(("graph", "strict", "digraph")):
        return parse_dot(text)
    return parse_edge_list(text)


def format_edge_list(G: FiniteGraph) -> str:
    # vertices first so a reader rebuilds the same vertex order
    lines = [f"# {len(G)} vertices, {len(G.edges())} edges"]
    lines.extend(G.labels)
    lines.extend(f"{G.labels[u]} {G.labels[v]}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def format_dot(G: FiniteGraph, name: str = "G") -> str:
    def q(label: str) -> str:
        return label if re.fullmatch(r"[A-Za-z0-9_]+", label) else '"' + label.replace('"', '\\"') + '"'

    lines = [f"graph {name} {{"]
    lines.extend(f"  {q(G.labels[v])};" for v in range(len(G)))
    lines.extend(f"  {q(G.labels[u])} -- {q(G.labels[v])};" for u, v in G.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
