"""Edge-list text format and its JSON mirror.

Text format (UTF-8, ``\\n`` line ends)::

    # comments start with '#'
    n 5
    0 1
    1 2

The first significant line is ``n <N>``; every later one is ``<u> <v>``
separated by a single ASCII space. The serializer sorts edges by
``(u, v)`` and emits nothing else, so ``parse(serialize(d)) == d`` and
``serialize(parse(serialize(d))) == serialize(d)`` byte for byte.
"""
from __future__ import annotations

import json
import re

from .errors import Digon, DuplicateEdge, GraphError, ParseError, SelfLoop, VertexOutOfRange
from .graph import Digraph, from_edge_list

_HEADER = re.compile(r"n (0|[1-9][0-9]*)")
_EDGE = re.compile(r"(0|[1-9][0-9]*) (0|[1-9][0-9]*)")


def parse_edge_list(text: str) -> Digraph:
    n: int | None = None
    rows: list[set[int]] = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line or line.startswith("#"):
            continue
        if n is None:
            match = _HEADER.fullmatch(line)
            if match is None:
                raise ParseError(lineno, f"expected 'n <N>' header, got {line!r}")
            n = int(match.group(1))
            rows = [set() for _ in range(n)]
            continue
        match = _EDGE.fullmatch(line)
        if match is None:
            raise ParseError(lineno, f"expected '<u> <v>', got {line!r}")
        u, v = int(match.group(1)), int(match.group(2))
        try:
            _check_edge(rows, n, u, v)
        except GraphError as exc:
            raise ParseError(lineno, str(exc)) from exc
        rows[u].add(v)
    if n is None:
        raise ParseError(1, "missing 'n <N>' header")
    return Digraph(n, [sorted(r) for r in rows])


def _check_edge(rows: list[set[int]], n: int, u: int, v: int) -> None:
    for x in (u, v):
        if x >= n:
            raise VertexOutOfRange(x, n)
    if u == v:
        raise SelfLoop(u)
    if v in rows[u]:
        raise DuplicateEdge(u, v)
    if u in rows[v]:
        raise Digon(min(u, v), max(u, v))


def format_edge_list(d: Digraph) -> str:
    parts = [f"n {d.n}\n"]
    parts.extend(f"{u} {v}\n" for u, v in d.edges())
    return "".join(parts)


def to_json_obj(d: Digraph) -> dict:
    return {"n": d.n, "edges": [[u, v] for u, v in d.edges()]}


def format_json(d: Digraph) -> str:
    return json.dumps(to_json_obj(d), separators=(",", ":"))


def from_json_obj(obj: dict) -> Digraph:
    try:
        n = obj["n"]
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph object: {exc}") from exc
    return from_edge_list(int(n), edges)


def parse_json(text: str) -> Digraph:
    return from_json_obj(json.loads(text))


def parse_any(text: str) -> Digraph:
    """Dispatch on content: a leading ``{`` means JSON, otherwise edge list."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_edge_list(text)
