"""JSON documents for networks and matrices.

Network::

    {"n": 4, "edges": [{"from": 1, "to": 2, "w": "1"}, ...], "labels": [...]}

``labels`` is optional.  Matrix::

    {"rows": [["0", "1/l"], ["-1", "2"]]}

Weights are rational-function literals (plain JSON numbers are accepted
too).  ``"-"`` as a path reads standard input.
"""

from __future__ import annotations

import json
import sys

from .errors import BadVertexIndex, DuplicateEdge, ParseError
from .linalg import RatMatrix
from .literals import format_ratfunc, parse_ratfunc
from .netgraph import Network

__all__ = [
    "read_text",
    "parse_document",
    "parse_network",
    "parse_matrix",
    "parse_network_or_matrix",
    "load_network",
    "load_matrix",
    "network_to_doc",
    "matrix_to_doc",
    "dumps",
]


def read_text(path) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def parse_document(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", 1, 1)
    return doc


def _weight(raw, where):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError(f"{where}: weight must be a literal string or an integer")
    try:
        return parse_ratfunc(str(raw))
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _network(doc) -> Network:
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError('"n" must be a non-negative integer')
    edges_raw = doc.get("edges", [])
    if not isinstance(edges_raw, list):
        raise ParseError('"edges" must be a list')
    edges = {}
    for k, e in enumerate(edges_raw):
        where = f"edge {k}"
        if not isinstance(e, dict) or not {"from", "to", "w"} <= set(e):
            raise ParseError(f'{where}: needs "from", "to" and "w"')
        i, j = e["from"], e["to"]
        for v in (i, j):
            if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
                raise BadVertexIndex(f"{where}: vertex {v!r} is not in 1..{n}")
        if (i, j) in edges:
            raise DuplicateEdge(f"{where}: edge {i}->{j} appears twice")
        edges[(i, j)] = _weight(e["w"], where)
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or len(set(map(repr, labels))) != n:
            raise ParseError('"labels" must list n distinct values')
        labels = [tuple(x) if isinstance(x, list) else x for x in labels]
    return Network(n, edges, labels)


def _matrix(doc) -> RatMatrix:
    rows = doc.get("rows")
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError('"rows" must be a list of lists')
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError("matrix must be square")
    return RatMatrix([[_weight(x, f"entry ({a + 1},{b + 1})") for b, x in enumerate(r)] for a, r in enumerate(rows)])


def _unwrap(doc):
    """Reports written by the CLI nest the document under "network"/"matrix"."""
    for key in ("network", "matrix"):
        if isinstance(doc.get(key), dict):
            return doc[key]
    return doc


def parse_network(text) -> Network:
    return _network(_unwrap(parse_document(text)))


def parse_matrix(text) -> RatMatrix:
    return _matrix(_unwrap(parse_document(text)))


def parse_network_or_matrix(text):
    """A :class:`Network` for a network document, a :class:`RatMatrix` for a
    matrix document."""
    doc = _unwrap(parse_document(text))
    if "rows" in doc:
        return _matrix(doc)
    if "n" in doc:
        return _network(doc)
    raise ParseError('document has neither "n" nor "rows"')


def load_network(path) -> Network:
    return parse_network(read_text(path))


def load_matrix(path) -> RatMatrix:
    return parse_matrix(read_text(path))


def network_to_doc(net: Network) -> dict:
    doc = {
        "n": net.n,
        "edges": [
            {"from": i, "to": j, "w": format_ratfunc(w)} for (i, j), w in sorted(net.edges.items())
        ],
    }
    if net.labels != tuple(range(1, net.n + 1)):
        doc["labels"] = list(net.labels)
    return doc


def matrix_to_doc(m: RatMatrix) -> dict:
    return {"rows": m.literals()}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)
