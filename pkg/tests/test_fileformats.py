"""Network and matrix documents."""

import io
import json

import pytest

from isored.errors import BadVertexIndex, DuplicateEdge, ParseError
from isored.fileformats import (
    dumps,
    load_network,
    matrix_to_doc,
    network_to_doc,
    parse_matrix,
    parse_network,
    parse_network_or_matrix,
)
from isored.linalg import RatMatrix
from isored.netgraph import Network
from isored.ratfield import LAMBDA
from isored.reduction import reduce_graph

FOUR_VERTEX_DOC = {
    "n": 4,
    "edges": [
        {"from": 1, "to": 2, "w": "1"},
        {"from": 2, "to": 3, "w": "1"},
        {"from": 3, "to": 4, "w": "1"},
        {"from": 4, "to": 1, "w": "-1"},
        {"from": 4, "to": 3, "w": "-2"},
    ],
}


def test_four_vertex_document(net):
    parsed = parse_network(json.dumps(FOUR_VERTEX_DOC))
    assert parsed == net
    assert len(parsed.edges) == 5
    assert network_to_doc(net) == FOUR_VERTEX_DOC


def test_empty_edge_list():
    net = parse_network('{"n": 3, "edges": []}')
    assert net.n == 3 and not net.edges


def test_weight_literal():
    net = parse_network('{"n": 2, "edges": [{"from": 1, "to": 2, "w": "1/l^2"}]}')
    assert net.weight(1, 2) == 1 / LAMBDA**2


def test_integer_weights_accepted():
    net = parse_network('{"n": 2, "edges": [{"from": 1, "to": 2, "w": 3}]}')
    assert net.weight(1, 2) == 3


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_network('{"n": 2,\n  "edges": [}')
    assert info.value.line == 2


@pytest.mark.parametrize(
    "doc, exc",
    [
        ('{"n": 2, "edges": [{"from": 1, "to": 2, "w": "1"}, {"from": 1, "to": 2, "w": "2"}]}', DuplicateEdge),
        ('{"n": 2, "edges": [{"from": 1, "to": 3, "w": "1"}]}', BadVertexIndex),
        ('{"n": 2, "edges": [{"from": 1, "to": 2, "w": "l+"}]}', ParseError),
        ('{"n": 2, "edges": [{"from": 1, "to": 2}]}', ParseError),
        ('{"n": -1}', ParseError),
        ("[1, 2]", ParseError),
        ('{"n": 2, "labels": [1, 1]}', ParseError),
    ],
)
def test_rejections(doc, exc):
    with pytest.raises(exc):
        parse_network(doc)


def test_labels_roundtrip(net):
    red = reduce_graph(net, [1, 4])
    doc = network_to_doc(red)
    assert doc["labels"] == [1, 4]
    again = parse_network(dumps(doc))
    assert again == red
    assert again.labels == (1, 4)


def test_matrix_documents():
    m = parse_matrix('{"rows": [["0", "1/l"], ["-1", "2"]]}')
    assert m == RatMatrix([[0, "1/l"], [-1, 2]])
    assert parse_matrix(dumps(matrix_to_doc(m))) == m
    with pytest.raises(ParseError):
        parse_matrix('{"rows": [["1", "2"]]}')


def test_dispatch_and_unwrap(net):
    assert isinstance(parse_network_or_matrix('{"rows": [["1"]]}'), RatMatrix)
    assert isinstance(parse_network_or_matrix(json.dumps(FOUR_VERTEX_DOC)), Network)
    wrapped = json.dumps({"network": FOUR_VERTEX_DOC, "char_function": "l^4"})
    assert parse_network(wrapped) == net
    with pytest.raises(ParseError):
        parse_network_or_matrix('{"x": 1}')


def test_stdin(monkeypatch, net):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(FOUR_VERTEX_DOC)))
    assert load_network("-") == net
