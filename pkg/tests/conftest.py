from fractions import Fraction

import pytest

from isored.linalg import RatMatrix
from isored.netgraph import Network
from isored.ratfield import I


def four_vertex():
    """Four-vertex example: path 1->2->3->4, back edges 4->1 (-1) and 4->3 (-2)."""
    return Network(4, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (4, 1): -1, (4, 3): -2})


U_I = [I, -1, -I, 1]
V_I = [-3, -2 * I, 1, 0]
U_MI = [-1, I, 1, -I]
V_MI = [2 * I, 1, 0, 1]

A_EQ = RatMatrix([[Fraction(x, 17) for x in r] for r in [[148, 206, 256], [-13, -5, -28], [-33, -48, -41]]])
B_EQ = RatMatrix([[Fraction(x, 27) for x in r] for r in [[1, -39, -10], [52, 105, 20], [43, 24, 56]]])
A1 = RatMatrix([[5, 1, 0, 0], [0, 5, 0, 0], [0, 0, 5, 1], [0, 0, 0, 5]])
A2 = RatMatrix([[5, 0, 0, 0], [0, 5, 0, 1], [0, 1, 5, 0], [0, 0, 0, 5]])

NINE_SETS = [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


@pytest.fixture
def net():
    return four_vertex()
