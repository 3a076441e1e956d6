import numpy as np
import pytest

from models.graph import Graph
from models.membership import Membership


class ScriptedRng:
    """Deterministic stand-in for numpy's Generator that replays scripted draws."""

    def __init__(self, integers=(), uniforms=()):
        self._integers = list(integers)
        self._uniforms = list(uniforms)

    def integers(self, low, high=None):
        value = self._integers.pop(0)
        if high is None:
            low, high = 0, low
        assert low <= value < high, f"scripted integer {value} outside [{low}, {high})"
        return value

    def random(self):
        return self._uniforms.pop(0)

    @property
    def exhausted(self) -> bool:
        return not self._integers and not self._uniforms


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, pairs)


def random_membership(n: int, k: int, seed: int, density: float = 0.3) -> Membership:
    rng = np.random.default_rng(seed)
    matrix = rng.random((n, k)) < density
    return Membership.from_bool_matrix(matrix)


@pytest.fixture
def path4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def single_edge() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def five_node_graph() -> Graph:
    # 5 nodes, 5 edges: a triangle with a two-edge tail
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
