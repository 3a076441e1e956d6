from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple
import numpy as np


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Immutable simple undirected graph over contiguous node indices 0..n-1.

    Edges are stored canonically as (u, v) with u < v, sorted. Use
    Graph.from_edges to build one from arbitrary pairs.
    """
    n: int
    edges: Tuple[Tuple[int, int], ...]
    adjacency: Tuple[np.ndarray, ...] = field(repr=False)
    edge_array: np.ndarray = field(repr=False)
    _edge_set: frozenset = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Graph":
        """
        Build a graph, dropping self-loops and collapsing duplicate pairs.

        Args:
            n: Number of nodes
            pairs: Node-index pairs in any orientation

        Returns:
            Graph with canonical sorted edges
        """
        canonical = set()
        for u, v in pairs:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"Edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue
            canonical.add((u, v) if u < v else (v, u))

        edges = tuple(sorted(canonical))
        neighbors: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        adjacency = tuple(np.array(sorted(nbrs), dtype=np.int64) for nbrs in neighbors)
        edge_array = np.array(edges, dtype=np.int64).reshape(-1, 2)
        return cls(n=n, edges=edges, adjacency=adjacency,
                   edge_array=edge_array, _edge_set=frozenset(edges))

    @property
    def m_total(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    def relabeled(self, permutation: np.ndarray) -> "Graph":
        """Return the isomorphic graph where node u becomes permutation[u]."""
        return Graph.from_edges(self.n, ((permutation[u], permutation[v]) for u, v in self.edges))


def num_pairs(g: Graph) -> int:
    """Number of unordered node pairs, n(n-1)/2."""
    return g.n * (g.n - 1) // 2


@dataclass
class LabelMap:
    """Bijection between external node labels and internal indices."""
    forward: Dict[str, int]
    backward: List[str]

    def __post_init__(self):
        if len(self.forward) != len(self.backward):
            raise ValueError("LabelMap is not a bijection: duplicate labels")
        for index, label in enumerate(self.backward):
            if self.forward.get(label) != index:
                raise ValueError(f"LabelMap is not a bijection at label '{label}'")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "LabelMap":
        backward = [str(label) for label in labels]
        forward = {label: index for index, label in enumerate(backward)}
        return cls(forward=forward, backward=backward)

    @classmethod
    def identity(cls, n: int) -> "LabelMap":
        return cls.from_labels(str(i) for i in range(n))

    def __len__(self) -> int:
        return len(self.backward)

    def index(self, label: str) -> int:
        return self.forward[label]

    def label(self, index: int) -> str:
        return self.backward[index]
