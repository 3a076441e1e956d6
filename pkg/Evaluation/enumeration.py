import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping

import numpy as np
from scipy.special import logsumexp

from models.graph import Graph
from models.membership import Membership
from models.state import log_likelihood, log_prior_g, recompute_stats

logger = logging.getLogger(__name__)

# 2**24 assignments is the most we are willing to enumerate
MAX_STATE_BITS = 24


class EnumerationTooLargeError(ValueError):
    """The requested state space is too large to enumerate."""


@dataclass
class PosteriorTable:
    """
    Exact P(g | A, k) over every assignment of groups 1..k-1.

    State i is stored only through its index: bit (r-1)*n + u of i says
    whether node u belongs to group r.
    """
    n: int
    k: int
    log_weights: np.ndarray

    def __len__(self) -> int:
        return len(self.log_weights)

    def membership(self, index: int) -> Membership:
        bits = self.n * (self.k - 1)
        flags = (np.int64(index) >> np.arange(bits, dtype=np.int64)) & 1
        matrix = np.ones((self.n, self.k), dtype=bool)
        matrix[:, 1:] = flags.astype(bool).reshape(self.k - 1, self.n).T
        return Membership.from_bool_matrix(matrix)

    def memberships(self) -> Iterator[Membership]:
        return (self.membership(index) for index in range(len(self)))

    @property
    def log_evidence(self) -> float:
        """ln P(A | k) = ln sum_g P(A | g, k) P(g | k)"""
        return float(logsumexp(self.log_weights))

    @property
    def probabilities(self) -> np.ndarray:
        return np.exp(self.log_weights - self.log_evidence)

    def as_dict(self) -> Dict[bytes, float]:
        return {state.key(): float(p) for state, p in zip(self.memberships(), self.probabilities)}


def exact_posterior_enumeration(graph: Graph, k: int) -> PosteriorTable:
    """
    Enumerate every membership with k groups and weight it by P(A|g,k) P(g|k).

    Args:
        graph: Small network
        k: Group count

    Returns:
        PosteriorTable over all 2**(n*(k-1)) assignments

    Raises:
        EnumerationTooLargeError: when n*(k-1) exceeds MAX_STATE_BITS
    """
    bits = graph.n * (k - 1)
    if bits > MAX_STATE_BITS:
        raise EnumerationTooLargeError(
            f"n={graph.n}, k={k} gives 2**{bits} states; at most 2**{MAX_STATE_BITS} can be enumerated"
        )

    table = PosteriorTable(n=graph.n, k=k, log_weights=np.empty(2 ** bits, dtype=np.float64))
    for index in range(len(table)):
        stats = recompute_stats(graph, table.membership(index))
        table.log_weights[index] = log_prior_g(stats, graph.n) + log_likelihood(stats)

    logger.debug(f"Enumerated {len(table)} states for n={graph.n}, k={k}")
    return table


def total_variation(p: Mapping[bytes, float], q: Mapping[bytes, float]) -> float:
    """Half the L1 distance between two distributions over state keys"""
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(key, 0.0) - q.get(key, 0.0)) for key in keys)


def empirical_distribution(counts: Mapping[bytes, int]) -> Dict[bytes, float]:
    total = sum(counts.values())
    return {key: count / total for key, count in counts.items()}
