"""
Forward sampling from the hierarchical core-periphery model.
"""

from typing import Sequence, Tuple
import logging

import numpy as np

from models.graph import Graph
from models.membership import Membership
from schemas.generator import GeneratorParams

logger = logging.getLogger(__name__)


def generate(params: GeneratorParams, seed: int) -> Graph:
    """
    Draw a network: each pair u < v is an edge with probability omega[h(u, v)].

    Args:
        params: Validated node count, memberships and per-group probabilities
        seed: RNG seed

    Returns:
        The sampled Graph
    """
    rng = np.random.default_rng(seed)
    omega = np.asarray(params.omega, dtype=np.float64)
    membership = params.membership
    edges = []
    # lexicographic u < v order keeps seeded draws reproducible
    for u in range(params.n - 1):
        h = membership.highest_common_with(u)[u + 1:]
        hits = np.flatnonzero(rng.random(len(h)) < omega[h])
        edges.extend((u, u + 1 + int(offset)) for offset in hits)
    graph = Graph.from_edges(params.n, edges)
    logger.info(f"Generated graph with n={graph.n}, m={graph.m_total} (k={params.k}, seed={seed})")
    return graph


def sample_membership_from_prior(n: int, k: int, seed: int) -> Membership:
    """For each group r >= 1: a size uniform on 0..n, then a uniform subset of that size."""
    rng = np.random.default_rng(seed)
    membership = Membership(n, k)
    for r in range(1, k):
        size = int(rng.integers(0, n + 1))
        for u in rng.choice(n, size=size, replace=False):
            membership.add(int(u), r)
    return membership


def planted_core_periphery(n: int, core_size: int, omega0: float, omega1: float,
                           seed: int) -> Tuple[Graph, Membership]:
    """
    Two-group benchmark: nodes 0..core_size-1 form group 1.

    omega1 > omega0 gives a traditional core; omega1 < omega0 gives the
    inside-out arrangement in which group 0 carries the dense connections.
    """
    if not 0 <= core_size <= n:
        raise ValueError(f"core_size {core_size} must lie in 0..{n}")
    membership = Membership.from_groups(n, 2, {1: range(core_size)})
    params = GeneratorParams(n=n, k=2, membership=membership, omega=[omega0, omega1])
    return generate(params, seed), membership


def expected_edge_count(pair_counts: Sequence[int], omega: Sequence[float]) -> float:
    """Sum over groups of t_r * omega_r."""
    return float(np.dot(np.asarray(pair_counts, dtype=np.float64), np.asarray(omega, dtype=np.float64)))
