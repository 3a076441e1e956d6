"""
Sufficient statistics, marginal likelihood and priors of the hierarchical
core-periphery model, plus the mutable sampler state that keeps them in step
with single-node moves and group insertion/deletion.
"""

from dataclasses import dataclass
from enum import Enum
import logging
import math

import numpy as np
from scipy.special import gammaln

from models.graph import Graph
from models.membership import Membership, highest_set_bit

logger = logging.getLogger(__name__)


class ModelContractError(ValueError):
    """Raised when a model-state operation is called outside its contract."""


class StateInvariantError(RuntimeError):
    """Raised when maintained statistics drift from a full recomputation."""


@dataclass
class GroupStats:
    """Per-group pair counts t, edge counts m and sizes n_r."""
    t: np.ndarray
    m: np.ndarray
    sizes: np.ndarray

    @property
    def k(self) -> int:
        return len(self.t)

    def copy(self) -> "GroupStats":
        return GroupStats(self.t.copy(), self.m.copy(), self.sizes.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupStats):
            return NotImplemented
        return (np.array_equal(self.t, other.t) and np.array_equal(self.m, other.m)
                and np.array_equal(self.sizes, other.sizes))


def _group_terms(t: np.ndarray, m: np.ndarray) -> np.ndarray:
    # ln[m! (t-m)! / (t+1)!] per group; an empty group gives exactly 0
    return gammaln(m + 1) + gammaln(t - m + 1) - gammaln(t + 2)


def recompute_stats(graph: Graph, mem: Membership) -> GroupStats:
    """
    Exact (t, m, sizes) by full pair enumeration.

    Args:
        graph: The observed network
        mem: Group memberships over graph.n nodes

    Returns:
        GroupStats recomputed from scratch
    """
    k = mem.k
    t = np.zeros(k, dtype=np.int64)
    for u in range(graph.n - 1):
        h = mem.highest_common_with(u)[u + 1:]
        t += np.bincount(h, minlength=k)

    if graph.m_total:
        sources, targets = graph.edge_array[:, 0], graph.edge_array[:, 1]
        h_edges = highest_set_bit(mem.words[sources] & mem.words[targets])
        m = np.bincount(h_edges, minlength=k).astype(np.int64)
    else:
        m = np.zeros(k, dtype=np.int64)

    return GroupStats(t=t, m=m, sizes=mem.sizes())


def log_likelihood(stats: GroupStats) -> float:
    """ln P(A|g,k) with every omega_r integrated out under a uniform prior."""
    if np.any(stats.m > stats.t) or np.any(stats.m < 0):
        raise ModelContractError(f"Edge counts exceed pair counts: t={stats.t.tolist()}, m={stats.m.tolist()}")
    return math.fsum(_group_terms(stats.t, stats.m))


def log_prior_g(stats: GroupStats, n: int) -> float:
    """ln P(g|k): group sizes uniform on 0..n, then a uniform subset of that size."""
    sizes = stats.sizes[1:]
    if len(sizes) == 0:
        return 0.0
    return math.fsum(gammaln(sizes + 1) + gammaln(n - sizes + 1) - gammaln(n + 2))


def log_prior_k(k: int) -> float:
    """ln P(k) for a Poisson(1) prior on k - 1."""
    if k < 1:
        raise ModelContractError(f"k must be at least 1, got {k}")
    return -1.0 - float(gammaln(k))


def omega_estimates(stats: GroupStats) -> np.ndarray:
    """Posterior mean (m_r + 1) / (t_r + 2) of each marginalized omega_r."""
    return (stats.m + 1) / (stats.t + 2)


class MoveKind(str, Enum):
    ADD = "add"
    REMOVE = "remove"
    INSERT_GROUP = "insert_group"
    DELETE_GROUP = "delete_group"


@dataclass
class MovePlan:
    """A single-node move evaluated against the current state but not applied."""
    kind: MoveKind
    node: int
    group: int
    groups: np.ndarray
    new_t: np.ndarray
    new_m: np.ndarray
    new_terms: np.ndarray
    delta: float


class ModelState:
    """
    Graph + membership + sufficient statistics + cached log-likelihood.

    Single writer: one chain owns one state. The graph is shared read-only.
    """

    def __init__(self, graph: Graph, membership: Membership):
        if membership.n != graph.n:
            raise ModelContractError(f"Membership covers {membership.n} nodes, graph has {graph.n}")
        self.graph = graph
        self.membership = membership
        self.stats = recompute_stats(graph, membership)
        self._terms = _group_terms(self.stats.t, self.stats.m)
        self.log_lik = math.fsum(self._terms)

    @classmethod
    def empty(cls, graph: Graph, k: int = 1) -> "ModelState":
        """State with groups 1..k-1 empty: every node in group 0 only."""
        return cls(graph, Membership(graph.n, k))

    @property
    def k(self) -> int:
        return self.membership.k

    @property
    def n(self) -> int:
        return self.graph.n

    def copy(self) -> "ModelState":
        clone = object.__new__(ModelState)
        clone.graph = self.graph
        clone.membership = self.membership.copy()
        clone.stats = self.stats.copy()
        clone._terms = self._terms.copy()
        clone.log_lik = self.log_lik
        return clone

    def highest_common_group(self, u: int, v: int) -> int:
        if u == v:
            raise ModelContractError(f"highest_common_group needs u != v, got {u}")
        return self.membership.highest_common_group(u, v)

    def log_posterior(self) -> float:
        """ln P(g, k | A) up to the constant -ln P(A)."""
        return log_prior_k(self.k) + log_prior_g(self.stats, self.n) + self.log_lik

    # -- single-node moves -------------------------------------------------

    def plan_add(self, u: int, s: int) -> MovePlan:
        """Evaluate adding node u to group s without changing the state."""
        if not 1 <= s < self.k:
            raise ModelContractError(f"Cannot add to group {s} with k={self.k}")
        if self.membership.contains(u, s):
            raise ModelContractError(f"Node {u} is already in group {s}")

        h_old = self.membership.highest_common_with(u)
        in_s = self.membership.column(s)
        in_s[u] = False
        affected = in_s & (h_old < s)

        # every affected pair moves from its old class up to s
        dt = -np.bincount(h_old[affected], minlength=self.k)
        dt[s] += int(affected.sum())
        nbrs = self.graph.adjacency[u]
        edge_h = h_old[nbrs[affected[nbrs]]]
        dm = -np.bincount(edge_h, minlength=self.k)
        dm[s] += len(edge_h)
        return self._plan(MoveKind.ADD, u, s, dt, dm)

    def plan_remove(self, u: int, s: int) -> MovePlan:
        """Evaluate removing node u from group s without changing the state."""
        if not 1 <= s < self.k:
            raise ModelContractError(f"Cannot remove from group {s} with k={self.k}")
        if not self.membership.contains(u, s):
            raise ModelContractError(f"Node {u} is not in group {s}")

        h_old = self.membership.highest_common_with(u)
        h_old[u] = -1
        affected = np.flatnonzero(h_old == s)

        row = self.membership.words[u].copy()
        row[s // 64] &= ~np.uint64(1 << (s % 64))
        h_new = np.full(self.n, -1, dtype=np.int64)
        if len(affected):
            h_new[affected] = highest_set_bit(self.membership.words[affected] & row)

        dt = np.bincount(h_new[affected], minlength=self.k)
        dt[s] -= len(affected)
        nbrs = self.graph.adjacency[u]
        nbrs = nbrs[h_old[nbrs] == s]
        dm = np.bincount(h_new[nbrs], minlength=self.k)
        dm[s] -= len(nbrs)
        return self._plan(MoveKind.REMOVE, u, s, dt, dm)

    def _plan(self, kind: MoveKind, u: int, s: int, dt: np.ndarray, dm: np.ndarray) -> MovePlan:
        groups = np.flatnonzero((dt != 0) | (dm != 0))
        new_t = self.stats.t[groups] + dt[groups]
        new_m = self.stats.m[groups] + dm[groups]
        new_terms = _group_terms(new_t, new_m)
        # only the touched groups change; the rest cancel
        delta = math.fsum(new_terms) - math.fsum(self._terms[groups])
        return MovePlan(kind=kind, node=u, group=s, groups=groups, new_t=new_t,
                        new_m=new_m, new_terms=new_terms, delta=delta)

    def commit(self, plan: MovePlan) -> float:
        """Apply a previously evaluated move; returns its log-likelihood delta."""
        if plan.kind == MoveKind.ADD:
            self.membership.add(plan.node, plan.group)
            self.stats.sizes[plan.group] += 1
        else:
            self.membership.discard(plan.node, plan.group)
            self.stats.sizes[plan.group] -= 1
        self.stats.t[plan.groups] = plan.new_t
        self.stats.m[plan.groups] = plan.new_m
        self._terms[plan.groups] = plan.new_terms
        self.log_lik = math.fsum(self._terms)
        return plan.delta

    def apply_add(self, u: int, s: int) -> float:
        return self.commit(self.plan_add(u, s))

    def apply_remove(self, u: int, s: int) -> float:
        return self.commit(self.plan_remove(u, s))

    # -- group insertion / deletion ----------------------------------------

    def insert_group(self, s: int) -> None:
        """Create an empty group with label s; labels >= s move up by one."""
        if s == 0:
            raise ModelContractError("Group 0 is permanent; cannot insert at 0")
        if not 1 <= s <= self.k:
            raise ModelContractError(f"Cannot insert group at {s} with k={self.k}")
        self.membership.insert_group(s)
        self.stats = GroupStats(t=np.insert(self.stats.t, s, 0),
                                m=np.insert(self.stats.m, s, 0),
                                sizes=np.insert(self.stats.sizes, s, 0))
        self._terms = np.insert(self._terms, s, 0.0)

    def delete_group(self, s: int) -> None:
        """Delete the empty group s; labels above s move down by one."""
        if s == 0:
            raise ModelContractError("Group 0 is permanent; cannot delete it")
        if not 1 <= s < self.k:
            raise ModelContractError(f"Cannot delete group {s} with k={self.k}")
        if self.stats.sizes[s] != 0:
            raise ModelContractError(f"Cannot delete group {s}: it has {self.stats.sizes[s]} members")
        self.membership.delete_group(s)
        self.stats = GroupStats(t=np.delete(self.stats.t, s),
                                m=np.delete(self.stats.m, s),
                                sizes=np.delete(self.stats.sizes, s))
        self._terms = np.delete(self._terms, s)

    # -- read-outs -----------------------------------------------------------

    def edge_group_labels(self) -> np.ndarray:
        """Highest common group of each edge, aligned with graph.edges."""
        if not self.graph.m_total:
            return np.zeros(0, dtype=np.int64)
        words = self.membership.words
        sources, targets = self.graph.edge_array[:, 0], self.graph.edge_array[:, 1]
        return highest_set_bit(words[sources] & words[targets])

    def check_invariants(self, tolerance: float = 1e-9) -> None:
        """
        Compare maintained statistics against a full recomputation.

        Raises:
            StateInvariantError: if counts differ or the cached log-likelihood drifted
        """
        fresh = recompute_stats(self.graph, self.membership)
        if fresh != self.stats:
            raise StateInvariantError(
                f"Maintained stats t={self.stats.t.tolist()} m={self.stats.m.tolist()} "
                f"sizes={self.stats.sizes.tolist()} differ from recomputed "
                f"t={fresh.t.tolist()} m={fresh.m.tolist()} sizes={fresh.sizes.tolist()}"
            )
        drift = abs(self.log_lik - log_likelihood(fresh))
        if drift > tolerance:
            raise StateInvariantError(f"Cached log-likelihood drifted by {drift:.3e}")
        logger.debug(f"Invariant check passed at k={self.k}")


def log_posterior(ms: ModelState) -> float:
    return ms.log_posterior()


def edge_group_labels(ms: ModelState) -> np.ndarray:
    return ms.edge_group_labels()


def highest_common_group(ms: ModelState, u: int, v: int) -> int:
    return ms.highest_common_group(u, v)
