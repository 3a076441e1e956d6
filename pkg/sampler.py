"""
Metropolis-Hastings chains over group assignments.

Fixed-k: pick a group s in 1..k-1, flip a coin for add/remove, pick a node
uniformly among the eligible ones and accept with min(1, P(A|g')/P(A|g)).
The group-size prior is carried by the proposal probabilities, so only the
likelihood enters the acceptance ratio.

Vary-k: with probability 1/(2k(n+1)) insert an empty group at a uniform
label in 1..k, otherwise run a fixed-k style move in which removing from an
empty group deletes it.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional
import logging

import numpy as np

from models.graph import Graph
from models.membership import Membership
from models.state import ModelState, MoveKind
from schemas.sampler import SamplerConfig, SamplerMode, SnapshotMode

logger = logging.getLogger(__name__)


@dataclass
class MoveOutcome:
    kind: Optional[MoveKind]
    group: int = 0
    node: int = -1
    proposed: bool = False
    accepted: bool = False
    noop: bool = False
    delta: float = 0.0


@dataclass
class MoveCounter:
    proposed: int = 0
    accepted: int = 0

    @property
    def rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else 0.0


@dataclass
class SampleRecord:
    step: int
    k: int
    sizes: List[int]
    log_posterior: float
    membership: Optional[Membership] = None


@dataclass
class MapState:
    membership: Membership
    k: int
    log_posterior: float
    step: int


@dataclass
class Trace:
    records: List[SampleRecord]
    map_state: MapState
    counters: Dict[str, MoveCounter] = field(default_factory=dict)
    noops: int = 0
    steps: int = 0
    chain_id: int = 0

    def k_histogram(self) -> Dict[int, int]:
        histogram: Dict[int, int] = {}
        for record in self.records:
            histogram[record.k] = histogram.get(record.k, 0) + 1
        return dict(sorted(histogram.items()))

    def acceptance_rates(self) -> Dict[str, float]:
        return {kind: counter.rate for kind, counter in self.counters.items()}


# -- proposal probabilities ---------------------------------------------------

def type2_probability(k: int, n: int) -> float:
    """Probability that a vary-k step proposes creating a new empty group."""
    return 1.0 / (2 * k * (n + 1))


def proposal_probability_fixed(kind: MoveKind, n: int, k: int, n_s: int) -> float:
    """
    Probability that the fixed-k kernel proposes one particular move.

    Args:
        kind: ADD or REMOVE
        n: Node count
        k: Group count
        n_s: Size of the chosen group before the move

    Returns:
        pi(g -> g') for the move on a specific node
    """
    if kind == MoveKind.ADD:
        return 1.0 / (2 * (k - 1) * (n - n_s))
    if kind == MoveKind.REMOVE:
        return 1.0 / (2 * (k - 1) * n_s)
    raise ValueError(f"Fixed-k chains do not propose {kind.value} moves")


def proposal_probability_vary(kind: MoveKind, n: int, k: int, n_s: int = 0) -> float:
    """Probability that the vary-k kernel proposes one particular move from a state with k groups."""
    type1 = 1.0 - type2_probability(k, n)
    if kind == MoveKind.INSERT_GROUP:
        return type2_probability(k, n) / k
    if kind == MoveKind.DELETE_GROUP:
        return type1 / (2 * (k - 1))
    return type1 * proposal_probability_fixed(kind, n, k, n_s)


# -- kernels --------------------------------------------------------------------

def _accept(delta: float, rng: np.random.Generator) -> bool:
    if delta >= 0.0:
        return True
    return bool(np.log(rng.random()) < delta)


def _node_move(state: ModelState, s: int, add: bool, rng: np.random.Generator) -> MoveOutcome:
    kind = MoveKind.ADD if add else MoveKind.REMOVE
    candidates = state.membership.non_members(s) if add else state.membership.members(s)
    if len(candidates) == 0:
        return MoveOutcome(kind=kind, group=s, noop=True)
    u = int(candidates[rng.integers(len(candidates))])
    plan = state.plan_add(u, s) if add else state.plan_remove(u, s)
    outcome = MoveOutcome(kind=kind, group=s, node=u, proposed=True, delta=plan.delta)
    if _accept(plan.delta, rng):
        state.commit(plan)
        outcome.accepted = True
    return outcome


def step_fixed_k(state: ModelState, rng: np.random.Generator) -> MoveOutcome:
    """One fixed-k Monte Carlo step; k = 1 has no moves."""
    k = state.k
    if k < 2:
        return MoveOutcome(kind=None, noop=True)
    s = int(rng.integers(1, k))
    add = bool(rng.integers(2))
    return _node_move(state, s, add, rng)


def step_vary_k(state: ModelState, rng: np.random.Generator) -> MoveOutcome:
    """One vary-k Monte Carlo step."""
    k = state.k
    if rng.random() < type2_probability(k, state.n):
        s = int(rng.integers(1, k + 1))
        # empty groups leave the likelihood unchanged, so the move always accepts
        state.insert_group(s)
        return MoveOutcome(kind=MoveKind.INSERT_GROUP, group=s, proposed=True, accepted=True)

    if k == 1:
        return MoveOutcome(kind=None, noop=True)
    s = int(rng.integers(1, k))
    add = bool(rng.integers(2))
    if not add and state.stats.sizes[s] == 0:
        state.delete_group(s)
        return MoveOutcome(kind=MoveKind.DELETE_GROUP, group=s, proposed=True, accepted=True)
    return _node_move(state, s, add, rng)


# -- orchestration ----------------------------------------------------------------

ProgressCallback = Callable[[int, int, float], None]


def make_rng(seed: int, chain_id: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, chain_id])


def run(graph: Graph, config: SamplerConfig, chain_id: int = 0,
        progress: Optional[ProgressCallback] = None) -> Trace:
    """
    Run one chain and collect its trace.

    Args:
        graph: Observed network, shared read-only
        config: Validated sampler configuration
        chain_id: Index mixed into the RNG seed so parallel chains differ
        progress: Optional callback(step, total_steps, best_log_posterior)

    Returns:
        Trace with thinned post-burn-in records, the MAP state and move counters
    """
    rng = make_rng(config.seed, chain_id)
    if config.mode == SamplerMode.FIXED:
        kernel = step_fixed_k
        state = ModelState.empty(graph, config.k)
        if config.k == 1:
            logger.warning("Fixed k=1 has no moves; the run returns the null model")
    else:
        kernel = step_vary_k
        state = ModelState.empty(graph, 1)

    thin = config.resolved_thin(graph.n)
    burn_in = config.burn_in
    keep_snapshots = config.snapshots == SnapshotMode.THIN
    counters = {kind.value: MoveCounter() for kind in MoveKind}

    best = state.log_posterior()
    trace = Trace(records=[], chain_id=chain_id, counters=counters,
                  map_state=MapState(state.membership.copy(), state.k, best, 0))

    logger.info(f"Chain {chain_id}: {config.mode.value}-k run of {config.steps} steps "
                f"(burn-in {burn_in}, thin {thin}) on n={graph.n}, m={graph.m_total}")

    for step in range(1, config.steps + 1):
        outcome = kernel(state, rng)
        if outcome.noop:
            trace.noops += 1
        elif outcome.proposed:
            counter = counters[outcome.kind.value]
            counter.proposed += 1
            if outcome.accepted:
                counter.accepted += 1

        if outcome.accepted:
            current = state.log_posterior()
            if current > best:
                best = current
                trace.map_state = MapState(state.membership.copy(), state.k, current, step)

        if step > burn_in and (step - burn_in) % thin == 0:
            trace.records.append(SampleRecord(
                step=step,
                k=state.k,
                sizes=state.stats.sizes.tolist(),
                log_posterior=state.log_posterior(),
                membership=state.membership.copy() if keep_snapshots else None,
            ))

        if config.check_interval and step % config.check_interval == 0:
            state.check_invariants()

        if progress is not None and step % config.progress_interval == 0:
            progress(step, config.steps, best)

    trace.steps = config.steps
    if progress is not None:
        progress(config.steps, config.steps, best)
    logger.info(f"Chain {chain_id} finished: MAP k={trace.map_state.k}, "
                f"log-posterior {trace.map_state.log_posterior:.4f} at step {trace.map_state.step}")
    logger.debug(f"Chain {chain_id} acceptance rates: "
                 + ", ".join(f"{kind}={rate:.3f}" for kind, rate in trace.acceptance_rates().items()))
    return trace
