import itertools
import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from conftest import random_graph
from Evaluation.enumeration import (
    EnumerationTooLargeError,
    empirical_distribution,
    exact_posterior_enumeration,
    total_variation,
)
from models.graph import Graph


def test_single_edge_has_four_states(single_edge):
    table = exact_posterior_enumeration(single_edge, 2)
    assert len(table) == 4
    # group 1 of size 0 or 2 carries prior 1/3, size 1 carries 1/6; likelihood is 1/2 throughout
    by_size = {int(state.sizes()[1]): p for state, p in zip(table.memberships(), table.probabilities)}
    assert by_size[0] == pytest.approx(1 / 3)
    assert by_size[2] == pytest.approx(1 / 3)
    singles = [p for state, p in zip(table.memberships(), table.probabilities) if state.sizes()[1] == 1]
    assert singles == pytest.approx([1 / 6, 1 / 6])


def test_single_node_posterior_is_uniform():
    table = exact_posterior_enumeration(Graph.from_edges(1, []), 2)
    assert table.probabilities.tolist() == pytest.approx([0.5, 0.5])


@pytest.mark.parametrize("n,k", [(3, 2), (4, 3), (6, 2)])
def test_probabilities_are_normalized(n, k):
    table = exact_posterior_enumeration(random_graph(n, 0.5, seed=n), k)
    assert len(table) == 2 ** (n * (k - 1))
    assert abs(table.probabilities.sum() - 1.0) <= 1e-12


def test_states_are_decoded_from_their_index():
    table = exact_posterior_enumeration(random_graph(3, 0.5, seed=2), 3)
    assert table.log_weights.shape == (64,)
    membership = table.membership((1 << 1) | (1 << (3 + 2)))
    assert [membership.groups_of(u) for u in range(3)] == [[0], [0, 1], [0, 2]]


def test_refuses_large_state_spaces():
    with pytest.raises(EnumerationTooLargeError):
        exact_posterior_enumeration(random_graph(13, 0.2, seed=1), 3)


def test_evidence_is_invariant_under_relabeling():
    graph = random_graph(8, 0.4, seed=99)
    evidence = exact_posterior_enumeration(graph, 2).log_evidence
    assert np.isfinite(evidence)
    rng = np.random.default_rng(100)
    for _ in range(50):
        relabeled = graph.relabeled(rng.permutation(graph.n))
        assert exact_posterior_enumeration(relabeled, 2).log_evidence == pytest.approx(evidence, abs=1e-9)


def _evidence_by_integration(graph):
    """P(A | k=2) summed over every group-1 subset with both edge densities integrated numerically"""
    n = graph.n
    pairs = list(itertools.combinations(range(n), 2))
    total = 0.0
    for core in itertools.product((False, True), repeat=n):
        prior = 1.0 / ((n + 1) * math.comb(n, sum(core)))
        inner = [core[u] and core[v] for u, v in pairs]
        edges = [graph.has_edge(u, v) for u, v in pairs]

        def integrand(w1, w0):
            value = 1.0
            for shared, edge in zip(inner, edges):
                w = w1 if shared else w0
                value *= w if edge else 1.0 - w
            return value

        likelihood, _ = dblquad(integrand, 0, 1, 0, 1, epsabs=0, epsrel=1e-9)
        total += prior * likelihood
    return total


@pytest.mark.parametrize("fixture", ["triangle", "five_node_graph"])
def test_log_evidence_matches_numerical_integration(fixture, request):
    graph = request.getfixturevalue(fixture)
    table = exact_posterior_enumeration(graph, 2)
    assert table.log_evidence == pytest.approx(math.log(_evidence_by_integration(graph)), abs=1e-7)


def test_total_variation():
    p = {b"a": 0.5, b"b": 0.5}
    assert total_variation(p, p) == 0.0
    assert total_variation(p, {b"c": 1.0}) == pytest.approx(1.0)
    assert total_variation(p, empirical_distribution({b"a": 3, b"b": 1})) == pytest.approx(0.25)
