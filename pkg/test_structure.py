import pytest

from Evaluation.recovery import best_group_match, recovery_accuracy
from Evaluation.structure import (
    GroupRelationType,
    TwoGroupStructure,
    classify_two_group,
    core_of_node,
    group_relations,
)
from models.membership import Membership


@pytest.mark.parametrize("omega,expected", [
    ([0.1, 0.9], TwoGroupStructure.TRADITIONAL),
    ([0.6, 0.05], TwoGroupStructure.INSIDE_OUT),
    ([0.3, 0.3], TwoGroupStructure.INDETERMINATE),
])
def test_classify_two_group(omega, expected):
    assert classify_two_group(omega) == expected


def test_group_relations():
    membership = Membership.from_groups(8, 6, {
        1: [0, 1, 2, 3],
        2: [0, 1],
        3: [5, 6],
        4: [3, 4, 5],
        5: [5, 6],
    })
    relations = {(r.first, r.second): r.relation for r in group_relations(membership)}
    assert relations[(1, 2)] == GroupRelationType.NESTED
    assert relations[(1, 3)] == GroupRelationType.DISJOINT
    assert relations[(1, 4)] == GroupRelationType.OVERLAPPING
    assert relations[(3, 5)] == GroupRelationType.IDENTICAL
    assert len(relations) == 10


def test_empty_groups_have_no_relations():
    membership = Membership.from_groups(4, 3, {1: [0, 1]})
    assert group_relations(membership) == []


def test_core_of_node():
    membership = Membership.from_groups(4, 3, {1: [0, 1], 2: [1]})
    assert core_of_node(membership).tolist() == [1, 2, 0, 0]


class TestRecovery:
    truth = {"a": [0, 1], "b": [0, 1], "c": [0], "d": [0]}

    def test_perfect_recovery(self):
        assert recovery_accuracy(self.truth, self.truth) == 1.0

    def test_partial_recovery(self):
        fitted = {"a": [0, 1], "b": [0], "c": [0], "d": [0, 1]}
        assert recovery_accuracy(self.truth, fitted) == 0.5

    def test_missing_labels_are_ignored(self):
        fitted = {"a": [0, 1], "b": [0, 1], "c": [0], "e": [0]}
        assert recovery_accuracy(self.truth, fitted) == 1.0

    def test_no_shared_labels(self):
        assert recovery_accuracy(self.truth, {"x": [0]}) == 0.0

    def test_best_group_match_finds_relabeled_core(self):
        fitted = {"a": [0, 2], "b": [0, 2], "c": [0, 1], "d": [0]}
        assert best_group_match(self.truth, fitted) == (2, 1.0)
