"""
Descriptive read-outs of a fitted structure: which kind of two-group
core-periphery it is, and how the groups sit relative to each other.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

import numpy as np

from models.membership import Membership


class TwoGroupStructure(str, Enum):
    TRADITIONAL = "traditional"
    INSIDE_OUT = "inside-out"
    INDETERMINATE = "indeterminate"


class GroupRelationType(str, Enum):
    IDENTICAL = "identical"
    NESTED = "nested"
    DISJOINT = "disjoint"
    OVERLAPPING = "overlapping"


@dataclass
class GroupRelation:
    first: int
    second: int
    relation: GroupRelationType


def classify_two_group(omega: Sequence[float]) -> TwoGroupStructure:
    """
    Dense group 1 over a sparser background is a traditional core; a sparse
    group 1 inside a dense background is inside-out.
    """
    if omega[1] > omega[0]:
        return TwoGroupStructure.TRADITIONAL
    if omega[1] < omega[0]:
        return TwoGroupStructure.INSIDE_OUT
    return TwoGroupStructure.INDETERMINATE


def group_relations(membership: Membership) -> List[GroupRelation]:
    """Set relation between every pair of non-empty groups r < s >= 1"""
    matrix = membership.to_bool_matrix()
    groups = [r for r in range(1, membership.k) if matrix[:, r].any()]
    relations = []
    for i, r in enumerate(groups):
        for s in groups[i + 1:]:
            a, b = matrix[:, r], matrix[:, s]
            common = int((a & b).sum())
            if np.array_equal(a, b):
                relation = GroupRelationType.IDENTICAL
            elif common == 0:
                relation = GroupRelationType.DISJOINT
            elif common == int(a.sum()) or common == int(b.sum()):
                relation = GroupRelationType.NESTED
            else:
                relation = GroupRelationType.OVERLAPPING
            relations.append(GroupRelation(first=r, second=s, relation=relation))
    return relations


def core_of_node(membership: Membership) -> np.ndarray:
    """Highest group of each node"""
    return membership.highest_group()
