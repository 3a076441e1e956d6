import logging
from typing import Iterable, Mapping, Tuple

logger = logging.getLogger(__name__)


def recovery_accuracy(truth: Mapping[str, Iterable[int]], fitted: Mapping[str, Iterable[int]],
                      truth_group: int = 1, fitted_group: int = 1) -> float:
    """
    Fraction of shared node labels on which two memberships agree about one group.

    Args:
        truth: Planted groups of each node label
        fitted: Inferred groups of each node label
        truth_group: Group of the planted structure to compare
        fitted_group: Group of the fitted structure identified with it

    Returns:
        Agreement in [0, 1]; labels missing from either side are ignored
    """
    shared = sorted(set(truth) & set(fitted))
    if not shared:
        logger.warning("No node labels in common between planted and fitted memberships")
        return 0.0
    agree = sum(
        (truth_group in set(truth[label])) == (fitted_group in set(fitted[label]))
        for label in shared
    )
    missing = len(set(truth) ^ set(fitted))
    if missing:
        logger.warning(f"{missing} node labels appear in only one of the two memberships")
    return agree / len(shared)


def best_group_match(truth: Mapping[str, Iterable[int]], fitted: Mapping[str, Iterable[int]],
                     truth_group: int = 1) -> Tuple[int, float]:
    """Fitted group (>= 1) that best reproduces a planted group, with its accuracy"""
    fitted_groups = sorted({r for groups in fitted.values() for r in groups if r >= 1})
    best: Tuple[int, float] = (0, recovery_accuracy(truth, fitted, truth_group, -1))
    for group in fitted_groups:
        accuracy = recovery_accuracy(truth, fitted, truth_group, group)
        if accuracy > best[1]:
            best = (group, accuracy)
    return best

