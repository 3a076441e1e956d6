from models.graph import Graph, LabelMap, num_pairs
from models.membership import Membership
from models.state import GroupStats, ModelState, ModelContractError, StateInvariantError

__all__ = ["Graph", "LabelMap", "num_pairs", "Membership", "GroupStats", "ModelState", "ModelContractError", "StateInvariantError"]
