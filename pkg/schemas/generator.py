from typing import Dict, List
from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.membership import Membership


class GeneratorParams(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int = Field(..., ge=0, description="Node count")
    k: int = Field(..., ge=1, description="Group count")
    membership: Membership = Field(..., description="Planted group memberships")
    omega: List[float] = Field(..., description="Edge probability of each group")

    @model_validator(mode="after")
    def check_consistency(self):
        if len(self.omega) != self.k:
            raise ValueError(f"omega has {len(self.omega)} entries, expected k={self.k}")
        for r, value in enumerate(self.omega):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"omega[{r}]={value} outside [0, 1]")
        if self.membership.n != self.n or self.membership.k != self.k:
            raise ValueError(
                f"membership is over n={self.membership.n}, k={self.membership.k}; "
                f"expected n={self.n}, k={self.k}"
            )
        return self


class GroundTruthDocument(BaseModel):
    """Planted structure written next to a generated edge list"""
    n: int = Field(..., description="Node count, isolated nodes included")
    k: int = Field(..., description="Group count")
    omega: List[float] = Field(..., description="Edge probability of each group")
    seed: int = Field(..., description="Generator seed")
    memberships: Dict[str, List[int]] = Field(..., description="Groups of every node label")
