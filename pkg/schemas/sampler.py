from enum import Enum
from typing import Optional
from pydantic import BaseModel, Field, model_validator

import config


class SamplerMode(str, Enum):
    FIXED = "fixed"
    VARY = "vary"


class SnapshotMode(str, Enum):
    NONE = "none"
    THIN = "thin"


class SamplerConfig(BaseModel):
    mode: SamplerMode = Field(default=SamplerMode.FIXED, description="fixed-k or vary-k chain")
    k: Optional[int] = Field(default=2, ge=1, description="Group count in fixed mode")
    steps: int = Field(default=config.DEFAULT_STEPS, ge=0, description="Total Monte Carlo steps")
    burn_in: Optional[int] = Field(default=None, ge=0, description="Steps discarded before recording; default steps/10")
    thin: Optional[int] = Field(default=None, ge=1, description="Record interval; default max(1, n*k)")
    seed: int = Field(default=0, ge=0, description="RNG seed")
    snapshots: SnapshotMode = Field(default=SnapshotMode.NONE, description="Record full memberships with each sample")
    check_interval: int = Field(default=config.INVARIANT_CHECK_INTERVAL, ge=0,
                                description="Steps between recompute_stats cross-checks; 0 disables")
    progress_interval: int = Field(default=config.PROGRESS_INTERVAL, ge=1,
                                   description="Steps between progress reports")

    @model_validator(mode="after")
    def check_consistency(self):
        if self.mode == SamplerMode.FIXED and self.k is None:
            raise ValueError("fixed mode needs k")
        if self.mode == SamplerMode.VARY:
            self.k = None
        if self.burn_in is None:
            self.burn_in = self.steps // 10
        if self.steps == 0:
            if self.burn_in != 0:
                raise ValueError("burn_in must be 0 when steps is 0")
        elif self.burn_in >= self.steps:
            raise ValueError(f"steps ({self.steps}) must exceed burn_in ({self.burn_in})")
        return self

    def resolved_thin(self, n: int) -> int:
        if self.thin is not None:
            return self.thin
        return max(1, n * (self.k or 1))
