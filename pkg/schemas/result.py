import datetime
from typing import Dict, List, Optional
from pydantic import BaseModel, Field

from Evaluation.structure import GroupRelationType, TwoGroupStructure
from schemas.sampler import SamplerConfig

SCHEMA_VERSION = "1.0"


class ResultMetadata(BaseModel):
    input_file: str = Field(..., description="Path of the fitted network file")
    input_format: str = Field(..., description="edgelist or gml")
    config: SamplerConfig = Field(..., description="Sampler configuration of every chain")
    seed: int = Field(..., description="Base RNG seed")
    chains: int = Field(..., ge=1, description="Number of independent chains")
    version: str = Field(..., description="hiercore version that wrote the document")
    created_at: datetime.datetime = Field(..., description="Write timestamp; excluded from determinism checks")


class GroupRelationRead(BaseModel):
    first: int
    second: int
    relation: GroupRelationType


class MapStructure(BaseModel):
    k: int = Field(..., ge=1, description="Number of groups, group 0 included")
    memberships: Dict[str, List[int]] = Field(..., description="Groups of every node label; always includes 0")
    group_sizes: List[int] = Field(..., description="n_r for r = 0..k-1")
    pair_counts: List[int] = Field(..., description="t_r: pairs whose highest common group is r")
    edge_counts: List[int] = Field(..., description="m_r: edges whose highest common group is r")
    omega_estimates: List[float] = Field(..., description="(m_r + 1) / (t_r + 2)")
    log_posterior: float = Field(..., description="ln P(g, k | A) up to a constant")
    step: int = Field(..., description="Step at which the structure was found")
    chain_id: int = Field(..., description="Chain that found it")
    structure_type: Optional[TwoGroupStructure] = Field(None, description="Set for k = 2 results only")
    group_relations: List[GroupRelationRead] = Field(default_factory=list,
                                                     description="Set relation between non-empty groups")


class AcceptanceStats(BaseModel):
    proposed: int
    accepted: int
    rate: float


class ChainSummary(BaseModel):
    chain_id: int
    map_k: int
    map_log_posterior: float
    noops: int
    acceptance: Dict[str, AcceptanceStats]
    record_steps: List[int]
    log_posterior_series: List[float]
    k_series: List[int]
    k_histogram: Dict[int, int]
    snapshots: Optional[List[Dict[str, List[int]]]] = None


class TraceSummary(BaseModel):
    k_histogram: Dict[int, int] = Field(..., description="Sampled k over all chains' records")
    chains_agree: bool = Field(..., description="False when chain MAP memberships differ")
    chains: List[ChainSummary]


class EdgeLabel(BaseModel):
    source: str
    target: str
    group: int


class RecoveryReport(BaseModel):
    truth_file: str
    matched_group: int
    accuracy: float


class ResultDocument(BaseModel):
    schema_version: str = Field(..., description=f"Document schema version, currently {SCHEMA_VERSION}")
    metadata: ResultMetadata
    map_structure: MapStructure
    trace: TraceSummary
    edge_labels: List[EdgeLabel]
    recovery: Optional[RecoveryReport]
