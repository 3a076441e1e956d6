from .sampler import SamplerConfig, SamplerMode, SnapshotMode
from .generator import GeneratorParams, GroundTruthDocument
from .result import ResultDocument, SCHEMA_VERSION

__all__ = ["SamplerConfig", "SamplerMode", "SnapshotMode", "GeneratorParams", "GroundTruthDocument", "ResultDocument", "SCHEMA_VERSION"]
