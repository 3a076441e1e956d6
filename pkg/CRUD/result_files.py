"""
Assembly, writing and reading of result documents.
"""

import datetime
import json
import logging
from typing import Dict, List, Optional

import numpy as np
from pydantic import ValidationError

import config
from Evaluation.structure import classify_two_group, group_relations
from models.graph import Graph, LabelMap
from models.membership import Membership
from models.state import ModelState, omega_estimates
from sampler import Trace
from schemas.result import (
    SCHEMA_VERSION,
    AcceptanceStats,
    ChainSummary,
    EdgeLabel,
    GroupRelationRead,
    MapStructure,
    RecoveryReport,
    ResultDocument,
    ResultMetadata,
    TraceSummary,
)
from schemas.sampler import SamplerConfig

logger = logging.getLogger(__name__)


class ResultFormatError(ValueError):
    """Unreadable or inconsistent result document."""


def membership_by_label(membership: Membership, labels: LabelMap) -> Dict[str, List[int]]:
    return {labels.label(u): membership.groups_of(u) for u in range(membership.n)}


def membership_from_labels(groups: Dict[str, List[int]], labels: LabelMap, k: int) -> Membership:
    """Rebuild a Membership over a graph's label order from a label -> groups mapping"""
    matrix = np.zeros((len(labels), k), dtype=bool)
    for label, node_groups in groups.items():
        matrix[labels.index(label), node_groups] = True
    return Membership.from_bool_matrix(matrix)


def best_trace(traces: List[Trace]) -> Trace:
    """Chain with the highest MAP log-posterior; ties go to the lowest chain id"""
    return max(traces, key=lambda trace: (trace.map_state.log_posterior, -trace.chain_id))


def chains_agree(traces: List[Trace]) -> bool:
    first = traces[0].map_state.membership
    return all(trace.map_state.membership == first for trace in traces[1:])


def _chain_summary(trace: Trace, labels: LabelMap) -> ChainSummary:
    snapshots = None
    if any(record.membership is not None for record in trace.records):
        snapshots = [membership_by_label(record.membership, labels) for record in trace.records]
    return ChainSummary(
        chain_id=trace.chain_id,
        map_k=trace.map_state.k,
        map_log_posterior=trace.map_state.log_posterior,
        noops=trace.noops,
        acceptance={
            kind: AcceptanceStats(proposed=counter.proposed, accepted=counter.accepted, rate=counter.rate)
            for kind, counter in trace.counters.items()
        },
        record_steps=[record.step for record in trace.records],
        log_posterior_series=[record.log_posterior for record in trace.records],
        k_series=[record.k for record in trace.records],
        k_histogram=trace.k_histogram(),
        snapshots=snapshots,
    )


def build_map_structure(graph: Graph, labels: LabelMap, trace: Trace) -> MapStructure:
    state = ModelState(graph, trace.map_state.membership.copy())
    omega = omega_estimates(state.stats).tolist()
    return MapStructure(
        k=state.k,
        memberships=membership_by_label(state.membership, labels),
        group_sizes=state.stats.sizes.tolist(),
        pair_counts=state.stats.t.tolist(),
        edge_counts=state.stats.m.tolist(),
        omega_estimates=omega,
        log_posterior=state.log_posterior(),
        step=trace.map_state.step,
        chain_id=trace.chain_id,
        structure_type=classify_two_group(omega) if state.k == 2 else None,
        group_relations=[
            GroupRelationRead(first=rel.first, second=rel.second, relation=rel.relation)
            for rel in group_relations(state.membership)
        ],
    )


def build_result_document(graph: Graph, labels: LabelMap, traces: List[Trace], sampler_config: SamplerConfig,
                          input_file: str, input_format: str,
                          recovery: Optional[RecoveryReport] = None) -> ResultDocument:
    """
    Merge chain traces into one document: best MAP, per-chain summaries, edge labels.

    Args:
        graph: Fitted network
        labels: External labels of its nodes
        traces: One trace per chain, ordered by chain id
        sampler_config: Configuration shared by all chains
        input_file: Path recorded in the metadata
        input_format: edgelist or gml
        recovery: Optional comparison against a planted structure

    Returns:
        ResultDocument ready to serialize
    """
    best = best_trace(traces)
    agree = chains_agree(traces)
    if not agree:
        logger.warning(f"Chains disagree on the MAP structure; reporting chain {best.chain_id}")

    map_state = ModelState(graph, best.map_state.membership.copy())
    edge_groups = map_state.edge_group_labels()

    histogram: Dict[int, int] = {}
    for trace in traces:
        for k, count in trace.k_histogram().items():
            histogram[k] = histogram.get(k, 0) + count

    return ResultDocument(
        schema_version=SCHEMA_VERSION,
        metadata=ResultMetadata(
            input_file=input_file,
            input_format=input_format,
            config=sampler_config,
            seed=sampler_config.seed,
            chains=len(traces),
            version=config.VERSION,
            created_at=datetime.datetime.now(datetime.timezone.utc),
        ),
        map_structure=build_map_structure(graph, labels, best),
        trace=TraceSummary(
            k_histogram=dict(sorted(histogram.items())),
            chains_agree=agree,
            chains=[_chain_summary(trace, labels) for trace in traces],
        ),
        edge_labels=[
            EdgeLabel(source=labels.label(u), target=labels.label(v), group=int(group))
            for (u, v), group in zip(graph.edges, edge_groups)
        ],
        recovery=recovery,
    )


def write_result(document: ResultDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(document.model_dump_json(indent=2))
        handle.write("\n")
    logger.info(f"Result written to {path}")


def read_result(path: str) -> ResultDocument:
    """
    Load a result document.

    Raises:
        ResultFormatError: if the file is empty, not JSON, or not a valid document
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if not text.strip():
        raise ResultFormatError(f"Result file {path} is empty")
    try:
        json.loads(text)
        return ResultDocument.model_validate_json(text)
    except json.JSONDecodeError as e:
        raise ResultFormatError(f"Result file {path} is not valid JSON: {e}") from e
    except ValidationError as e:
        raise ResultFormatError(f"Result file {path} does not match the result schema: {e}") from e
