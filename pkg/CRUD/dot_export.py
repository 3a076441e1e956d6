"""
Graphviz DOT rendering of a fitted structure: edges colored by the group they
belong to, nodes shaded by their highest group.
"""

import logging
from typing import List, TextIO

from models.graph import Graph, LabelMap
from models.state import ModelState
from Evaluation.structure import core_of_node
from CRUD.result_files import ResultFormatError, membership_from_labels
from schemas.result import ResultDocument

logger = logging.getLogger(__name__)

# Colors repeat after 12 groups
PALETTE = [
    "#e6b800", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#ff7f0e", "#393b79",
]


def group_color(group: int) -> str:
    return PALETTE[group % len(PALETTE)]


def _quote(label: str) -> str:
    escaped = label.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def check_labels(document: ResultDocument, labels: LabelMap) -> None:
    """
    Raises:
        ResultFormatError: listing labels present on only one side
    """
    in_result = set(document.map_structure.memberships)
    in_graph = set(labels.backward)
    if in_result != in_graph:
        only_result = sorted(in_result - in_graph)
        only_graph = sorted(in_graph - in_result)
        raise ResultFormatError(
            f"Result and graph node labels differ: only in result {only_result}, only in graph {only_graph}"
        )
    k = document.map_structure.k
    for label, groups in document.map_structure.memberships.items():
        if 0 not in groups or any(not 0 <= g < k for g in groups):
            raise ResultFormatError(f"Node {label} has invalid groups {groups} for k={k}")


def render_dot(document: ResultDocument, graph: Graph, labels: LabelMap) -> str:
    """Build the DOT text; identical inputs give identical output"""
    check_labels(document, labels)
    membership = membership_from_labels(document.map_structure.memberships, labels, document.map_structure.k)
    state = ModelState(graph, membership)
    edge_groups = state.edge_group_labels()
    node_groups = core_of_node(membership)

    lines: List[str] = [
        "graph hiercore {",
        "  node [style=filled, shape=circle, fontsize=8];",
    ]
    for u in range(graph.n):
        lines.append(f"  {_quote(labels.label(u))} [fillcolor=\"{group_color(int(node_groups[u]))}\", "
                     f"group={int(node_groups[u])}];")
    for (u, v), group in zip(graph.edges, edge_groups):
        lines.append(f"  {_quote(labels.label(u))} -- {_quote(labels.label(v))} "
                     f"[color=\"{group_color(int(group))}\", comment=\"group {int(group)}\"];")
    lines.append("}")
    logger.info(f"Rendered DOT with {graph.n} nodes and {graph.m_total} edges over {membership.k} groups")
    return "\n".join(lines) + "\n"


def write_dot(document: ResultDocument, graph: Graph, labels: LabelMap, stream: TextIO) -> None:
    stream.write(render_dot(document, graph, labels))
