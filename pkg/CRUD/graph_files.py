"""
Readers and writers for network files: whitespace edge lists and a GML subset.
"""

import io
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, TextIO, Tuple, Union

from models.graph import Graph, LabelMap

logger = logging.getLogger(__name__)

Source = Union[str, TextIO]


class GraphFormatError(ValueError):
    """Malformed network file; `line` is set when the position is known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class LoadReport:
    """What the reader saw and what it discarded"""
    lines_read: int = 0
    edges_read: int = 0
    duplicate_edges: int = 0
    self_loops: int = 0
    isolated_nodes: int = 0


class LoadedGraph(NamedTuple):
    graph: Graph
    labels: LabelMap
    report: LoadReport


def _read_text(source: Source) -> str:
    return source if isinstance(source, str) else source.read()


def _build(labels: List[str], pairs: Iterable[Tuple[int, int]], report: LoadReport) -> LoadedGraph:
    seen = set()
    kept = []
    for u, v in pairs:
        report.edges_read += 1
        if u == v:
            report.self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            report.duplicate_edges += 1
            continue
        seen.add(key)
        kept.append(key)

    graph = Graph.from_edges(len(labels), kept)
    report.isolated_nodes = int((graph.degrees() == 0).sum()) if graph.n else 0
    if report.self_loops or report.duplicate_edges:
        logger.warning(f"Dropped {report.self_loops} self-loops and collapsed {report.duplicate_edges} duplicate edges")
    logger.info(f"Loaded graph with n={graph.n}, m={graph.m_total}")
    return LoadedGraph(graph, LabelMap.from_labels(labels), report)


def load_edge_list(source: Source) -> LoadedGraph:
    """
    Read a "LABEL LABEL" edge list; '#' lines and blank lines are skipped.

    Args:
        source: File object or the file contents as a string

    Returns:
        LoadedGraph(graph, labels, report)

    Raises:
        GraphFormatError: on a line without exactly two tokens, or empty input
    """
    report = LoadReport()
    index: Dict[str, int] = {}
    labels: List[str] = []
    pairs = []

    for number, raw in enumerate(io.StringIO(_read_text(source)), start=1):
        report.lines_read += 1
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected two node labels, found {len(tokens)} tokens", line=number)
        ends = []
        for token in tokens:
            if token not in index:
                index[token] = len(labels)
                labels.append(token)
            ends.append(index[token])
        pairs.append((ends[0], ends[1]))

    if not labels:
        raise GraphFormatError("empty input: no edges found")
    return _build(labels, pairs, report)


# -- GML ------------------------------------------------------------------------

_GML_TOKEN = re.compile(r'\s*(?:(\[)|(\])|"([^"]*)"|([^\s\[\]"]+))')


def _tokenize_gml(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    line = 1
    position = 0
    while position < len(text):
        match = _GML_TOKEN.match(text, position)
        if match is None or match.end() == position:
            if text[position:].strip():
                raise GraphFormatError("unterminated string", line=line)
            break
        line += text.count("\n", position, match.start(match.lastindex))
        if match.group(1):
            tokens.append(("open", "[", line))
        elif match.group(2):
            tokens.append(("close", "]", line))
        elif match.group(3) is not None:
            tokens.append(("string", match.group(3), line))
        else:
            tokens.append(("atom", match.group(4), line))
        line += text.count("\n", match.start(match.lastindex), match.end())
        position = match.end()
    return tokens


def _parse_gml_block(tokens: List[Tuple[str, str, int]], position: int, depth: int):
    entries = []
    while position < len(tokens):
        kind, value, line = tokens[position]
        if kind == "close":
            if depth == 0:
                raise GraphFormatError("unbalanced ']'", line=line)
            return entries, position + 1
        if kind != "atom":
            raise GraphFormatError(f"expected a key, found {value!r}", line=line)
        if position + 1 >= len(tokens):
            raise GraphFormatError(f"key '{value}' has no value", line=line)
        next_kind, next_value, next_line = tokens[position + 1]
        if next_kind == "open":
            block, position = _parse_gml_block(tokens, position + 2, depth + 1)
            entries.append((value, block, line))
        elif next_kind == "close":
            raise GraphFormatError(f"key '{value}' has no value", line=next_line)
        else:
            entries.append((value, next_value, line))
            position += 2
    if depth > 0:
        raise GraphFormatError("unbalanced '[': block never closed")
    return entries, position


def _gml_value(block, key: str, line: Optional[int] = None):
    for entry_key, value, _ in block:
        if entry_key == key:
            if isinstance(value, list):
                raise GraphFormatError(f"'{key}' must be a single value, not a block", line=line)
            return value
    return None


def load_gml(source: Source) -> LoadedGraph:
    """
    Read graph/node/edge blocks of a GML file (keys id, label, source, target).

    Nodes without a label are named by their id. Nodes that appear only in
    node blocks are kept as isolated nodes.

    Raises:
        GraphFormatError: on unbalanced brackets, missing ids or unknown edge endpoints
    """
    entries, _ = _parse_gml_block(_tokenize_gml(_read_text(source)), 0, 0)
    graph_block = next((value for key, value, _ in entries if key == "graph" and isinstance(value, list)), None)
    if graph_block is None:
        raise GraphFormatError("no graph block found")
    if str(_gml_value(graph_block, "directed")) == "1":
        logger.warning("GML graph is marked directed; edges are read as undirected")

    report = LoadReport()
    ids: Dict[str, int] = {}
    labels: List[str] = []
    pairs = []
    for key, value, line in graph_block:
        report.lines_read += 1
        if key != "node" or not isinstance(value, list):
            continue
        node_id = _gml_value(value, "id", line)
        if node_id is None:
            raise GraphFormatError("node block without id", line=line)
        if node_id in ids:
            raise GraphFormatError(f"duplicate node id {node_id}", line=line)
        label = _gml_value(value, "label", line)
        ids[node_id] = len(labels)
        labels.append(node_id if label is None else label)

    if len(set(labels)) != len(labels):
        raise GraphFormatError("node labels are not unique")

    for key, value, line in graph_block:
        if key != "edge" or not isinstance(value, list):
            continue
        ends = []
        for end in ("source", "target"):
            node_id = _gml_value(value, end, line)
            if node_id is None:
                raise GraphFormatError(f"edge block without {end}", line=line)
            if node_id not in ids:
                raise GraphFormatError(f"edge references unknown node id {node_id}", line=line)
            ends.append(ids[node_id])
        pairs.append((ends[0], ends[1]))

    if not labels:
        raise GraphFormatError("empty input: no nodes found")
    return _build(labels, pairs, report)


def load_graph(path: str, fmt: str = "edgelist") -> LoadedGraph:
    """Open a network file and read it in the given format ('edgelist' or 'gml')"""
    with open(path, "rb") as handle:
        raw = handle.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw.count(b"\n", 0, e.start) + 1
        raise GraphFormatError(f"{path} is not valid UTF-8 (byte offset {e.start})", line=line) from e
    if fmt == "gml":
        return load_gml(text)
    return load_edge_list(text)


def write_edge_list(graph: Graph, labels: LabelMap, stream: TextIO) -> None:
    """Write one "LABEL LABEL" line per edge, in canonical edge order"""
    for u, v in graph.edges:
        stream.write(f"{labels.label(u)} {labels.label(v)}\n")
