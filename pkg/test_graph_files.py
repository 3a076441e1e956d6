import io

import pytest

from CRUD.graph_files import GraphFormatError, load_edge_list, load_gml, write_edge_list
from models.graph import Graph, LabelMap, num_pairs


def _label_edges(graph, labels):
    return {frozenset((labels.label(u), labels.label(v))) for u, v in graph.edges}


class TestEdgeList:
    def test_simple_path(self):
        graph, labels, _ = load_edge_list("a b\nb c")
        assert graph.n == 3
        assert set(graph.edges) == {(0, 1), (1, 2)}
        assert labels.backward == ["a", "b", "c"]

    def test_duplicates_and_self_loops_are_reported(self):
        graph, _, report = load_edge_list("a b\nb a\na a")
        assert graph.n == 2
        assert graph.edges == ((0, 1),)
        assert report.duplicate_edges == 1
        assert report.self_loops == 1

    def test_single_token_line_is_a_parse_error(self):
        with pytest.raises(GraphFormatError) as excinfo:
            load_edge_list("x")
        assert excinfo.value.line == 1

    def test_error_reports_the_offending_line(self):
        with pytest.raises(GraphFormatError) as excinfo:
            load_edge_list("a b\n# comment\nc d e\n")
        assert excinfo.value.line == 3

    def test_empty_input_is_an_error(self):
        with pytest.raises(GraphFormatError):
            load_edge_list("")
        with pytest.raises(GraphFormatError):
            load_edge_list("# only a comment\n\n")

    def test_comments_and_blank_lines_are_skipped(self):
        graph, labels, _ = load_edge_list("# header\n\n10 20\n  \n20 30\n")
        assert graph.m_total == 2
        assert labels.index("10") == 0

    def test_labels_are_strings_not_indices(self):
        graph, labels, _ = load_edge_list("7 3\n3 100")
        assert labels.backward == ["7", "3", "100"]
        assert graph.has_edge(labels.index("3"), labels.index("100"))

    def test_reads_file_objects(self):
        graph, _, _ = load_edge_list(io.StringIO("a b\nc d\n"))
        assert graph.n == 4 and graph.m_total == 2

    def test_round_trip_through_writer(self):
        text = "a b\nb c\nc a\nd a\ne f\nf e\n"
        graph, labels, _ = load_edge_list(text)
        buffer = io.StringIO()
        write_edge_list(graph, labels, buffer)
        again, again_labels, _ = load_edge_list(buffer.getvalue())
        assert again.m_total == graph.m_total
        assert _label_edges(again, again_labels) == _label_edges(graph, labels)

    def test_degree_sum_is_twice_edge_count(self):
        graph, _, _ = load_edge_list("a b\nb c\nc d\nd a\na c\n")
        assert graph.degrees().sum() == 2 * graph.m_total


MINIMAL_GML = """
graph [
  node [ id 0 label "alpha" ]
  node [ id 1 label "beta" ]
  edge [ source 0 target 1 ]
]
"""


class TestGml:
    def test_minimal_graph(self):
        graph, labels, _ = load_gml(MINIMAL_GML)
        assert graph.n == 2
        assert graph.m_total == 1
        assert labels.backward == ["alpha", "beta"]

    def test_unknown_edge_endpoint_names_the_id(self):
        text = 'graph [ node [ id 1 ] edge [ source 42 target 1 ] ]'
        with pytest.raises(GraphFormatError, match="42"):
            load_gml(text)

    def test_missing_label_falls_back_to_id(self):
        graph, labels, _ = load_gml('graph [ node [ id 5 ] node [ id 7 label "x" ] edge [ source 5 target 7 ] ]')
        assert labels.label(0) == "5"
        assert labels.label(1) == "x"

    def test_isolated_nodes_are_kept(self):
        text = 'graph [ node [ id 0 ] node [ id 1 ] node [ id 2 ] edge [ source 0 target 1 ] ]'
        graph, _, report = load_gml(text)
        assert graph.n == 3
        assert report.isolated_nodes == 1

    def test_unbalanced_brackets(self):
        with pytest.raises(GraphFormatError):
            load_gml('graph [ node [ id 0 ]')
        with pytest.raises(GraphFormatError):
            load_gml('graph [ node [ id 0 ] ] ]')

    def test_duplicates_and_loops_canonicalized(self):
        text = """graph [
          node [ id 0 ] node [ id 1 ]
          edge [ source 0 target 1 ] edge [ source 1 target 0 ] edge [ source 1 target 1 ]
        ]"""
        graph, _, report = load_gml(text)
        assert graph.edges == ((0, 1),)
        assert report.duplicate_edges == 1
        assert report.self_loops == 1

    @pytest.mark.parametrize("text", [
        "graph [ node [ id [ x 1 ] ] ]",
        "graph [ node [ id 0 label [ a b ] ] ]",
        "graph [ node [ id 0 ] node [ id 1 ] edge [ source [ id 0 ] target 1 ] ]",
    ])
    def test_block_where_a_value_belongs(self, text):
        with pytest.raises(GraphFormatError) as excinfo:
            load_gml(text)
        assert excinfo.value.line == 1

    def test_quoted_values_with_spaces_and_extra_keys(self):
        text = """Creator "someone on a day"
        graph [ directed 0
          node [ id 0 label "New York" value "l" ]
          node [ id 1 label "Los Angeles" ]
          edge [ source 0 target 1 value 3 ]
        ]"""
        graph, labels, _ = load_gml(text)
        assert labels.backward == ["New York", "Los Angeles"]
        assert graph.m_total == 1


class TestGraphModel:
    @pytest.mark.parametrize("n,expected", [(2, 1), (5, 10), (0, 0)])
    def test_num_pairs(self, n, expected):
        assert num_pairs(Graph.from_edges(n, [])) == expected

    def test_adjacency_is_symmetric_and_sorted(self):
        graph = Graph.from_edges(4, [(3, 0), (2, 0), (1, 2)])
        for u in range(graph.n):
            assert list(graph.adjacency[u]) == sorted(graph.adjacency[u])
            for v in graph.adjacency[u]:
                assert u in graph.adjacency[v]
        assert all(u < v for u, v in graph.edges)

    def test_label_map_must_be_a_bijection(self):
        with pytest.raises(ValueError):
            LabelMap.from_labels(["a", "b", "a"])
