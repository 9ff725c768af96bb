import json

import numpy as np
import pytest
from hypothesis import given

from gedgm.core.exceptions import GraphParseError, GraphValidationError, SizeLimitError
from gedgm.models.assignment import Assignment
from gedgm.services.graph_service import (
    check_assignment,
    count_assignments,
    enumerate_assignments,
    generate_random_graph,
    parse_graph,
    serialize_graph,
)
from tests.strategies import graphs, make_graph


def graph_text(vertices, edges=(), directed=False):
    return json.dumps(
        {
            "directed": directed,
            "vertices": [{"id": vid, "attrs": attrs} for vid, attrs in vertices],
            "edges": [{"source": s, "target": t, "attrs": attrs} for s, t, attrs in edges],
        }
    )


class TestParseGraph:
    def test_minimal_graph(self):
        graph = parse_graph(graph_text([("a", [0.0]), ("b", [1.0])], [("a", "b", [2.0])]))
        assert graph.num_vertices == 2
        assert graph.num_edges == 1
        assert graph.edges == ((0, 1),)

    def test_empty_graph(self):
        graph = parse_graph('{"directed": false, "vertices": [], "edges": []}')
        assert graph.num_vertices == 0
        assert graph.num_edges == 0

    def test_undirected_edges_are_canonical(self):
        graph = parse_graph(graph_text([("a", []), ("b", [])], [("b", "a", [])]))
        assert graph.edges == ((0, 1),)
        assert graph.edge_index(1, 0) == 0

    def test_parallel_undirected_edge(self):
        text = graph_text([("a", []), ("b", [])], [("a", "b", []), ("b", "a", [])])
        with pytest.raises(GraphValidationError, match="parallel edge"):
            parse_graph(text)

    def test_directed_antiparallel_edges_allowed(self):
        text = graph_text([("a", []), ("b", [])], [("a", "b", []), ("b", "a", [])], directed=True)
        graph = parse_graph(text)
        assert graph.edges == ((0, 1), (1, 0))
        assert graph.edge_index(1, 0) == 1

    def test_self_loop(self):
        with pytest.raises(GraphValidationError, match="self-loop"):
            parse_graph(graph_text([("a", [])], [("a", "a", [])]))

    def test_duplicate_vertex_id(self):
        with pytest.raises(GraphValidationError, match="duplicate vertex id"):
            parse_graph(graph_text([("a", []), ("a", [])]))

    def test_bad_endpoint(self):
        with pytest.raises(GraphValidationError, match="bad endpoint"):
            parse_graph(graph_text([("a", [])], [("a", "z", [])]))

    def test_mixed_attribute_lengths(self):
        with pytest.raises(GraphValidationError, match="mixed lengths"):
            parse_graph(graph_text([("a", [0.0]), ("b", [0.0, 1.0])]))

    def test_malformed_json_reports_line(self):
        with pytest.raises(GraphParseError) as info:
            parse_graph('{\n"vertices": [\n')
        assert info.value.line is not None
        assert info.value.exit_code == 2

    def test_schema_violation_reports_field(self):
        with pytest.raises(GraphParseError) as info:
            parse_graph('{"vertices": [{"id": "a", "attrs": ["x"]}]}')
        assert info.value.field.startswith("vertices.0.attrs")

    def test_unknown_key_rejected(self):
        with pytest.raises(GraphParseError):
            parse_graph('{"vertices": [], "colour": "red"}')

    def test_non_finite_attribute_rejected(self):
        with pytest.raises(GraphParseError):
            parse_graph('{"vertices": [{"id": "a", "attrs": [NaN]}]}')

    @pytest.mark.parametrize(
        "text",
        [
            '{"directed": "yes", "vertices": []}',
            '{"directed": 1, "vertices": []}',
            '{"vertices": [{"id": "a", "attrs": ["1.5"]}]}',
            '{"vertices": [{"id": "a", "attrs": [true]}]}',
            '{"vertices": [{"id": 7}]}',
        ],
    )
    def test_no_type_coercion(self, text):
        with pytest.raises(GraphParseError):
            parse_graph(text)

    def test_integer_attributes_accepted(self):
        graph = parse_graph('{"vertices": [{"id": "a", "attrs": [2]}]}')
        assert graph.vertex_attrs == ((2.0,),)


@given(graphs(max_vertices=6))
def test_serialize_round_trip(graph):
    assert parse_graph(serialize_graph(graph)) == graph


class TestCheckAssignment:
    g2x2 = make_graph([(0.0,), (1.0,)])

    def test_empty_assignment(self):
        assert check_assignment(Assignment.empty(), self.g2x2, self.g2x2)

    def test_column_used_twice(self):
        assert not check_assignment(Assignment.from_pairs([(0, 0), (1, 0)]), self.g2x2, self.g2x2)

    def test_permutation(self):
        assert check_assignment(Assignment.from_pairs([(0, 1), (1, 0)]), self.g2x2, self.g2x2)

    def test_out_of_range(self):
        assert not check_assignment(Assignment.from_pairs([(0, 2)]), self.g2x2, self.g2x2)


class TestEnumerateAssignments:
    @pytest.mark.parametrize(
        "n1, n2, expected",
        [(0, 0, 1), (0, 3, 1), (1, 1, 2), (2, 2, 7), (3, 2, 13), (6, 6, 13327)],
    )
    def test_count_formula(self, n1, n2, expected):
        assert count_assignments(n1, n2) == expected

    @pytest.mark.parametrize("n1, n2", [(0, 2), (1, 1), (2, 2), (2, 3), (3, 3), (4, 2)])
    def test_each_map_exactly_once(self, n1, n2):
        g1 = make_graph([(0.0,)] * n1)
        g2 = make_graph([(0.0,)] * n2)
        found = list(enumerate_assignments(g1, g2))
        assert len(found) == count_assignments(n1, n2)
        assert len(set(found)) == len(found)
        assert all(check_assignment(a, g1, g2) for a in found)
        assert Assignment.empty() in found

    def test_lexicographic_order(self):
        g = make_graph([(0.0,)] * 3)
        keys = [a.key(3, 3) for a in enumerate_assignments(g, g)]
        assert keys == sorted(keys)
        assert keys[0] == (0, 1, 2)
        assert keys[-1] == (3, 3, 3)

    def test_size_limit(self):
        big = make_graph([(0.0,)] * 5)
        with pytest.raises(SizeLimitError):
            enumerate_assignments(big, big, limit=4)


class TestGenerateRandomGraph:
    def test_seeded_generation_is_reproducible(self):
        first = generate_random_graph(6, 0.5, np.random.default_rng(7), directed=True)
        second = generate_random_graph(6, 0.5, np.random.default_rng(7), directed=True)
        assert first == second

    def test_attributes_in_unit_interval(self):
        graph = generate_random_graph(8, 0.3, np.random.default_rng(1), attr_dim=3)
        assert all(len(attrs) == 3 for attrs in graph.vertex_attrs)
        assert all(0.0 <= x < 1.0 for attrs in graph.vertex_attrs for x in attrs)

    def test_complete_and_empty_topologies(self):
        rng = np.random.default_rng(0)
        assert generate_random_graph(5, 1.0, rng).num_edges == 10
        assert generate_random_graph(5, 0.0, rng).num_edges == 0
