import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gedgm.core.exceptions import GraphValidationError, InfeasibleAssignmentError
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel, SubstitutionCost
from gedgm.services.cost_service import build_cost_tables, edit_path_cost, induce_edit_path
from gedgm.services.graph_service import generate_random_graph
from gedgm.services.similarity_service import (
    build_affinity_matrix,
    build_similarity,
    ged_value_from_score,
    gm_score,
    recover_substitution_costs,
    similarity_from_document,
    similarity_to_document,
)
from tests.strategies import assignments, graph_pairs, make_graph


class TestBuildSimilarity:
    def test_costly_substitution(self, unit_costs, one_vertex_pair):
        sim = build_similarity(unit_costs, *one_vertex_pair)
        assert sim.vertex_sim.tolist() == [[-1.0]]
        assert sim.gamma == 2.0

    def test_free_substitution(self, zero_sub_costs, one_vertex_pair):
        sim = build_similarity(zero_sub_costs, *one_vertex_pair)
        assert sim.vertex_sim.tolist() == [[2.0]]

    def test_all_zero_costs(self, edge_pair):
        zero = SubstitutionCost.constant(0.0)
        model = CostModel(zero, 0.0, 0.0, zero, 0.0, 0.0)
        sim = build_similarity(model, *edge_pair)
        assert not sim.vertex_sim.any()
        assert all(value == 0.0 for value in sim.edge_sim.values())
        assert sim.gamma == 0.0

    def test_identical_edge_pair(self, unit_costs, edge_pair):
        sim = build_similarity(unit_costs, *edge_pair)
        assert sim.vertex_sim.tolist() == [[2.0, 1.0], [1.0, 2.0]]
        assert sim.edge_sim == {(0, 0, 0): 2.0, (0, 0, 1): 2.0}
        assert sim.gamma == 6.0

    def test_directed_has_one_orientation(self, unit_costs):
        g = make_graph([(0.0,), (1.0,)], [(0, 1)], directed=True)
        assert set(build_similarity(unit_costs, g, g).edge_sim) == {(0, 0, 0)}

    def test_mixed_directedness(self, unit_costs):
        undirected = make_graph([(0.0,)])
        directed = make_graph([(0.0,)], directed=True)
        with pytest.raises(GraphValidationError):
            build_similarity(unit_costs, undirected, directed)


class TestGmScore:
    def test_empty_assignment(self, unit_costs, edge_pair):
        assert gm_score(build_similarity(unit_costs, *edge_pair), Assignment.empty()) == 0.0

    def test_identity_on_identical_graphs(self, zero_sub_costs, edge_pair):
        sim = build_similarity(zero_sub_costs, *edge_pair)
        score = gm_score(sim, Assignment.from_pairs([(0, 0), (1, 1)]))
        assert score == 6.0
        assert ged_value_from_score(sim, score) == 0.0

    def test_single_costly_substitution(self, unit_costs, one_vertex_pair):
        sim = build_similarity(unit_costs, *one_vertex_pair)
        assert gm_score(sim, Assignment.from_pairs([(0, 0)])) == -1.0
        assert ged_value_from_score(sim, 0.0) == 2.0

    def test_infeasible_assignment(self, unit_costs, edge_pair):
        sim = build_similarity(unit_costs, *edge_pair)
        with pytest.raises(InfeasibleAssignmentError):
            gm_score(sim, Assignment.from_pairs([(0, 1), (1, 1)]))


def test_core_identity_on_seeded_samples():
    """Edit cost of the induced path equals gamma minus the matching score"""
    rng = np.random.default_rng(2024)
    models = [
        CostModel(),
        CostModel(vertex_sub=SubstitutionCost.euclidean(2.0, 0.5), vertex_del=0.7, vertex_ins=1.3),
        CostModel(vertex_sub=SubstitutionCost.constant(3.0), edge_sub=SubstitutionCost.constant(0.2)),
    ]
    worst = 0.0
    for sample in range(1000):
        directed = bool(sample % 2)
        g1 = generate_random_graph(int(rng.integers(0, 7)), 0.5, rng, directed=directed)
        g2 = generate_random_graph(int(rng.integers(0, 7)), 0.5, rng, directed=directed)
        targets = rng.permutation(g2.num_vertices)
        keep = rng.random(g1.num_vertices) < 0.7
        assignment = Assignment.from_pairs(
            (i, int(k)) for i, k in zip(range(g1.num_vertices), targets) if keep[i]
        )
        model = models[sample % len(models)]

        sim = build_similarity(model, g1, g2)
        cost = edit_path_cost(model, induce_edit_path(assignment, g1, g2), g1, g2)
        worst = max(worst, abs(cost - ged_value_from_score(sim, gm_score(sim, assignment))))
    assert worst <= 1e-9


@given(st.data())
def test_affinity_quadratic_form_is_score(data):
    g1, g2 = data.draw(graph_pairs())
    assignment = Assignment.from_pairs(data.draw(assignments(g1.num_vertices, g2.num_vertices)))
    sim = build_similarity(CostModel(), g1, g2)

    affinity = build_affinity_matrix(sim)
    assert affinity.shape == (g1.num_vertices * g2.num_vertices,) * 2
    y = assignment.to_matrix(g1.num_vertices, g2.num_vertices).flatten(order="F")
    assert float(y @ (affinity @ y)) == pytest.approx(gm_score(sim, assignment), abs=1e-9)


@given(graph_pairs())
def test_recover_substitution_costs(pair):
    g1, g2 = pair
    model = CostModel(vertex_del=0.5, vertex_ins=2.0, edge_del=1.5, edge_ins=0.25)
    sim = build_similarity(model, g1, g2)
    tables = build_cost_tables(model, g1, g2)

    vertex_sub, edge_sub = recover_substitution_costs(sim, model)
    np.testing.assert_allclose(
        vertex_sub, np.asarray(tables.vertex_sub).reshape(g1.num_vertices, g2.num_vertices), atol=1e-12
    )
    for (e, f, _), value in edge_sub.items():
        assert value == pytest.approx(tables.edge_sub[e][f], abs=1e-12)


class TestSimilarityDocument:
    def test_round_trip(self, unit_costs, edge_pair):
        g1, g2 = edge_pair
        sim = build_similarity(unit_costs, g1, g2)
        document = similarity_to_document(sim, g1, g2)
        restored = similarity_from_document(document, g1, g2)
        assert restored.gamma == sim.gamma
        assert restored.edge_sim == sim.edge_sim
        np.testing.assert_array_equal(restored.vertex_sim, sim.vertex_sim)

    def test_empty_graph_keeps_shape(self, unit_costs):
        g1, g2 = make_graph([]), make_graph([(0.0,), (1.0,)])
        restored = similarity_from_document(similarity_to_document(build_similarity(unit_costs, g1, g2), g1, g2), g1, g2)
        assert restored.vertex_sim.shape == (0, 2)

    def test_dump_for_other_graphs_rejected(self, unit_costs, edge_pair, one_vertex_pair):
        document = similarity_to_document(build_similarity(unit_costs, *edge_pair), *edge_pair)
        with pytest.raises(GraphValidationError):
            similarity_from_document(document, *one_vertex_pair)
