import os

import pytest
from hypothesis import HealthCheck, settings

from gedgm.models.cost import CostModel, SubstitutionCost
from gedgm.schemas.solver import SolverConfig
from tests.strategies import make_graph

settings.register_profile(
    "default", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("fast", max_examples=5, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def unit_costs():
    """Euclidean substitutions, all deletions and insertions cost 1"""
    return CostModel()


@pytest.fixture
def cfg():
    return SolverConfig()


@pytest.fixture
def one_vertex_pair():
    """Single vertices at 0 and 3: substitution 3 against deletion + insertion 2"""
    return make_graph([(0.0,)]), make_graph([(3.0,)])


@pytest.fixture
def edge_pair():
    """Two identical 2-vertex graphs joined by one undirected edge"""
    graph = make_graph([(0.0,), (1.0,)], [(0, 1)], [(0.5,)])
    return graph, graph


@pytest.fixture
def zero_sub_costs():
    return CostModel(vertex_sub=SubstitutionCost.constant(0.0), edge_sub=SubstitutionCost.constant(0.0))


@pytest.fixture
def write_json(tmp_path):
    """Write text to a file under tmp_path and return its path as a string"""

    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
