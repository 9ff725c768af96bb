import json
from pathlib import Path

import pytest

from gedgm.db.file_store import load_report
from gedgm.main import main
from gedgm.services.graph_service import serialize_graph
from tests.strategies import make_graph

ZERO_SUB_COST = json.dumps(
    {"vertex_sub": {"type": "constant", "value": 0}, "edge_sub": {"type": "constant", "value": 0}}
)
ALL_ZERO_COST = json.dumps(
    {
        "vertex_sub": {"type": "constant", "value": 0},
        "vertex_del": 0,
        "vertex_ins": 0,
        "edge_sub": {"type": "constant", "value": 0},
        "edge_del": 0,
        "edge_ins": 0,
    }
)


@pytest.fixture
def files(write_json, one_vertex_pair, edge_pair):
    g1, g2 = one_vertex_pair
    return {
        "u": write_json("u.json", serialize_graph(g1)),
        "v": write_json("v.json", serialize_graph(g2)),
        "pair": write_json("pair.json", serialize_graph(edge_pair[0])),
        "empty": write_json("empty.json", serialize_graph(make_graph([]))),
        "directed": write_json("directed.json", serialize_graph(make_graph([(0.0,)], directed=True))),
        "unit": write_json("unit.json", "{}"),
        "zero_sub": write_json("zero_sub.json", ZERO_SUB_COST),
        "zero": write_json("zero.json", ALL_ZERO_COST),
    }


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGed:
    def test_identical_graphs(self, capsys, files):
        code, out, _ = run(capsys, "ged", files["pair"], files["pair"], "--cost", files["unit"], "--solver", "oracle")
        assert code == 0
        document = json.loads(out)
        assert document["ged_value"] == 0.0
        assert document["status"] == "optimal"
        assert document["gamma"] == 6.0

    def test_one_vertex_bnb(self, capsys, files):
        code, out, _ = run(capsys, "ged", files["u"], files["v"], "--cost", files["unit"], "--solver", "bnb")
        assert code == 0
        document = json.loads(out)
        assert document["ged_value"] == 2.0
        assert document["assignment"] == []
        assert [op["kind"] for op in document["edit_path"]] == ["vertex-deletion", "vertex-insertion"]
        assert document["edit_path_cost"] == 2.0

    @pytest.mark.parametrize("solver", ["bipartite", "ipfp"])
    def test_heuristic_solvers(self, capsys, files, solver):
        code, out, _ = run(capsys, "ged", files["u"], files["v"], "--solver", solver)
        assert code == 0
        assert json.loads(out)["status"] == "heuristic"

    def test_ipfp_warm_start(self, capsys, files):
        code, out, _ = run(
            capsys, "ged", files["pair"], files["pair"], "--solver", "ipfp", "--warm-start", "bipartite"
        )
        assert code == 0
        document = json.loads(out)
        assert document["ged_value"] == 0.0
        assert document["stats"]["solver"] == "ipfp"

    def test_warm_start_needs_ipfp(self, capsys, files):
        code, _, err = run(capsys, "ged", files["u"], files["v"], "--solver", "bnb", "--warm-start", "bipartite")
        assert code == 3
        assert "ipfp" in err

    def test_unknown_solver(self, capsys, files):
        code, _, err = run(capsys, "ged", files["u"], files["v"], "--solver", "magic")
        assert code == 5
        assert "oracle, bnb, bipartite, ipfp" in err

    def test_missing_file(self, capsys, files, tmp_path):
        code, _, err = run(capsys, "ged", str(tmp_path / "nope.json"), files["v"])
        assert code == 2
        assert "not found" in err

    def test_parse_error(self, capsys, files, write_json):
        broken = write_json("broken.json", '{"vertices": [')
        code, _, _ = run(capsys, "ged", broken, files["v"])
        assert code == 2

    def test_bad_cost_file(self, capsys, files, write_json):
        cost = write_json("cost.json", '{"vertex_del": -2}')
        assert run(capsys, "ged", files["u"], files["v"], "--cost", cost)[0] == 2

    def test_validation_error(self, capsys, files):
        assert run(capsys, "ged", files["u"], files["directed"])[0] == 3

    def test_size_limit(self, capsys, files):
        code, _, _ = run(capsys, "ged", files["pair"], files["pair"], "--solver", "oracle", "--oracle-limit", "1")
        assert code == 4

    def test_invalid_time_limit(self, capsys, files):
        assert run(capsys, "ged", files["u"], files["v"], "--time-limit", "0")[0] == 3

    def test_table_format(self, capsys, files):
        code, out, _ = run(capsys, "ged", files["u"], files["v"], "--format", "table")
        assert code == 0
        assert "GED:       2.0" in out
        assert "u0 -> eps" in out

    def test_output_file(self, capsys, files, tmp_path):
        target = tmp_path / "result.json"
        code, out, _ = run(capsys, "ged", files["u"], files["v"], "--output", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["ged_value"] == 2.0


class TestGm:
    def test_derived_distance(self, capsys, files):
        code, out, _ = run(capsys, "gm", files["u"], files["v"], "--cost", files["unit"])
        assert code == 0
        document = json.loads(out)
        assert document["gm_score"] == 0.0
        assert document["ged_value"] == 2.0

    def test_from_similarity_dump(self, capsys, files, tmp_path):
        dump = tmp_path / "sim.json"
        assert run(capsys, "transform", files["pair"], files["pair"], "--output", str(dump))[0] == 0
        code, out, _ = run(capsys, "gm", files["pair"], files["pair"], "--similarity", str(dump), "--solver", "oracle")
        assert code == 0
        document = json.loads(out)
        assert document["ged_value"] == 0.0
        assert document["edit_path_cost"] is None

    def test_pure_gm(self, capsys, files):
        code, out, _ = run(capsys, "gm", files["u"], files["v"], "--pure-gm")
        assert code == 0
        document = json.loads(out)
        assert document["gamma"] == 0.0
        assert document["gm_score"] == 0.0

    def test_non_finite_similarity_dump(self, capsys, files, tmp_path):
        dump = tmp_path / "sim.json"
        run(capsys, "transform", files["u"], files["v"], "--output", str(dump))
        document = json.loads(dump.read_text())
        document["vertex_sim"] = [[float("nan")]]
        dump.write_text(json.dumps(document))
        code, out, _ = run(capsys, "gm", files["u"], files["v"], "--similarity", str(dump))
        assert code == 2
        assert out == ""

    def test_ipfp_warm_start(self, capsys, files):
        code, out, _ = run(capsys, "gm", files["u"], files["v"], "--solver", "ipfp", "--warm-start", "bipartite")
        assert code == 0
        assert json.loads(out)["ged_value"] == 2.0

    def test_warm_start_needs_costs(self, capsys, files, tmp_path):
        dump = tmp_path / "sim.json"
        run(capsys, "transform", files["u"], files["v"], "--output", str(dump))
        code, _, _ = run(
            capsys, "gm", files["u"], files["v"], "--similarity", str(dump), "--solver", "ipfp", "--warm-start", "bipartite"
        )
        assert code == 2

    def test_similarity_and_cost_conflict(self, capsys, files):
        code, _, _ = run(capsys, "gm", files["u"], files["v"], "--similarity", files["unit"], "--cost", files["unit"])
        assert code == 2

    def test_bnb_is_not_a_gm_solver(self, capsys, files):
        code, _, err = run(capsys, "gm", files["u"], files["v"], "--solver", "bnb")
        assert code == 5
        assert "oracle, ipfp" in err


class TestTransform:
    def test_one_vertex(self, capsys, files):
        code, out, _ = run(capsys, "transform", files["u"], files["v"], "--cost", files["unit"])
        assert code == 0
        document = json.loads(out)
        assert document["vertex_sim"] == [[-1.0]]
        assert document["gamma"] == 2.0

    def test_all_zero_costs(self, capsys, files):
        document = json.loads(run(capsys, "transform", files["pair"], files["pair"], "--cost", files["zero"])[1])
        assert document["gamma"] == 0.0
        assert document["vertex_sim"] == [[0.0, 0.0], [0.0, 0.0]]
        assert all(entry["value"] == 0.0 for entry in document["edge_sim"])

    def test_identical_edge_pair(self, capsys, files):
        document = json.loads(run(capsys, "transform", files["pair"], files["pair"], "--cost", files["zero_sub"])[1])
        assert document["gamma"] == 6.0
        assert document["vertex_sim"] == [[2.0, 2.0], [2.0, 2.0]]
        assert [entry["value"] for entry in document["edge_sim"]] == [2.0, 2.0]


class TestExportLp:
    def test_deterministic_bytes(self, capsys, files, tmp_path):
        first, second = tmp_path / "a.lp", tmp_path / "b.lp"
        for target in (first, second):
            assert run(capsys, "export-lp", files["pair"], files["u"], "--output", str(target))[0] == 0
        assert first.read_bytes() == second.read_bytes()

    def test_empty_second_graph(self, capsys, files, tmp_path):
        target = tmp_path / "empty.lp"
        assert run(capsys, "export-lp", files["pair"], files["empty"], "--output", str(target))[0] == 0
        text = target.read_text()
        assert "\\* gamma = 3.0 *\\" in text
        assert "Binary" not in text
        sidecar = json.loads(Path(f"{target}.json").read_text())
        assert sidecar == {"model": "F2", "gamma": 3.0, "variable_count": 0, "constraint_count": 2}

    def test_counts_match_model(self, capsys, files, tmp_path):
        target = tmp_path / "pair.lp"
        run(capsys, "export-lp", files["pair"], files["pair"], "--output", str(target))
        sidecar = json.loads(Path(f"{target}.json").read_text())
        # 4 y variables and z variables for both orientations of the single edge pair
        assert sidecar["variable_count"] == 6

    def test_f1(self, capsys, files, tmp_path):
        target = tmp_path / "f1.lp"
        assert run(capsys, "export-lp", files["pair"], files["pair"], "--output", str(target), "--formulation", "f1")[0] == 0
        assert json.loads(Path(f"{target}.json").read_text())["model"] == "F1"
        assert "gamma" not in target.read_text()


class TestEquivalenceAndGen:
    def test_generated_dataset(self, capsys, tmp_path):
        report_path = tmp_path / "report.csv"
        code, out, _ = run(
            capsys, "equivalence", "--count", "3", "--min-vertices", "1", "--max-vertices", "4",
            "--seed", "5", "--workers", "2", "--output", str(report_path),
        )
        assert code == 0
        assert "mean |difference|" in out
        report = load_report(report_path)
        assert len(report.rows) == 9
        assert report.parameters["seed"] == "5"
        assert report.max_abs_difference <= 1e-9

    def test_machine_format(self, capsys):
        code, out, _ = run(capsys, "equivalence", "--count", "2", "--max-vertices", "3", "--format", "machine")
        assert code == 0
        assert out.startswith("# count=2")

    def test_warm_started_ipfp(self, capsys, tmp_path):
        report_path = tmp_path / "report.csv"
        code, _, _ = run(
            capsys, "equivalence", "--count", "3", "--max-vertices", "4", "--warm-start", "bipartite",
            "--output", str(report_path),
        )
        assert code == 0
        report = load_report(report_path)
        assert report.parameters["ipfp_start"] == "bipartite"
        assert all(row.ipfp_ged >= row.exact_ged - 1e-9 for row in report.included)

    def test_gen_then_dataset(self, capsys, tmp_path):
        dataset = tmp_path / "graphs"
        code, out, _ = run(capsys, "gen", "--output", str(dataset), "--count", "2", "--max-vertices", "4", "--seed", "3")
        assert code == 0
        assert sorted(p.name for p in dataset.iterdir()) == ["g00.json", "g01.json"]
        code, out, _ = run(capsys, "equivalence", "--dataset", str(dataset), "--format", "machine")
        assert code == 0
        assert "# dataset=" in out

    def test_single_graph_dataset(self, capsys, tmp_path, edge_pair):
        dataset = tmp_path / "one"
        dataset.mkdir()
        (dataset / "g.json").write_text(serialize_graph(edge_pair[0]))
        code, out, _ = run(capsys, "equivalence", "--dataset", str(dataset), "--format", "machine")
        assert code == 0
        assert "000-000,g,g" in out

    def test_empty_dataset(self, capsys, tmp_path):
        assert run(capsys, "equivalence", "--dataset", str(tmp_path))[0] == 3

    def test_generated_datasets_are_reproducible(self, capsys, tmp_path):
        for name in ("a", "b"):
            run(capsys, "gen", "--output", str(tmp_path / name), "--count", "3", "--seed", "8")
        for graph in ("g00.json", "g01.json", "g02.json"):
            assert (tmp_path / "a" / graph).read_text() == (tmp_path / "b" / graph).read_text()


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.startswith("gedgm 1.0.0")
