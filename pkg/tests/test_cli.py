import json

import pytest
from click.testing import CliRunner

from fgwalk.cli import main_cli


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main_cli, [str(a) for a in args])


def envelope(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


@pytest.fixture
def k4_file(runner, tmp_path):
    path = tmp_path / "k4.graph"
    args = ("graph", "build", "--family", "complete", "--n", 4, "-o", path)
    assert invoke(runner, *args).exit_code == 0
    return path


def test_count(runner):
    out = envelope(invoke(runner, "count", "--rank", 2, "--length", 2, "--brute-force"))
    assert out["command"] == "count"
    assert out["params"] == {"rank": 2, "length": 2}
    assert out["result"] == {"count": 12, "brute_force": 12}
    assert set(out) == {
        "schema_version",
        "fgwalk_version",
        "command",
        "params",
        "result",
        "diagnostics",
    }


def test_huge_counts_are_strings(runner):
    out = envelope(invoke(runner, "count", "--rank", 2, "--length", 100))
    assert out["result"]["count"] == str(3**100 + 3)


def test_domain_error_exits_with_one(runner):
    result = invoke(runner, "count", "--rank", 0, "--length", 3)
    assert result.exit_code == 1


def test_usage_error_exits_with_two(runner):
    assert invoke(runner, "count", "--rank", 2, "--bogus").exit_code == 2


def test_version(runner):
    result = invoke(runner, "--version")
    assert result.exit_code == 0
    assert "1.0.0" in result.output


def test_conj_csv(runner):
    result = invoke(runner, "--format", "csv", "conj", "--rank", 2, "--max-length", 4)
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "length,N,C,CC"
    assert lines[-1] == "4,108,84,26"


def test_csv_needs_tabular_result(runner):
    assert invoke(runner, "--format", "csv", "clt", "--rank", 2).exit_code == 1


def test_clt(runner):
    out = envelope(invoke(runner, "clt", "--rank", 2))
    assert out["result"]["sigma2"] == pytest.approx(2.0)


def test_modp_bias(runner):
    out = envelope(
        invoke(runner, "modp", "--rank", 2, "--length", 20, "--prime", 7, "--bias")
    )
    assert out["result"]["bias"]["matches_prediction"]
    assert len(out["result"]["rows"]) == 7


def test_graph_build_emits_file(runner):
    result = invoke(runner, "graph", "build", "--family", "cycle", "--n", 3)
    assert result.exit_code == 0
    assert (
        result.output == "graph undirected\nvertices 3\nedge 0 1\nedge 0 2\nedge 1 2\n"
    )


def test_graph_build_needs_one_source(runner):
    assert invoke(runner, "graph", "build").exit_code == 2
    args = ("graph", "build", "--free-rank", 2, "--family", "petersen")
    assert invoke(runner, *args).exit_code == 2


def test_graph_zeta(runner, c3_file):
    out = envelope(invoke(runner, "graph", "zeta", c3_file, "--cycles", 3))
    assert out["result"]["zeta"] == "1 - 3u^2 - 2u^3"
    assert [row["cycles"] for row in out["result"]["rows"]] == [0, 6, 6]
    assert [row["primitive"] for row in out["result"]["rows"]] == [0, 3, 2]


def test_graph_format_error_reports_line(runner, tmp_path):
    path = tmp_path / "bad.graph"
    path.write_text("graph undirected\nvertices 2\nedge 0 5\n", encoding="utf-8")
    result = invoke(runner, "graph", "zeta", path)
    assert result.exit_code == 1
    assert "line 3" in result.output


def test_graph_ihara(runner, k4_file):
    out = envelope(invoke(runner, "graph", "ihara", k4_file))
    assert out["result"]["equal"]


def test_graph_walk_variance(runner, k4_file):
    args = ("graph", "walk-variance", k4_file, "--values", "1,-1,0,0", "--exact", 40)
    out = envelope(invoke(runner, *args))
    assert out["result"]["sigma2"] == pytest.approx(0.25)
    assert out["result"]["exact_variance_per_step"] == pytest.approx(0.25, rel=1e-9)


def test_graph_modp(runner, k4_file):
    args = ("graph", "modp", k4_file, "--prime", 3, "--length", 10)
    out = envelope(invoke(runner, *args, "--values", "0,1,2,0"))
    assert sum(row["count"] for row in out["result"]["rows"]) == 3**10 + 3


def test_graph_group_dist(runner, k4_file):
    args = ("graph", "group-dist", k4_file, "--group", "symmetric:3")
    out = envelope(invoke(runner, *args, "--labels", "0,2,3,1", "--length", 10))
    rows = out["result"]["rows"]
    elements = [row["element"] for row in rows]
    assert elements == ["012", "021", "102", "120", "201", "210"]
    assert [row["count"] for row in rows] == [9935, 9940, 9940, 9655, 9694, 9888]
    assert out["result"]["hypotheses_ok"]


def test_graph_group_dist_unknown_group(runner, k4_file):
    args = ("graph", "group-dist", k4_file, "--group", "dihedral:4")
    result = invoke(runner, *args, "--labels", "0,1,2,3", "--length", 3)
    assert result.exit_code == 1


def test_graph_entropy_minimize(runner, k4_file):
    out = envelope(invoke(runner, "graph", "entropy", k4_file, "--minimize"))
    assert out["result"]["s0"] == pytest.approx(4 * 1.0986122886681098)
    assert out["result"]["closed_form_exact"]


def test_graph_linegraph(runner, k4_file):
    out = envelope(invoke(runner, "graph", "linegraph", k4_file))
    assert out["result"]["arcs"] == 12
    assert out["result"]["ata_ok"]
    assert out["result"]["forbidden_dimension"] == 0


def test_cheb_coeffs(runner):
    out = envelope(invoke(runner, "cheb", "coeffs", "T", 4))
    assert [row["coeff"] for row in out["result"]["rows"]] == [1, 0, -8, 0, 8]


def test_cheb_positivity_witness(runner):
    out = envelope(
        invoke(runner, "cheb", "verify-positivity", "R", 2, "--c", "3/2", "--k", 3)
    )
    assert out["params"]["c"] == "3/2"
    assert not out["result"]["ok"]
    assert out["result"]["witness"] == [0, 0, 0]
    assert out["result"]["witness_value"] == "-1/4"


def test_cheb_bad_rational(runner):
    assert invoke(runner, "cheb", "symmetrized", "R", 2, "--c", "three").exit_code == 2


def test_tol_overrides_base_tolerance(runner, k4_file, monkeypatch):
    from fgwalk.core import config

    monkeypatch.setattr(config, "BASE_TOL", config.BASE_TOL)
    out = envelope(invoke(runner, "--tol", "1e-8", "graph", "linegraph", k4_file))
    assert out["result"]["ata_ok"]
    assert config.BASE_TOL == 1e-8
    assert invoke(runner, "--tol", "-1", "clt", "--rank", 2).exit_code == 2


def test_emitted_graphs_round_trip(runner, k4_file, tmp_path):
    from fgwalk.graphcore.graph import emit_graph, load_graph

    result = invoke(runner, "graph", "linegraph", k4_file, "--emit")
    assert result.exit_code == 0
    path = tmp_path / "lk4.graph"
    path.write_text(result.output, encoding="utf-8")
    assert emit_graph(load_graph(path)) == result.output
    first = envelope(invoke(runner, "graph", "zeta", path))
    assert envelope(invoke(runner, "graph", "zeta", path)) == first
