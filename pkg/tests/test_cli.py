"""CLI surface tests: subcommands, JSON shape, determinism, exit codes."""

import json

import pytest

from indsublab.cli import (
    EXIT_BAD_INPUT,
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    main,
)
from indsublab.graphs import complete_graph, graph_to_json, to_graph6


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "K3.json"
    path.write_text(json.dumps(graph_to_json(complete_graph(3))))
    return str(path)


def run_cli(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_ae(capsys, k3_file):
    code, out = run_cli(capsys, "ae", "--phi", "connected", "--graph", k3_file)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == "2"
    assert payload["graph"] == "Bw"


def test_ae_accepts_graph6(capsys, tmp_path):
    path = tmp_path / "K3.g6"
    path.write_text(to_graph6(complete_graph(3)) + "\n")
    code, out = run_cli(capsys, "ae", "--phi", "connected", "--graph", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["value"] == "2"


def test_ae_mod(capsys):
    code, out = run_cli(capsys, "ae-mod", "--phi", "connected", "--p", "3", "--m", "1")
    assert code == EXIT_OK
    assert json.loads(out)["residue"] == 2


def test_subbasis(capsys):
    code, out = run_cli(capsys, "subbasis", "--phi", "connected", "--k", "3")
    assert code == EXIT_OK
    rows = json.loads(out)["coefficients"]
    by_graph = {r["graph"]: r["value"] for r in rows}
    assert by_graph["Bw"] == "-2"  # complete graph on 3 vertices


def test_fixed_points(capsys):
    code, out = run_cli(capsys, "fixed-points", "2", "2")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert len(payload["fixed_points"]) == 4
    assert payload["group_order"] == 8
    prefixes = {tuple(map(tuple, p["sets"])): p["empty_prefix"] for p in payload["fixed_points"]}
    assert prefixes[((), (1,))] == 1


def test_count_modes(capsys, k3_file, tmp_path):
    code, out = run_cli(capsys, "count", "clique", "--graph", k3_file, "--k", "2")
    assert code == EXIT_OK and json.loads(out)["count"] == "3"
    code, out = run_cli(capsys, "count", "indsub", "--phi", "connected", "--graph", k3_file, "--k", "3")
    assert code == EXIT_OK and json.loads(out)["count"] == "1"
    pattern = tmp_path / "K2.json"
    pattern.write_text(json.dumps(graph_to_json(complete_graph(2))))
    code, out = run_cli(capsys, "count", "sub", "--pattern", str(pattern), "--graph", k3_file)
    assert code == EXIT_OK and json.loads(out)["count"] == "3"
    coloring = tmp_path / "col.json"
    coloring.write_text(
        json.dumps(
            {
                "host": graph_to_json(complete_graph(3)),
                "pattern": graph_to_json(complete_graph(3)),
                "map": [0, 1, 2],
            }
        )
    )
    code, out = run_cli(capsys, "count", "cphom", "--coloring", str(coloring))
    assert code == EXIT_OK and json.loads(out)["count"] == "1"
    code, out = run_cli(capsys, "count", "cpindsub", "--phi", "connected", "--coloring", str(coloring))
    assert code == EXIT_OK and json.loads(out)["count"] == "1"


def test_reduce(capsys, tmp_path):
    g = tmp_path / "K4.json"
    g.write_text(json.dumps(graph_to_json(complete_graph(4))))
    code, out = run_cli(
        capsys, "reduce", "clique-via-indsub", "--l", "2", "--phi", "disconnected", "--graph", str(g)
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["cliques"] == "6"
    assert payload["max_query_size"] <= 2 * 2 * 4 + 4


def test_lift(capsys, tmp_path, k3_file):
    c = tmp_path / "C.json"
    c.write_text(json.dumps(graph_to_json(complete_graph(2))))
    part = tmp_path / "K1.json"
    part.write_text(json.dumps(graph_to_json(complete_graph(1))))
    code, out = run_cli(
        capsys,
        "lift",
        "--phi", "clique",
        "--c-graph", str(c),
        "--parts", str(part),
        "--graph", k3_file,
    )
    assert code == EXIT_OK
    assert json.loads(out)["value"] == "1"


def test_gadget(capsys, tmp_path):
    cnf = tmp_path / "phi.cnf"
    cnf.write_text("p cnf 3 1\n1 2 3 0\n")
    code, out = run_cli(capsys, "gadget", "sat3", "--cnf", str(cnf), "--k", "1")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["census"]["total"] == 15
    assert payload["valid_proper_colorings"] == 7
    assert payload["clique_size"] == 3


def test_verify_suite(capsys):
    code, out = run_cli(capsys, "verify", "spot", "--seed", "7")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["passed"] is True


def test_determinism(capsys, tmp_path):
    cnf = tmp_path / "phi.cnf"
    cnf.write_text("p cnf 3 1\n1 -2 3 0\n")
    _, out1 = run_cli(capsys, "gadget", "sat3", "--cnf", str(cnf), "--k", "1")
    _, out2 = run_cli(capsys, "gadget", "sat3", "--cnf", str(cnf), "--k", "1")
    assert out1 == out2
    _, v1 = run_cli(capsys, "verify", "lift", "--seed", "11")
    _, v2 = run_cli(capsys, "verify", "lift", "--seed", "11")
    assert v1 == v2


def test_exit_codes(capsys, tmp_path, k3_file):
    code, _ = run_cli(capsys, "no-such-command")
    assert code == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, _ = run_cli(capsys, "ae", "--phi", "connected", "--graph", str(bad))
    assert code == EXIT_BAD_INPUT
    code, _ = run_cli(capsys, "ae", "--phi", "connected", "--graph", str(tmp_path / "missing.json"))
    assert code == EXIT_BAD_INPUT
    big = tmp_path / "K9.json"
    big.write_text(json.dumps(graph_to_json(complete_graph(9))))
    code, _ = run_cli(capsys, "ae", "--phi", "connected", "--graph", str(big))
    assert code == EXIT_PRECONDITION
    code, _ = run_cli(capsys, "count", "indsub", "--phi", "connected", "--graph", k3_file, "--k", "0")
    assert code == EXIT_PRECONDITION


def test_out_file(capsys, tmp_path, k3_file):
    out_path = tmp_path / "report.json"
    code, out = run_cli(
        capsys, "ae", "--phi", "connected", "--graph", k3_file, "--out", str(out_path)
    )
    assert code == EXIT_OK and out == ""
    assert json.loads(out_path.read_text())["value"] == "2"
