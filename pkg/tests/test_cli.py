import json
import random

import pytest

from ctxgraph.cli import CATALOG, main
from ctxgraph.graph import dump_edge_list, parse_graph_spec
from ctxgraph.report import AnalysisReport, analyze

import oracles


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


class TestAnalyze:
    def test_pentagon(self, capsys):
        d = run_json(capsys, "analyze", "cycle:5")
        assert d["alpha"] == 2
        assert abs(d["theta"]["value"] - 2.23607) <= 1e-5
        assert d["classification"]["verdict"] == "QCG"
        assert d["hole"]["labels"] == [1, 2, 3, 4, 5]
        assert d["dimension"]["bound"] == 3

    def test_complete_graph(self, capsys):
        d = run_json(capsys, "analyze", "complete:6")
        assert d["perfect"] is True
        assert d["classification"]["verdict"] == "QNCG"

    def test_antihole(self, capsys):
        d = run_json(capsys, "analyze", "anticycle:9")
        assert d["alpha"] == 2 and d["dimension"]["bound"] == 6
        assert abs(d["theta"]["value"] - 2.06418) <= 1e-5

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "analyze", "cycle:7")
        assert code == 0 and "QCG" in out and "alpha" in out

    def test_json_round_trip(self, capsys):
        d = run_json(capsys, "analyze", "circulant:8:1,4")
        rep = AnalysisReport.from_dict(d)
        assert rep.to_dict() == d
        assert rep.consistency_problems() == []

    def test_edge_list_file(self, capsys, tmp_path):
        p = tmp_path / "g.txt"
        dump_edge_list(parse_graph_spec("cycle:7"), p)
        d = run_json(capsys, "analyze", f"file:{p}")
        assert d["alpha"] == 3 and d["hole"]["labels"]


class TestOtherCommands:
    def test_census(self, capsys):
        d = run_json(capsys, "census", "cycle:9", "--targets", "C5,C7")
        assert d["counts"] == {"C5": 0, "C7": 0}

    def test_table1(self, capsys):
        rows = run_json(capsys, "table1", "--threads", "1")
        assert [r["counts"]["C5"] for r in rows] == [1, 8, 12, 96]
        code, out, _ = run(capsys, "table1", "--threads", "1")
        assert code == 0 and "complement(shrikhande)" in out

    def test_orthorep(self, capsys):
        d = run_json(capsys, "orthorep", "anticycle", "7")
        assert abs(d["handle_value"] - 2.10992) <= 1e-5
        assert d["verification"]["ok"]
        assert len(d["representation"]["vectors"]) == 7

    @pytest.mark.parametrize("argv,nchv,q", [
        (("chsh",), 3, 3.41421), (("s_cycle", "7"), 3, 3.31767), (("s_anticycle", "7"), 2, 2.10992)])
    def test_inequality(self, capsys, argv, nchv, q):
        d = run_json(capsys, "inequality", *argv)
        assert d["nchv"] == nchv
        assert abs(d["quantum"]["value"] - q) <= 1e-4

    def test_eprinciple(self, capsys):
        d = run_json(capsys, "eprinciple", "anticycle:7", "--max-m", "2")
        assert [round(e["value"], 4) for e in d["e"]] == [2.3333, 2.2136]
        d = run_json(capsys, "eprinciple", "complete:3", "--max-m", "2")
        assert [e["value"] for e in d["e"]] == [1.0, 1.0]

    def test_eprinciple_cap_note(self, capsys):
        d = run_json(capsys, "eprinciple", "anticycle:7", "--max-m", "3", "--max-vertices", "100")
        assert len(d["e"]) == 2 and d["skipped"][0]["m"] == 3

    def test_catalog(self, capsys):
        d = run_json(capsys, "catalog")
        assert len(d["graphs"]) == len(CATALOG)
        assert "complement(spec)" in d["grammar"]


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ("analyze", "hexagon"), ("analyze", "cycle:2"), ("analyze", "file:/no/such/file"),
        ("orthorep", "cycle", "4"), ("inequality", "s_cycle"), ("census", "cycle:5", "--targets", "K4"),
        ("frobnicate",), ("analyze",)])
    def test_input_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 1
        assert err.startswith("error")

    def test_product_cap(self, capsys):
        code, _, err = run(capsys, "analyze", "power(anticycle:7,3)", "--max-vertices", "100")
        assert code == 2 and "resource cap" in err

    def test_budget_cap_with_partial(self, capsys):
        code, out, _ = run(capsys, "analyze", "power(anticycle:7,3)", "--clique-budget-seconds",
                           "0.2", "--partial", "--format", "json")
        assert code == 2
        d = json.loads(out)
        assert d["partial"] is True and d["n"] == 343


class TestCorpus:
    def test_contextual_graphs_carry_witnesses(self):
        # QCG needs an odd hole or antihole; perfect graphs are QNCG with theta = alpha
        rng = random.Random(2024)
        corpus = [parse_graph_spec(s) for s, _ in CATALOG if "power" not in s]
        corpus += [oracles.random_graph(rng, rng.randint(4, 10), rng.random()) for _ in range(60)]
        seen = set()
        for g in corpus:
            r = analyze(g)
            assert r.consistency_problems() == []
            verdict = r.classification.verdict
            seen.add(verdict)
            if verdict == "QCG":
                assert r.hole is not None or r.antihole is not None
            if r.perfect:
                assert verdict == "QNCG"
                assert abs(r.theta.value - r.alpha) <= 1e-4
        assert seen >= {"QCG", "QNCG"}
