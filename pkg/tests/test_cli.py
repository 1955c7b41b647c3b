from __future__ import annotations

import json

from timelighting import Interval, parse_graph, rank_mobility
from timelighting.cli import main

from conftest import random_graph, rugby_events
from timelighting.ingest import serialize_graph


def write_events_csv(path, events):
    lines = ["timestamp,source,target"]
    lines += [f"{e.timestamp},{e.source},{e.target}" for e in events]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


class TestIngestCommand:
    def test_events_to_graph_summary(self, tmp_path, capsys):
        events_path = tmp_path / "events.csv"
        write_events_csv(events_path, rugby_events(seed=1, n_events=200))
        out_path = tmp_path / "graph.json"
        code = main(["ingest", "--events", str(events_path), "--out", str(out_path)])
        assert code == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["nodes"] == 12
        assert out_path.exists()

    def test_missing_file_exit_1_names_path(self, tmp_path, capsys):
        code = main(["ingest", "--events", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o.json")])
        assert code == 1
        assert "nope.csv" in capsys.readouterr().err

    def test_output_reingests_structurally_equal(self, tmp_path, capsys):
        graph = random_graph(9, n_nodes=5)
        src = tmp_path / "in.json"
        src.write_text(serialize_graph(graph), encoding="utf-8")
        out = tmp_path / "out.json"
        assert main(["ingest", "--graph", str(src), "--out", str(out)]) == 0
        capsys.readouterr()
        again = parse_graph(out.read_text(encoding="utf-8"))
        assert again.structurally_equal(graph)

    def test_seed_generates_fallback_layout(self, tmp_path, capsys):
        events_path = tmp_path / "events.csv"
        write_events_csv(events_path, rugby_events(seed=1, n_events=60))
        out_path = tmp_path / "graph.json"
        code = main(
            ["ingest", "--events", str(events_path), "--seed", "5", "--out", str(out_path)]
        )
        assert code == 0
        capsys.readouterr()
        graph = parse_graph(out_path.read_text(encoding="utf-8"))
        assert all(node.trajectory for node in graph.nodes.values())


class TestAnalyzeCommand:
    def _graph_file(self, tmp_path, seed=21):
        graph = random_graph(seed, n_nodes=6, edge_prob=0.6)
        path = tmp_path / "graph.json"
        path.write_text(serialize_graph(graph), encoding="utf-8")
        return path, graph

    def test_report_matches_engine_ranking(self, tmp_path, capsys):
        path, graph = self._graph_file(tmp_path)
        assert main(["analyze", "--graph", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)
        expected = rank_mobility(graph, graph.extent)
        assert [e["node_id"] for e in report["mobility"]["ranking"]] == [
            s.node_id for s in expected
        ]
        assert report["mobility"]["default_locked"] == [s.node_id for s in expected[:3]]

    def test_all_stationary_graph_zero_mobility(self, tmp_path, capsys):
        doc = {
            "nodes": [
                {
                    "id": f"n{i}",
                    "appearance": [[0, 10]],
                    "trajectory": [{"interval": [0, 10], "from": [i, i], "to": [i, i]}],
                }
                for i in range(4)
            ],
            "edges": [],
        }
        path = tmp_path / "g.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["analyze", "--graph", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert all(e["length"] == 0 for e in report["mobility"]["ranking"])

    def test_locked_singleton_empty_guidance(self, tmp_path, capsys):
        path, graph = self._graph_file(tmp_path)
        some = sorted(graph.nodes)[0]
        assert main(["analyze", "--graph", str(path), "--locked", some]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["guidance"]["intervals"] == []

    def test_window_flag(self, tmp_path, capsys):
        path, graph = self._graph_file(tmp_path)
        lo, hi = graph.extent.start, (graph.extent.start + graph.extent.end) / 2
        assert main(["analyze", "--graph", str(path), "--window", f"{lo}:{hi}"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["window"] == {"start": lo, "end": hi}
        expected = rank_mobility(graph, Interval(lo, hi))
        assert [e["node_id"] for e in report["mobility"]["ranking"]] == [
            s.node_id for s in expected
        ]

    def test_bad_window_exit_1(self, tmp_path, capsys):
        path, _ = self._graph_file(tmp_path)
        assert main(["analyze", "--graph", str(path), "--window", "oops"]) == 1
        assert "window" in capsys.readouterr().err

    def test_unknown_locked_exit_1(self, tmp_path, capsys):
        path, _ = self._graph_file(tmp_path)
        assert main(["analyze", "--graph", str(path), "--locked", "ghost"]) == 1
        assert "ghost" in capsys.readouterr().err
