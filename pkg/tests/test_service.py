from __future__ import annotations

import numpy as np
import pytest
from fastapi.testclient import TestClient

from timelighting import (
    Interval,
    default_locks,
    interaction_intervals,
    rank_mobility,
    sample_trajectory,
    timeline_series,
)
from timelighting.server import create_app
from timelighting.server import schemas

from conftest import random_graph


@pytest.fixture(scope="module")
def graph():
    return random_graph(77, n_nodes=10, edge_prob=0.5)


@pytest.fixture(scope="module")
def client(graph):
    return TestClient(create_app(graph))


class TestMeta:
    def test_echoes_graph(self, client, graph):
        body = client.get("/api/meta").json()
        meta = schemas.MetaResponse.model_validate(body)
        assert meta.node_count == len(graph.nodes)
        assert meta.edge_count == len(graph.edges)
        assert meta.extent.start == graph.extent.start
        assert meta.extent.end == graph.extent.end


class TestTrajectories:
    def test_matches_engine_output(self, client, graph):
        window = Interval(graph.extent.start, graph.extent.end)
        resp = client.get(
            "/api/trajectories",
            params={"from": window.start, "to": window.end, "k": 3},
        )
        assert resp.status_code == 200
        payload = schemas.TrajectoriesResponse.model_validate(resp.json())
        by_id = {t.node_id: t for t in payload.trajectories}
        for node_id, node in graph.nodes.items():
            expected = sample_trajectory(node, window, 3)
            got = by_id[node_id]
            assert len(got.points) == len(expected.points)
            for gp, ep in zip(got.points, expected.points):
                assert gp.t == ep.t
                assert (gp.x, gp.y) == ep.position
                assert gp.opacity == ep.opacity

    def test_ids_filter(self, client, graph):
        some = sorted(graph.nodes)[:2]
        resp = client.get("/api/trajectories", params={"ids": ",".join(some)})
        payload = schemas.TrajectoriesResponse.model_validate(resp.json())
        assert sorted(t.node_id for t in payload.trajectories) == some

    def test_unknown_id_400(self, client):
        resp = client.get("/api/trajectories", params={"ids": "ghost"})
        assert resp.status_code == 400
        assert "ghost" in resp.json()["detail"]

    def test_inverted_window_400(self, client):
        resp = client.get("/api/trajectories", params={"from": 10, "to": 5})
        assert resp.status_code == 400


class TestEdges:
    def test_unknown_node_400(self, client):
        resp = client.get("/api/edges", params={"node": "ghost"})
        assert resp.status_code == 400

    def test_instructions_schema(self, client, graph):
        node_id = sorted(graph.nodes)[0]
        resp = client.get("/api/edges", params={"node": node_id, "k": 2})
        assert resp.status_code == 200
        payload = schemas.EdgesResponse.model_validate(resp.json())
        for ins in payload.edges:
            assert node_id in (ins.a_node_id, ins.b_node_id)
            assert 0.0 <= ins.opacity <= 1.0


class TestDensity:
    def test_grid_decodes_and_is_finite(self, client):
        resp = client.get("/api/density", params={"bandwidth": 2.0, "w": 64, "h": 48, "k": 2})
        assert resp.status_code == 200
        payload = schemas.DensityResponse.model_validate(resp.json())
        values = payload.decode_values()
        assert values.shape == (48, 64)
        assert np.isfinite(values).all()
        assert (values >= 0).all()

    def test_window_without_points_400(self, client, graph):
        lo = graph.extent.end + 10
        resp = client.get("/api/density", params={"from": lo, "to": lo + 1})
        assert resp.status_code == 400


class TestMobility:
    def test_matches_engine_ranking(self, client, graph):
        resp = client.get("/api/mobility")
        payload = schemas.MobilityResponse.model_validate(resp.json())
        expected = rank_mobility(graph, graph.extent)
        assert [e.node_id for e in payload.ranking] == [s.node_id for s in expected]
        assert payload.default_locked == default_locks(graph)
        mean = sum(s.length for s in expected) / len(expected)
        assert payload.mean_length == pytest.approx(mean)


class TestGuidance:
    def test_matches_engine(self, client, graph):
        locked = default_locks(graph)
        resp = client.get("/api/guidance", params={"locked": ",".join(locked)})
        payload = schemas.GuidanceResponse.model_validate(resp.json())
        expected = interaction_intervals(graph, set(locked))
        assert [(g.start, g.end) for g in payload.intervals] == [
            (g.interval.start, g.interval.end) for g in expected
        ]

    def test_unknown_id_400(self, client):
        resp = client.get("/api/guidance", params={"locked": "a,ghost"})
        assert resp.status_code == 400


class TestTimeline:
    def test_bins_and_breakpoints(self, client, graph):
        resp = client.get("/api/timeline", params={"bins": 16})
        payload = schemas.TimelineResponse.model_validate(resp.json())
        assert len(payload.bins) == 16
        assert payload.breakpoint_count == len(timeline_series(graph).breakpoints)


class TestSession:
    def test_roundtrip_and_versioning(self, graph):
        client = TestClient(create_app(graph))
        initial = schemas.SessionModel.model_validate(client.get("/api/session").json())
        assert initial.version == 0
        assert initial.locked == default_locks(graph)

        lo = graph.extent.start
        hi = (graph.extent.start + graph.extent.end) / 2
        resp = client.put(
            "/api/session",
            json={"window": {"start": lo, "end": hi}, "locked": sorted(graph.nodes)[:2]},
        )
        assert resp.status_code == 200
        updated = schemas.SessionModel.model_validate(resp.json())
        assert updated.version == 1
        assert updated.window.end == hi

        again = schemas.SessionModel.model_validate(client.get("/api/session").json())
        assert again == updated

    def test_window_outside_extent_rejected(self, graph):
        client = TestClient(create_app(graph))
        resp = client.put(
            "/api/session",
            json={"window": {"start": graph.extent.start - 100, "end": graph.extent.end}},
        )
        assert resp.status_code == 400

    def test_unknown_lock_rejected(self, graph):
        client = TestClient(create_app(graph))
        resp = client.put("/api/session", json={"locked": ["ghost"]})
        assert resp.status_code == 400


class TestDeterminism:
    @pytest.mark.parametrize(
        "path,params",
        [
            ("/api/meta", {}),
            ("/api/timeline", {"bins": 32}),
            ("/api/trajectories", {"k": 2}),
            ("/api/density", {"bandwidth": 1.5, "w": 32, "h": 32}),
            ("/api/mobility", {}),
        ],
    )
    def test_identical_requests_byte_identical(self, client, path, params):
        first = client.get(path, params=params)
        second = client.get(path, params=params)
        assert first.content == second.content

    def test_openapi_document_served(self, client):
        spec = client.get("/openapi.json").json()
        for path in (
            "/api/meta",
            "/api/timeline",
            "/api/trajectories",
            "/api/edges",
            "/api/density",
            "/api/mobility",
            "/api/guidance",
            "/api/session",
        ):
            assert path in spec["paths"]
