import threading
import time

import httpx
import pytest
from fastapi.testclient import TestClient

from fcakit.cxt import to_json_table, write_cxt
from fcakit.service import create_app

SMALL, MEDIUM, LARGE, NEAR, FAR, MOON, NO_MOON = range(7)


@pytest.fixture()
def client(tmp_path):
    app = create_app(tmp_path / "ws")
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def planets_client(client, planets):
    r = client.put("/api/contexts/planets", content=write_cxt(planets),
                   headers={"content-type": "text/plain"})
    assert r.status_code == 200
    return client


def test_health(client):
    r = client.get("/api/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_empty_workspace_lists_nothing(client):
    assert client.get("/api/contexts").json() == {"contexts": []}


def test_put_cxt_then_get_table(planets_client, planets):
    r = planets_client.get("/api/contexts/planets")
    assert r.status_code == 200
    assert r.json() == to_json_table(planets)
    listing = planets_client.get("/api/contexts").json()["contexts"]
    assert listing == [
        {"name": "planets", "objects": 9, "attributes": 7, "crosses": 27}]


def test_put_json_table(client, planets):
    r = client.put("/api/contexts/p2", json=to_json_table(planets))
    assert r.status_code == 200
    assert r.json() == {"name": "p2", "created": True,
                        "objects": 9, "attributes": 7, "concepts": 12}
    assert client.get("/api/contexts/p2").json() == to_json_table(planets)


def test_put_twice_is_idempotent(planets_client, planets):
    r = planets_client.put("/api/contexts/planets",
                           content=write_cxt(planets),
                           headers={"content-type": "text/plain"})
    assert r.status_code == 200
    assert r.json()["created"] is False


def test_put_create_mode_refuses_overwrite(planets_client, planets):
    r = planets_client.put("/api/contexts/planets?mode=create",
                           content=write_cxt(planets),
                           headers={"content-type": "text/plain"})
    assert r.status_code == 409
    r = planets_client.put("/api/contexts/fresh?mode=create",
                           content=write_cxt(planets),
                           headers={"content-type": "text/plain"})
    assert r.status_code == 200


def test_put_rejects_malformed(client):
    r = client.put("/api/contexts/bad", content="B\n\nnot a count\n",
                   headers={"content-type": "text/plain"})
    assert r.status_code == 400
    assert "line" in r.json()["detail"]
    r = client.put("/api/contexts/bad", json={"objects": ["a"]})
    assert r.status_code == 400


def test_slug_and_mode_validation(client, planets):
    body = write_cxt(planets)
    for name in ("has space", ".dot", "a/b", "x" * 70):
        r = client.put(f"/api/contexts/{name}", content=body,
                       headers={"content-type": "text/plain"})
        assert r.status_code in (400, 404), name
    r = client.put("/api/contexts/ok?mode=replace", content=body,
                   headers={"content-type": "text/plain"})
    assert r.status_code == 400
    assert client.get("/api/contexts/missing").status_code == 404


def test_cell_edit_round_trip(planets_client, planets):
    r = planets_client.post("/api/contexts/planets/cell",
                            json={"object": 8, "attribute": 6, "value": True})
    assert r.status_code == 200
    body = r.json()
    assert body["table"]["incidence"][8][6] is True
    assert body["concepts"] != 12
    r = planets_client.post("/api/contexts/planets/cell",
                            json={"object": 8, "attribute": 6, "value": False})
    assert r.json()["table"] == to_json_table(planets)
    assert r.json()["concepts"] == 12


def test_cell_edit_out_of_range(planets_client):
    r = planets_client.post("/api/contexts/planets/cell",
                            json={"object": 9, "attribute": 0, "value": True})
    assert r.status_code == 400
    r = planets_client.post("/api/contexts/planets/cell",
                            json={"object": 0, "attribute": -1, "value": True})
    assert r.status_code == 400


def test_lattice_scene(planets_client):
    r = planets_client.get("/api/contexts/planets/lattice")
    assert r.status_code == 200
    scene = r.json()
    assert scene["concepts"] == 12
    assert len(scene["nodes"]) == 12
    assert len(scene["edges"]) == 18
    node = scene["nodes"][0]
    for key in ("x", "y", "intent_key", "extent", "intent",
                "attribute_label", "object_label", "pinned"):
        assert key in node


def test_lattice_cap_returns_503(tmp_path, planets):
    app = create_app(tmp_path / "ws", concept_cap=5)
    with TestClient(app) as c:
        c.put("/api/contexts/planets", content=write_cxt(planets),
              headers={"content-type": "text/plain"})
        r = c.get("/api/contexts/planets/lattice")
        assert r.status_code == 503
        assert r.json()["detail"]["concepts_exceed"] == 5


def test_positions_persist_and_apply(planets_client):
    key = "far from sun\nmoon"
    r = planets_client.post("/api/contexts/planets/lattice/positions",
                            json={key: {"x": -3.5, "y": 2.0}})
    assert r.status_code == 200
    assert r.json()["pins"][key] == {"x": -3.5, "y": 2.0}
    scene = planets_client.get("/api/contexts/planets/lattice").json()
    moved = [n for n in scene["nodes"] if n["intent_key"] == key]
    assert moved[0]["pinned"] is True
    assert (moved[0]["x"], moved[0]["y"]) == (-3.5, 2.0)
    others = [n for n in scene["nodes"] if n["intent_key"] != key]
    assert all(not n["pinned"] for n in others)


def test_positions_merge_rather_than_replace(planets_client):
    planets_client.post("/api/contexts/planets/lattice/positions",
                        json={"": {"x": 0.0, "y": -1.0}})
    r = planets_client.post("/api/contexts/planets/lattice/positions",
                            json={"moon\nsmall": {"x": 1.0, "y": 3.0}})
    pins = r.json()["pins"]
    assert set(pins) == {"", "moon\nsmall"}


def test_positions_reject_unknown_intent(planets_client):
    r = planets_client.post("/api/contexts/planets/lattice/positions",
                            json={"made\nup": {"x": 0.0, "y": 0.0}})
    assert r.status_code == 400
    assert r.json()["detail"]["intent"] == "made\nup"


def test_implications_default_view(planets_client, planets_listing):
    r = planets_client.get("/api/contexts/planets/implications")
    assert r.status_code == 200
    body = r.json()
    rows = body["implications"]
    assert [row["id"] for row in rows] == [1, 2, 3, 4, 5]
    assert [row["support"] for row in rows] == [2, 2, 4, 5, 2]
    assert all(row["valid"] for row in rows)
    assert body["base_size"] == 10
    listing = "".join(row["text"] + "\n" for row in rows)
    assert listing == planets_listing


def test_implications_full_base(planets_client):
    rows = planets_client.get(
        "/api/contexts/planets/implications?all=true").json()["implications"]
    assert len(rows) == 10
    reds = [row for row in rows if row["support"] == 0]
    assert len(reds) == 5


def test_explore_accept_all(planets_client, planets, planets_listing):
    state = planets_client.post("/api/explore/planets/start").json()
    sid = state["session"]
    assert state["question"] == {"premise": ["medium"],
                                 "conclusion": ["far from sun", "moon"]}
    steps = 0
    while not state["finished"]:
        state = planets_client.post(f"/api/explore/{sid}/accept").json()
        steps += 1
        assert steps <= 64
    assert steps == 10
    assert state["question"] is None
    assert len(state["accepted"]) == 10
    assert state["context"] == to_json_table(planets)
    supported = [row for row in state["accepted"] if row["support"] > 0]
    assert [row["text"].split(" > ", 1)[1] for row in supported] == [
        line.split(" > ", 1)[1] for line in planets_listing.splitlines()]


def test_explore_counterexample_reposes(planets_client):
    sid = planets_client.post("/api/explore/planets/start").json()["session"]
    r = planets_client.post(f"/api/explore/{sid}/counterexample",
                            json={"name": "Phobos",
                                  "attributes": [MEDIUM, MOON]})
    assert r.status_code == 200
    state = r.json()
    assert state["question"] == {"premise": ["medium"], "conclusion": ["moon"]}
    assert len(state["context"]["objects"]) == 10
    assert state["context"]["objects"][-1] == "Phobos"
    fresh = planets_client.get(f"/api/explore/{sid}").json()
    assert fresh == state


def test_explore_rejects_non_counterexamples(planets_client):
    sid = planets_client.post("/api/explore/planets/start").json()["session"]
    r = planets_client.post(f"/api/explore/{sid}/counterexample",
                            json={"name": "Vesta", "attributes": [SMALL]})
    assert r.status_code == 422
    r = planets_client.post(
        f"/api/explore/{sid}/counterexample",
        json={"name": "Triton", "attributes": [MEDIUM, FAR, MOON]})
    assert r.status_code == 422
    r = planets_client.post(
        f"/api/explore/{sid}/counterexample",
        json={"name": "Pluto (P)", "attributes": [MEDIUM, MOON]})
    assert r.status_code == 422
    r = planets_client.post(f"/api/explore/{sid}/counterexample",
                            json={"name": "Ceres", "attributes": [99]})
    assert r.status_code == 422
    state = planets_client.get(f"/api/explore/{sid}").json()
    assert state["question"]["premise"] == ["medium"]
    assert len(state["context"]["objects"]) == 9


def test_explore_counterexample_naming_violated_rule(planets_client):
    sid = planets_client.post("/api/explore/planets/start").json()["session"]
    planets_client.post(f"/api/explore/{sid}/accept")
    state = planets_client.get(f"/api/explore/{sid}").json()
    assert state["question"]["premise"] == ["large"]
    r = planets_client.post(
        f"/api/explore/{sid}/counterexample",
        json={"name": "Hektor", "attributes": [LARGE, MEDIUM, MOON]})
    assert r.status_code == 422
    assert r.json()["detail"]["violated"]["premise"] == ["medium"]


def test_explore_accept_after_finish_conflicts(planets_client):
    sid = planets_client.post("/api/explore/planets/start").json()["session"]
    state = {"finished": False}
    while not state["finished"]:
        state = planets_client.post(f"/api/explore/{sid}/accept").json()
    r = planets_client.post(f"/api/explore/{sid}/accept")
    assert r.status_code == 409


def test_explore_unknown_session(planets_client):
    assert planets_client.get("/api/explore/nope").status_code == 404
    assert planets_client.post("/api/explore/nope/accept").status_code == 404
    r = planets_client.post("/api/explore/nope/counterexample",
                            json={"name": "x", "attributes": []})
    assert r.status_code == 404
    r = planets_client.post("/api/explore/nope/save", json={"name": "y"})
    assert r.status_code == 404


def test_explore_save(planets_client, planets):
    sid = planets_client.post("/api/explore/planets/start").json()["session"]
    r = planets_client.post(f"/api/explore/{sid}/save",
                            json={"name": "too-early"})
    assert r.status_code == 409
    state = {"finished": False}
    while not state["finished"]:
        state = planets_client.post(f"/api/explore/{sid}/accept").json()
    r = planets_client.post(f"/api/explore/{sid}/save",
                            json={"name": "planets-final"})
    assert r.status_code == 200
    table = planets_client.get("/api/contexts/planets-final").json()
    assert table == to_json_table(planets)
    r = planets_client.post(f"/api/explore/{sid}/save",
                            json={"name": "planets-final"})
    assert r.status_code == 409


def test_state_survives_process_restart(tmp_path, planets):
    root = tmp_path / "ws"
    with TestClient(create_app(root)) as c:
        c.put("/api/contexts/planets", content=write_cxt(planets),
              headers={"content-type": "text/plain"})
        sid = c.post("/api/explore/planets/start").json()["session"]
        c.post(f"/api/explore/{sid}/accept")
        c.post(f"/api/explore/{sid}/counterexample",
               json={"name": "Phobos", "attributes": [MEDIUM, MOON]})
        c.post("/api/contexts/planets/lattice/positions",
               json={"": {"x": 9.0, "y": 0.0}})
        before_state = c.get(f"/api/explore/{sid}").json()
        before_scene = c.get("/api/contexts/planets/lattice").json()
    with TestClient(create_app(root)) as c:
        assert c.get(f"/api/explore/{sid}").json() == before_state
        assert c.get("/api/contexts/planets/lattice").json() == before_scene


def test_busy_resource_conflicts(planets_client):
    locks = planets_client.app.state.locks
    with locks.held("context:planets"):
        r = planets_client.post(
            "/api/contexts/planets/cell",
            json={"object": 0, "attribute": 0, "value": False})
        assert r.status_code == 409
    sid = planets_client.post("/api/explore/planets/start").json()["session"]
    with locks.held(f"session:{sid}"):
        assert planets_client.post(
            f"/api/explore/{sid}/accept").status_code == 409


def test_static_dir_is_served(tmp_path, planets):
    site = tmp_path / "site"
    site.mkdir()
    (site / "index.html").write_text("<h1>lattice browser</h1>")
    app = create_app(tmp_path / "ws", static_dir=site)
    with TestClient(app) as c:
        r = c.get("/")
        assert r.status_code == 200
        assert "lattice browser" in r.text
        c.put("/api/contexts/planets", content=write_cxt(planets),
              headers={"content-type": "text/plain"})
        assert c.get("/api/contexts/planets").status_code == 200


def test_over_real_http(tmp_path, planets):
    uvicorn = pytest.importorskip("uvicorn")
    app = create_app(tmp_path / "ws")
    config = uvicorn.Config(app, host="127.0.0.1", port=0,
                            log_level="warning")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        deadline = time.time() + 10
        while not server.started:
            assert time.time() < deadline, "server never came up"
            time.sleep(0.01)
        port = server.servers[0].sockets[0].getsockname()[1]
        base = f"http://127.0.0.1:{port}"
        assert httpx.get(f"{base}/api/health").json()["status"] == "ok"
        r = httpx.put(f"{base}/api/contexts/planets",
                      content=write_cxt(planets),
                      headers={"content-type": "text/plain"})
        assert r.status_code == 200
        scene = httpx.get(f"{base}/api/contexts/planets/lattice").json()
        assert scene["concepts"] == 12
    finally:
        server.should_exit = True
        thread.join(timeout=10)
