import json
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"


def golden(name):
    return json.loads((GOLDEN / name).read_text(encoding="utf-8"))


def assert_error_shape(resp, status, code):
    assert resp.status_code == status
    body = resp.json()
    assert set(body) == {"status", "code", "message"}
    assert body["status"] == status
    assert body["code"] == code
    assert body["message"]


class TestGolden:
    def test_count(self, client):
        r = client.get("/api/count")
        assert r.status_code == 200
        assert r.json() == golden("count.json")

    def test_scenarios_near_cislunar(self, client):
        r = client.get("/api/scenarios", params={"era": "near", "locale": "cislunar_beyond"})
        assert r.status_code == 200
        body = r.json()
        assert [s["id"] for s in body["scenarios"]] == [11, 12]
        assert body == golden("scenarios_near_cislunar.json")

    def test_sample_seed42(self, client):
        r = client.post("/api/sample", json={"seed": 42, "n": 3})
        assert r.status_code == 200
        assert r.json() == golden("sample_seed42_n3.json")

    def test_sample_byte_identical(self, client):
        payload = {"seed": 42, "n": 3, "locks": [], "rules_id": None}
        a = client.post("/api/sample", json=payload)
        b = client.post("/api/sample", json=payload)
        assert a.status_code == b.status_code == 200
        assert a.content == b.content


class TestCount:
    def test_pairs_only(self, client):
        r = client.get("/api/count", params={"kmin": 2, "kmax": 2})
        assert r.json() == {"count": 4000}

    def test_bad_range(self, client):
        assert_error_shape(client.get("/api/count", params={"kmin": 0}), 400, "out-of-range")


class TestMatrix:
    def test_shape(self, client):
        r = client.get("/api/matrix")
        assert r.status_code == 200
        body = r.json()
        assert [c["letter"] for c in body["categories"]] == ["A", "B", "C", "D", "E"]
        assert all(len(c["cells"]) == 20 for c in body["categories"])
        a5 = body["categories"][0]["cells"][4]
        assert a5["index"] == 5
        assert a5["label"] == "Political terrorists"
        assert a5["description"]


class TestPrompts:
    def test_first(self, client):
        r = client.get("/api/prompts/0")
        assert r.status_code == 200
        assert r.json()["canonical"] == "A1+B1"
        assert r.json()["rank"] == 0

    def test_last(self, client):
        r = client.get("/api/prompts/4083999")
        assert r.json()["canonical"] == "A20+B20+C20+D20+E20"

    def test_out_of_range_is_404(self, client):
        assert_error_shape(client.get("/api/prompts/4084000"), 404, "not-found")

    def test_non_integer_is_422(self, client):
        assert_error_shape(client.get("/api/prompts/foo"), 422, "invalid-request")


class TestSample:
    def test_locks_normalized_and_honored(self, client):
        r = client.post("/api/sample", json={"seed": 5, "n": 10, "locks": ["A05", "C13"]})
        assert r.status_code == 200
        body = r.json()
        assert body["locks"] == ["A5", "C13"]
        for p in body["prompts"]:
            tokens = {c["token"] for c in p["cells"]}
            assert {"A5", "C13"} <= tokens

    def test_rules_id_filters(self, client):
        r = client.post(
            "/api/sample",
            json={"seed": 0, "n": 50, "rules_id": "default"},
        )
        assert r.status_code == 200
        for p in r.json()["prompts"]:
            tokens = {c["token"] for c in p["cells"]}
            assert not {"A5", "C13"} <= tokens
            assert not {"A7", "C13"} <= tokens
            assert not {"D11", "E17"} <= tokens

    def test_unknown_rules_id(self, client):
        r = client.post("/api/sample", json={"seed": 0, "n": 1, "rules_id": "nope"})
        assert_error_shape(r, 404, "not-found")

    def test_infeasible_locks_under_rules(self, client):
        r = client.post(
            "/api/sample",
            json={"seed": 0, "n": 1, "locks": ["A5", "C13"], "rules_id": "default"},
        )
        assert_error_shape(r, 400, "sample-infeasible")

    def test_unknown_lock_token(self, client):
        r = client.post("/api/sample", json={"seed": 0, "n": 1, "locks": ["Z9"]})
        assert_error_shape(r, 400, "unknown-cell")

    def test_seed_bounds_are_validation_errors(self, client):
        r = client.post("/api/sample", json={"seed": -1, "n": 1})
        assert_error_shape(r, 422, "invalid-request")
        r = client.post("/api/sample", json={"seed": 2**64, "n": 1})
        assert_error_shape(r, 422, "invalid-request")


class TestRules:
    def test_list_default(self, client):
        r = client.get("/api/rules")
        assert r.status_code == 200
        sets = r.json()["rulesets"]
        assert len(sets) == 1
        default = sets[0]
        assert default["id"] == "default"
        assert default["source"] == "default.icrules"
        assert [rule["id"] for rule in default["rules"]] == [
            "terror-coverup", "tourism-marginalized",
        ]
        assert all(rule["kind"] == "deny-combo" for rule in default["rules"])

    def test_check_valid(self, client):
        text = "deny A1\ndeny (B2|B3)+C4 id=pair # why not\n"
        r = client.post("/api/rules", json={"text": text})
        assert r.status_code == 200
        body = r.json()
        assert body["ok"] is True
        assert body["count"] == 2
        assert body["rules"][1]["rationale"] == "why not"

    def test_check_invalid_has_position(self, client):
        r = client.post("/api/rules", json={"text": "deny A1+Z9"})
        assert_error_shape(r, 400, "invalid-rules")
        assert "line 1" in r.json()["message"]
        assert "Z9" in r.json()["message"]


class TestScenarios:
    def test_text_query(self, client):
        r = client.get("/api/scenarios", params={"q": "ransomware"})
        assert 13 in [s["id"] for s in r.json()["scenarios"]]

    def test_cell_query(self, client):
        r = client.get("/api/scenarios", params={"cell": "C13"})
        ids = [s["id"] for s in r.json()["scenarios"]]
        assert 7 in ids

    def test_get_by_id(self, client):
        r = client.get("/api/scenarios/13")
        assert r.status_code == 200
        body = r.json()
        assert body["title"] == "Ransomware"
        assert body["tagline"] == "is this an inconvenient time?"
        assert body["era"] == "medium"
        assert body["locale"] == "ground_to_space"

    def test_unknown_id(self, client):
        assert_error_shape(client.get("/api/scenarios/99"), 404, "not-found")

    def test_unknown_era(self, client):
        r = client.get("/api/scenarios", params={"era": "soon"})
        assert_error_shape(r, 400, "invalid-corpus")

    def test_buckets(self, client):
        r = client.get("/api/scenarios/buckets")
        assert r.status_code == 200
        assert r.json() == {
            "near": {"ground_to_space": 6, "earthbound": 4, "cislunar_beyond": 2},
            "medium": {"ground_to_space": 4, "earthbound": 5, "cislunar_beyond": 7},
            "long": {"ground_to_space": 1, "earthbound": 7, "cislunar_beyond": 6},
        }


class TestWorksheets:
    def test_build(self, client):
        r = client.post("/api/worksheets", json={"prompt": "A5+C14", "scenario_id": 6})
        assert r.status_code == 200
        body = r.json()
        assert body["prompt"]["canonical"] == "A5+C14"
        assert body["scenario"]["title"] == "Eco-terrorists"
        assert len(body["groups"]) == 7
        assert sum(len(g["questions"]) for g in body["groups"]) == 28
        assert body["created"]

    def test_prompt_cardinality_enforced(self, client):
        r = client.post("/api/worksheets", json={"prompt": "A5"})
        assert_error_shape(r, 400, "invalid-prompt")

    def test_unknown_scenario(self, client):
        r = client.post("/api/worksheets", json={"prompt": "A1+B1", "scenario_id": 77})
        assert_error_shape(r, 404, "not-found")


class TestSessions:
    def test_lifecycle(self, client):
        r = client.post("/api/sessions", json={"seed": 11})
        assert r.status_code == 200
        meta = r.json()
        assert set(meta) == {"id", "seed", "created"}
        assert meta["seed"] == 11
        sid = meta["id"]

        r = client.get("/api/sessions")
        assert sid in [m["id"] for m in r.json()["sessions"]]

        r = client.post(
            f"/api/sessions/{sid}/events",
            json={"seq": 1, "kind": "lock", "payload": {"cell": "A5"}},
        )
        assert r.status_code == 200
        assert r.json()["seq"] == 1

        r = client.post(
            f"/api/sessions/{sid}/events",
            json={"seq": 2, "kind": "draw", "payload": {"prompt": "E3+A5"}},
        )
        assert r.status_code == 200
        assert r.json()["payload"]["prompt"] == "A5+E3"

        r = client.get(f"/api/sessions/{sid}")
        body = r.json()
        assert body["last_seq"] == 2
        assert body["locks"] == {"A": "A5"}
        assert body["explored"] == ["A5+E3"]
        assert body["drafts"] == {}

    def test_seq_conflict(self, client):
        sid = client.post("/api/sessions", json={"seed": 0}).json()["id"]
        client.post(
            f"/api/sessions/{sid}/events",
            json={"seq": 1, "kind": "note", "payload": {"text": "x"}},
        )
        r = client.post(
            f"/api/sessions/{sid}/events",
            json={"seq": 1, "kind": "note", "payload": {"text": "y"}},
        )
        assert_error_shape(r, 409, "seq-conflict")

    def test_bad_payload(self, client):
        sid = client.post("/api/sessions", json={"seed": 0}).json()["id"]
        r = client.post(
            f"/api/sessions/{sid}/events",
            json={"seq": 1, "kind": "draw", "payload": {}},
        )
        assert_error_shape(r, 400, "session-error")

    def test_unknown_session(self, client):
        assert_error_shape(client.get("/api/sessions/ghost"), 404, "not-found")

    def test_coverage(self, client):
        sid = client.post("/api/sessions", json={"seed": 0}).json()["id"]
        client.post(
            f"/api/sessions/{sid}/events",
            json={"seq": 1, "kind": "draw", "payload": {"prompt": "A1+B2+C3+D4+E5"}},
        )
        r = client.get(f"/api/sessions/{sid}/coverage")
        assert r.status_code == 200
        body = r.json()
        assert body["pairs_covered"] == 10
        assert body["pairs_total"] == 4000
        assert body["explored"] == 1
        assert body["admissible"] == 4056259
        assert body["cell_usage"]["A1"] == 1

    def test_suggest(self, client):
        sid = client.post("/api/sessions", json={"seed": 0}).json()["id"]
        client.post(
            f"/api/sessions/{sid}/events",
            json={"seq": 1, "kind": "lock", "payload": {"cell": "A5"}},
        )
        a = client.get(f"/api/sessions/{sid}/suggest", params={"seed": 0})
        b = client.get(f"/api/sessions/{sid}/suggest", params={"seed": 0})
        assert a.status_code == 200
        assert a.content == b.content
        body = a.json()
        assert body["new_pairs"] == 10
        assert body["complete"] is False
        tokens = {c["token"] for c in body["prompt"]["cells"]}
        assert "A5" in tokens
        # the default ruleset is applied server-side
        assert not {"A5", "C13"} <= tokens
