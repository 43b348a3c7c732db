"""Record server responses used by the frontend test suite.

Every fixture under tests/fixtures/ is the byte-for-byte JSON body the
engine's HTTP API returned, captured through its ASGI test client. The
vitest fake server replays these; nothing in them is hand-written. Re-run
with `npm run fixtures` after an engine change and review the diff.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from icarus.api.app import create_app
from icarus.workspace import Workspace

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# Seeds are chosen so the scripted session in the board tests behaves the
# same way every time:
#   draw #1    seed 0 (session seed 0 + 0 journaled events) -> 5 categories
#   reroll #1  seed 2 (after draw + lock events)            -> locked to A5
#   reroll #2  seed 3                                       -> locked to A5
BASE_SEED = 0
SCAN_SEED = 2000
SCAN_N = 50

DENIED = [{"A5", "C13"}, {"A7", "C13"}, {"D11", "E17"}]


def save(name: str, doc) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    path = FIXTURES / name
    path.write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    print(f"wrote {path.relative_to(FIXTURES.parent.parent)}")


def tokens_of(prompt_doc) -> set[str]:
    return {cell["token"] for cell in prompt_doc["cells"]}


def main() -> None:
    ws = Workspace(sessions_dir=tempfile.mkdtemp(prefix="icarus-fixtures-"))
    client = TestClient(create_app(ws))

    save("matrix.json", client.get("/api/matrix").json())
    save("rules.json", client.get("/api/rules").json())

    first = client.post("/api/sample", json={
        "seed": BASE_SEED, "n": 1, "locks": [], "rules_id": "default",
    }).json()
    assert len(first["prompts"][0]["cells"]) == 5, "first draw must span 5 categories"
    save("sample_first.json", first)
    first_canonical = first["prompts"][0]["canonical"]

    for offset in (2, 3):
        body = client.post("/api/sample", json={
            "seed": BASE_SEED + offset, "n": 1, "locks": ["A5"], "rules_id": "default",
        }).json()
        assert "A5" in tokens_of(body["prompts"][0])
        save(f"sample_locked_a5_seed{BASE_SEED + offset}.json", body)

    scan = client.post("/api/sample", json={
        "seed": SCAN_SEED, "n": SCAN_N, "locks": [], "rules_id": "default",
    }).json()
    assert len(scan["prompts"]) == SCAN_N
    for prompt in scan["prompts"]:
        toks = tokens_of(prompt)
        for combo in DENIED:
            assert not combo <= toks, f"{prompt['canonical']} violates {combo}"
    save(f"sample_scan_seed{SCAN_SEED}.json", scan)

    probe_ok = client.post("/api/sample", json={
        "seed": 0, "n": 0, "locks": ["A5"], "rules_id": "default",
    })
    assert probe_ok.status_code == 200 and probe_ok.json()["prompts"] == []
    save("probe_a5.json", probe_ok.json())

    probe_bad = client.post("/api/sample", json={
        "seed": 0, "n": 0, "locks": ["A5", "C13"], "rules_id": "default",
    })
    assert probe_bad.status_code == 400
    assert probe_bad.json()["code"] == "sample-infeasible"
    assert "terror-coverup" in probe_bad.json()["message"]
    save("error_probe_a5_c13.json", {
        "status": probe_bad.status_code, "body": probe_bad.json(),
    })

    created = client.post("/api/sessions", json={"seed": BASE_SEED}).json()
    sid = created["id"]
    save("session_created.json", created)
    save("coverage_empty.json", client.get(f"/api/sessions/{sid}/coverage").json())

    ev = client.post(f"/api/sessions/{sid}/events", json={
        "seq": 1, "kind": "draw",
        "payload": {"prompt": first_canonical, "seed": BASE_SEED},
    })
    assert ev.status_code == 200
    save("event_draw.json", ev.json())

    cov = client.get(f"/api/sessions/{sid}/coverage").json()
    assert cov["pairs_covered"] == 10 and cov["pairs_total"] == 4000
    save("coverage_first_draw.json", cov)

    suggestion = client.get(f"/api/sessions/{sid}/suggest", params={"seed": 1}).json()
    assert suggestion["new_pairs"] > 0 and not suggestion["complete"]
    save("suggestion_seed1.json", suggestion)

    sheet = client.post("/api/worksheets", json={
        "prompt": first_canonical, "scenario_id": 37,
    }).json()
    assert len(sheet["groups"]) == 7
    assert sum(len(g["questions"]) for g in sheet["groups"]) == 28
    assert sheet["scenario"]["id"] == 37
    save("worksheet_scenario37.json", sheet)

    bare = client.post("/api/worksheets", json={
        "prompt": first_canonical, "scenario_id": None,
    }).json()
    assert bare["scenario"] is None and len(bare["groups"]) == 7
    save("worksheet_noscenario.json", bare)

    lock_ev = client.post(f"/api/sessions/{sid}/events", json={
        "seq": 2, "kind": "lock", "payload": {"cell": "A5"},
    })
    assert lock_ev.status_code == 200
    draft_ev = client.post(f"/api/sessions/{sid}/events", json={
        "seq": 3, "kind": "draft_save",
        "payload": {
            "prompt": first_canonical,
            "scenario_id": 37,
            "notes": {"who-1": "insider with launch access"},
        },
    })
    assert draft_ev.status_code == 200

    conflict = client.post(f"/api/sessions/{sid}/events", json={
        "seq": 2, "kind": "note", "payload": {"text": "stale"},
    })
    assert conflict.status_code == 409
    assert conflict.json()["code"] == "seq-conflict"
    save("error_seq_conflict.json", {
        "status": conflict.status_code, "body": conflict.json(),
    })

    doc = client.get(f"/api/sessions/{sid}").json()
    assert doc["last_seq"] == 3
    assert doc["locks"] == {"A": "A5"}
    assert doc["drafts"][first_canonical]["notes"] == {"who-1": "insider with launch access"}
    save("session_after_events.json", doc)

    save("sessions_list.json", client.get("/api/sessions").json())

    missing = client.get("/api/sessions/nope")
    assert missing.status_code == 404
    save("error_not_found.json", {
        "status": missing.status_code, "body": missing.json(),
    })

    print("ok: fixtures recorded")


if __name__ == "__main__":
    main()
