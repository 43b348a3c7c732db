import json
import shutil
from pathlib import Path

import pytest
from click.testing import CliRunner

from icarus.cli import cli
from icarus.session import SessionStore
from icarus.workspace import bundled_data_dir


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kwargs):
    return runner.invoke(cli, list(args), **kwargs)


class TestCount:
    def test_text(self, runner):
        r = invoke(runner, "count")
        assert r.exit_code == 0
        assert r.output.strip() == "4084000"

    def test_json(self, runner):
        r = invoke(runner, "count", "--format", "json")
        assert json.loads(r.output) == {"count": 4084000}

    def test_k_range(self, runner):
        r = invoke(runner, "count", "--kmin", "2", "--kmax", "2")
        assert r.output.strip() == "4000"

    def test_bad_range_exits_1(self, runner):
        r = invoke(runner, "count", "--kmin", "0")
        assert r.exit_code == 1
        assert "k-range" in r.output


class TestMatrixShow:
    def test_text(self, runner):
        r = invoke(runner, "matrix", "show", "--category", "A")
        assert r.exit_code == 0
        assert "A: Threat actors" in r.output
        assert "A5   Political terrorists" in r.output
        assert "B: Motivations" not in r.output

    def test_json(self, runner):
        r = invoke(runner, "matrix", "show", "--format", "json")
        doc = json.loads(r.output)
        assert [c["letter"] for c in doc["categories"]] == ["A", "B", "C", "D", "E"]


class TestSample:
    def test_deterministic_text(self, runner):
        a = invoke(runner, "sample", "-n", "3", "--seed", "42")
        b = invoke(runner, "sample", "-n", "3", "--seed", "42")
        assert a.exit_code == 0
        assert a.output == b.output
        assert len(a.output.strip().splitlines()) == 3

    def test_locks(self, runner):
        r = invoke(runner, "sample", "-n", "5", "--seed", "1", "--lock", "A5")
        for line in r.output.strip().splitlines():
            assert "A5" in line.split("+")

    def test_rules_file(self, runner, tmp_path):
        path = tmp_path / "x.icrules"
        path.write_text("deny A5\n")
        r = invoke(runner, "sample", "-n", "20", "--seed", "0", "--rules", str(path))
        assert r.exit_code == 0
        for line in r.output.strip().splitlines():
            assert "A5" not in line.split("+")

    def test_unknown_lock_exits_2(self, runner):
        r = invoke(runner, "sample", "-n", "1", "--seed", "0", "--lock", "Z9")
        assert r.exit_code == 2
        assert "Z9" in r.output

    def test_json_matches_api_body(self, runner, client):
        r = invoke(runner, "sample", "-n", "3", "--seed", "42", "--format", "json")
        assert r.exit_code == 0
        api = client.post("/api/sample", json={"seed": 42, "n": 3})
        assert json.loads(r.output) == api.json()


class TestEnumerate:
    def test_window(self, runner):
        r = invoke(runner, "enumerate", "--from", "0", "--to", "3")
        assert r.output.strip().splitlines() == ["A1+B1", "A1+B2", "A1+B3"]

    def test_admissible_only_drops_denied(self, runner):
        # rank 492 is A5+C13, denied by the default ruleset
        plain = invoke(runner, "enumerate", "--from", "480", "--to", "500")
        filtered = invoke(
            runner, "enumerate", "--from", "480", "--to", "500", "--admissible-only"
        )
        assert "A5+C13" in plain.output.split()
        assert "A5+C13" not in filtered.output.split()

    def test_explicit_rules_file(self, runner, tmp_path):
        path = tmp_path / "x.icrules"
        path.write_text("deny A1+B2\n")
        r = invoke(runner, "enumerate", "--from", "0", "--to", "3", "--rules", str(path))
        assert r.output.strip().splitlines() == ["A1+B1", "A1+B3"]

    def test_json(self, runner):
        r = invoke(runner, "enumerate", "--from", "0", "--to", "2", "--format", "json")
        doc = json.loads(r.output)
        assert [p["canonical"] for p in doc["prompts"]] == ["A1+B1", "A1+B2"]
        assert [p["rank"] for p in doc["prompts"]] == [0, 1]

    def test_bad_window_exits_1(self, runner):
        r = invoke(runner, "enumerate", "--from", "5", "--to", "4")
        assert r.exit_code == 1


class TestRankUnrank:
    def test_rank(self, runner):
        r = invoke(runner, "rank", "A7+B12+E16")
        assert r.output.strip() == "22635"

    def test_unrank(self, runner):
        r = invoke(runner, "unrank", "22635")
        assert r.output.strip() == "A7+B12+E16"

    def test_round_trip(self, runner):
        out = invoke(runner, "unrank", "123456").output.strip()
        assert invoke(runner, "rank", out).output.strip() == "123456"

    def test_unknown_cell_exits_2(self, runner):
        r = invoke(runner, "rank", "A5+Z9")
        assert r.exit_code == 2
        assert "Z9" in r.output

    def test_cardinality_exits_1(self, runner):
        r = invoke(runner, "rank", "A5")
        assert r.exit_code == 1

    def test_unrank_out_of_range_exits_1(self, runner):
        r = invoke(runner, "unrank", "99999999999")
        assert r.exit_code == 1


class TestCorpus:
    def test_list_filters(self, runner):
        r = invoke(runner, "corpus", "list", "--era", "near", "--locale", "cislunar_beyond")
        lines = r.output.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("11")
        assert lines[1].startswith("12")

    def test_list_q(self, runner):
        r = invoke(runner, "corpus", "list", "--q", "ransomware")
        assert "Ransomware" in r.output

    def test_list_cell(self, runner):
        r = invoke(runner, "corpus", "list", "--cell", "C13", "--format", "json")
        ids = [s["id"] for s in json.loads(r.output)["scenarios"]]
        assert 7 in ids

    def test_show_text(self, runner):
        r = invoke(runner, "corpus", "show", "13")
        assert "13. Ransomware: is this an inconvenient time?" in r.output
        assert "era: medium" in r.output

    def test_show_unknown_exits_1(self, runner):
        r = invoke(runner, "corpus", "show", "99")
        assert r.exit_code == 1

    def test_buckets_json(self, runner):
        r = invoke(runner, "corpus", "buckets", "--format", "json")
        table = json.loads(r.output)
        assert table["near"]["ground_to_space"] == 6
        assert table["long"]["cislunar_beyond"] == 6


class TestWorksheet:
    def test_markdown(self, runner):
        r = invoke(runner, "worksheet", "A5+C14", "--scenario", "6")
        assert r.exit_code == 0
        assert r.output.startswith("# Worksheet: A5+C14")
        assert "Scenario 6: Eco-terrorists: the ghost ship" in r.output
        assert "## Who?" in r.output

    def test_json_matches_api_modulo_created(self, runner, client):
        r = invoke(runner, "worksheet", "A5+C14", "--scenario", "6", "--format", "json")
        mine = json.loads(r.output)
        theirs = client.post(
            "/api/worksheets", json={"prompt": "A5+C14", "scenario_id": 6}
        ).json()
        mine.pop("created")
        theirs.pop("created")
        assert mine == theirs

    def test_cardinality_exits_1(self, runner):
        r = invoke(runner, "worksheet", "A5")
        assert r.exit_code == 1


class TestRulesCheck:
    def test_ok(self, runner, tmp_path):
        path = tmp_path / "r.icrules"
        path.write_text("deny A1\ndeny (B2|B3)+C4 id=pair # note\n")
        r = invoke(runner, "rules", "check", str(path))
        assert r.exit_code == 0
        assert "ok: 2 rules" in r.output
        assert "pair (deny-combo)" in r.output

    def test_parse_error_exits_1(self, runner, tmp_path):
        path = tmp_path / "r.icrules"
        path.write_text("deny A1+Z9\n")
        r = invoke(runner, "rules", "check", str(path))
        assert r.exit_code == 1
        assert "line 1" in r.output
        assert "Z9" in r.output

    def test_missing_file_exits_2(self, runner, tmp_path):
        r = invoke(runner, "rules", "check", str(tmp_path / "gone.icrules"))
        assert r.exit_code == 2


class TestSession:
    def test_lifecycle(self, runner, matrix):
        with runner.isolated_filesystem():
            sid = invoke(runner, "session", "new", "--seed", "5").output.strip()
            assert sid

            store = SessionStore(Path.cwd() / "sessions", matrix)
            store.append(sid, 1, "draw", {"prompt": "A1+B2+C3+D4+E5"})

            r = invoke(runner, "session", "events", sid)
            lines = r.output.strip().splitlines()
            assert len(lines) == 1
            assert json.loads(lines[0])["kind"] == "draw"

            r = invoke(runner, "session", "coverage", sid)
            assert "pairs: 10 / 4000" in r.output

            a = invoke(runner, "session", "suggest", sid, "--seed", "3")
            b = invoke(runner, "session", "suggest", sid, "--seed", "3")
            assert a.output == b.output
            assert "+" in a.output

    def test_coverage_json(self, runner, matrix):
        with runner.isolated_filesystem():
            sid = invoke(runner, "session", "new").output.strip()
            store = SessionStore(Path.cwd() / "sessions", matrix)
            store.append(sid, 1, "draw", {"prompt": "A1+B1"})
            r = invoke(runner, "session", "coverage", sid, "--format", "json")
            doc = json.loads(r.output)
            assert doc["pairs_covered"] == 1
            assert doc["pairs_total"] == 4000
            assert doc["admissible"] == 4056259

    def test_unknown_session_exits_1(self, runner):
        with runner.isolated_filesystem():
            r = invoke(runner, "session", "coverage", "ghost")
            assert r.exit_code == 1


class TestDataDirOverride:
    @pytest.fixture()
    def custom_data(self, tmp_path):
        src = bundled_data_dir()
        dst = tmp_path / "data"
        shutil.copytree(src, dst)
        doc = json.loads((dst / "icarus_matrix.json").read_text())
        doc["categories"][0]["cells"][0]["label"] = "Customized insider"
        (dst / "icarus_matrix.json").write_text(json.dumps(doc))
        return dst

    def test_data_flag(self, runner, custom_data):
        r = invoke(runner, "--data", str(custom_data), "matrix", "show", "--category", "A")
        assert "Customized insider" in r.output

    def test_env_var(self, runner, custom_data):
        r = invoke(
            runner, "matrix", "show", "--category", "A",
            env={"ICARUS_DATA": str(custom_data)},
        )
        assert "Customized insider" in r.output

    def test_default_unaffected(self, runner):
        r = invoke(runner, "matrix", "show", "--category", "A")
        assert "Customized insider" not in r.output
