import json

import pytest

from triramsey.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket(capsys, tmp_path):
    cache = str(tmp_path / "c.json")
    code, out, _ = _run(capsys, "bracket", "4", "3", "--cache", cache)
    assert code == 0 and out.strip() == "41"
    code, out, _ = _run(capsys, "bracket", "0", "0", "--cache", cache)
    assert code == 0 and out.strip() == "1"
    # second call served from the cache file
    code, out, _ = _run(capsys, "bracket", "4", "3", "--cache", cache)
    assert code == 0 and out.strip() == "41"


def test_bracket_json_and_log2(capsys, tmp_path):
    cache = str(tmp_path / "c.json")
    code, out, _ = _run(capsys, "bracket", "3", "2", "--json", "--cache", cache)
    assert code == 0 and json.loads(out) == {"n": 3, "k": 2, "value": "10"}
    code, out, _ = _run(capsys, "bracket", "3", "2", "--log2", "--cache", cache)
    assert code == 0 and abs(float(out) - 3.321928) < 1e-5


def test_bracket_failure_exit_code(capsys, tmp_path):
    code, _, err = _run(capsys, "bracket", "3", "9", "--cache", str(tmp_path / "c.json"))
    assert code == 1 and "error" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["bracket", "not-a-number", "2"])
    assert exc.value.code == 2


def test_enumerate(capsys, tmp_path):
    code, out, _ = _run(capsys, "enumerate", "3", "2", "--json",
                        "--cache", str(tmp_path / "c.json"))
    payload = json.loads(out)
    assert code == 0 and payload["count"] == 10
    assert [1, 2, 3] in payload["subtriangles"]


def test_r1(capsys, tmp_path):
    cache = str(tmp_path / "c.json")
    code, out, _ = _run(capsys, "r1", "--p", "3", "--q", "3", "--k", "1", "--cache", cache)
    assert code == 0 and out.strip() == "5"
    # cached second run
    code, out, _ = _run(capsys, "r1", "--p", "3", "--q", "3", "--k", "1",
                        "--json", "--cache", cache)
    assert code == 0 and json.loads(out)["value"] == 5


def test_draw_search(capsys, tmp_path):
    cache = str(tmp_path / "c.json")
    code, out, _ = _run(capsys, "draw-search", "--m", "4", "--p", "3", "--q", "3",
                        "--json", "--cache", cache)
    payload = json.loads(out)
    assert code == 0 and payload["result"] == "draw_found"
    code, out, _ = _run(capsys, "draw-search", "--m", "5", "--p", "3", "--q", "3",
                        "--json", "--cache", cache)
    assert json.loads(out)["result"] == "no_draw_exists"


def test_bounds_single_row(capsys, tmp_path):
    code, out, _ = _run(capsys, "bounds", "--p", "3", "--q", "3", "--k", "2",
                        "--json", "--cache", str(tmp_path / "c.json"))
    payload = json.loads(out)
    assert code == 0
    assert payload["lower"] == 6 and payload["upperExpr"] == "R^15(3,2)"


def test_bounds_table_text(capsys, tmp_path):
    code, out, _ = _run(capsys, "bounds", "--table", "--skip-slow",
                        "--cache", str(tmp_path / "c.json"))
    assert code == 0
    assert "M_{7,2}" in out and "R^15(3,2)" in out
    assert len(out.strip().splitlines()) == 20  # header + 19 rows


def test_solve(capsys, tmp_path):
    cache = str(tmp_path / "c.json")
    code, out, _ = _run(capsys, "solve", "--m", "3", "--p", "2", "--q", "2",
                        "--variant", "directional", "--json", "--cache", cache)
    payload = json.loads(out)
    assert code == 0 and payload["outcome"] == "FirstPlayerWin"
    # cached second run
    code, out, _ = _run(capsys, "solve", "--m", "3", "--p", "2", "--q", "2",
                        "--variant", "directional", "--cache", cache)
    assert code == 0 and out.strip() == "FirstPlayerWin"


def test_verify_fast(capsys, tmp_path):
    code, out, _ = _run(capsys, "verify", "--fast", "--json",
                        "--cache", str(tmp_path / "c.json"))
    results = {r["name"]: r for r in json.loads(out)}
    assert "bracket-identities" in results
    assert results["bracket-identities"]["passed"]
    assert results["mines3-unique-winner"]["passed"]
    assert results["mines3-first-player-win"]["passed"]
    assert results["lower-bound-rows"]["passed"]
    # the one published entry exact arithmetic cannot reproduce
    assert not results["lower-bound-row-5-5-4"]["passed"]
    assert "3410" in results["lower-bound-row-5-5-4"]["detail"]
    assert code == 1  # the report carries a failing entry
