import json
import logging

from triramsey.cache import R1Entry, ResultCache, load_cache
from triramsey.engine import GameConfig
from triramsey.search import coloring_to_hex, find_draw
from triramsey.tricore import bracket


def test_missing_file_gives_empty_cache(tmp_path):
    cache = load_cache(str(tmp_path / "nope.json"))
    assert cache.brackets == {} and cache.r1_results == {}


def test_round_trip(tmp_path):
    path = str(tmp_path / "cache.json")
    cache = ResultCache(path=path)
    cache.put_bracket(6, 3, 3421)
    cache.put_bracket(40, 5, bracket(40, 5))  # exceeds 64 bits
    entry = R1Entry(p=3, q=3, k=1, status="exact", value=5)
    draw = find_draw(GameConfig(4, 3, 3, 1), "exhaustive")
    entry.witness_m, entry.witness_coloring = 4, draw.coloring
    cache.put_r1(entry)
    cache.put_solved(GameConfig(3, 2, 2, 1), "FirstPlayerWin")
    cache.add_witness(GameConfig(4, 3, 3, 1), draw.coloring)
    cache.save()

    loaded = load_cache(path)
    assert loaded.get_bracket(6, 3) == 3421
    assert loaded.get_bracket(40, 5) == bracket(40, 5)
    got = loaded.get_r1(3, 3, 1)
    assert got.value == 5 and got.witness_coloring == draw.coloring
    assert loaded.get_solved(GameConfig(3, 2, 2, 1)) == "FirstPlayerWin"
    assert len(loaded.witnesses) == 1


def test_big_integers_survive_as_decimal_strings(tmp_path):
    path = str(tmp_path / "cache.json")
    cache = ResultCache(path=path)
    value = 10**60 + 7
    cache.put_bracket(100, 8, value)
    cache.save()
    raw = json.loads(open(path).read())
    assert raw["brackets"][0]["value"] == str(value)
    assert load_cache(path).get_bracket(100, 8) == value


def test_schema_mismatch_starts_empty(tmp_path, caplog):
    path = tmp_path / "cache.json"
    path.write_text(json.dumps({"schemaVersion": 99, "brackets": []}))
    with caplog.at_level(logging.WARNING):
        cache = load_cache(str(path))
    assert cache.brackets == {}
    assert "schema" in caplog.text


def test_corrupt_entries_dropped_with_warning(tmp_path, caplog):
    config = GameConfig(4, 3, 3, 1)
    good = find_draw(config, "exhaustive").coloring
    bad = 0  # all cells player two: the full board triangle wins for them
    payload = {
        "schemaVersion": 1,
        "brackets": [
            {"n": 3, "k": 2, "value": "10"},
            {"n": 4, "k": 3, "value": "not-a-number"},
            {"n": 4, "k": 9, "value": "1"},
        ],
        "r1Results": [
            {"p": 3, "q": 3, "k": 1, "status": "exact", "value": 5,
             "witness": {"m": 4, "coloring": coloring_to_hex(good, 10)}},
            {"p": 3, "q": 3, "k": 1, "status": "weird", "value": 5},
            {"p": 4, "q": 4, "k": 1, "status": "exact", "value": 7,
             "witness": {"m": 4, "coloring": coloring_to_hex(bad, 10)}},
        ],
        "solvedGames": [
            {"config": {"m": 3, "p": 2, "q": 2, "k": 1, "variant": "standard"},
             "outcome": "FirstPlayerWin"},
            {"config": {"m": 3, "p": 9, "q": 2, "k": 1, "variant": "standard"},
             "outcome": "FirstPlayerWin"},
        ],
        "witnesses": [
            {"config": {"m": 4, "p": 3, "q": 3, "k": 1, "variant": "standard"},
             "coloring": coloring_to_hex(good, 10)},
            {"config": {"m": 4, "p": 3, "q": 3, "k": 1, "variant": "standard"},
             "coloring": coloring_to_hex(bad, 10)},
        ],
    }
    path = tmp_path / "cache.json"
    path.write_text(json.dumps(payload))
    with caplog.at_level(logging.WARNING):
        cache = load_cache(str(path))
    assert cache.brackets == {(3, 2): 10}
    assert list(cache.r1_results) == [(3, 3, 1)]
    assert cache.r1_results[(3, 3, 1)].witness_coloring == good
    assert len(cache.solved_games) == 1
    assert len(cache.witnesses) == 1
    assert caplog.text.count("dropping bad") >= 5


def test_reload_is_stable(tmp_path):
    path = str(tmp_path / "cache.json")
    cache = ResultCache(path=path)
    cache.put_bracket(5, 2, 146)
    cache.save()
    first = load_cache(path)
    first.save()
    second = load_cache(path)
    assert second.brackets == first.brackets
