import json

from extcalc.cache import ENV_VAR, NullCache, ResultCache, default_cache_dir
from extcalc.homology import homology_all


def test_round_trip_is_identical(tmp_path):
    cache = ResultCache(tmp_path)
    value = homology_all(8).to_json()
    cache.put("homology_all", {"d": 8}, value)
    assert cache.get("homology_all", {"d": 8}) == value
    assert len(cache.entries()) == 1


def test_miss_returns_none(tmp_path):
    assert ResultCache(tmp_path).get("homology_all", {"d": 3}) is None


def test_corrupt_entry_is_discarded(tmp_path):
    cache = ResultCache(tmp_path)
    cache.put("op", {"x": 1}, [1, 2, 3])
    (path,) = cache.entries()
    entry = json.loads(path.read_text())
    entry["payload"] = "[1,2,4]"
    path.write_text(json.dumps(entry))
    assert cache.get("op", {"x": 1}) is None
    assert not path.exists()


def test_truncated_entry_is_discarded(tmp_path):
    cache = ResultCache(tmp_path)
    cache.put("op", {"x": 1}, {"a": 1})
    (path,) = cache.entries()
    path.write_text(path.read_text()[:10])
    assert cache.get("op", {"x": 1}) is None
    assert cache.get_or_compute("op", {"x": 1}, lambda: {"a": 1}) == {"a": 1}
    assert cache.get("op", {"x": 1}) == {"a": 1}


def test_version_bump_invalidates(tmp_path):
    ResultCache(tmp_path, version="1").put("op", {}, 5)
    assert ResultCache(tmp_path, version="1").get("op", {}) == 5
    assert ResultCache(tmp_path, version="2").get("op", {}) is None


def test_key_ignores_param_order(tmp_path):
    cache = ResultCache(tmp_path)
    assert cache.key("op", {"a": 1, "b": 2}) == cache.key("op", {"b": 2, "a": 1})


def test_clear(tmp_path):
    cache = ResultCache(tmp_path)
    for d in range(3):
        cache.put("op", {"d": d}, d)
    assert cache.clear() == 3
    assert cache.entries() == []


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "here"))
    assert default_cache_dir() == tmp_path / "here"


def test_null_cache_stores_nothing():
    cache = NullCache()
    cache.put("op", {}, 1)
    assert cache.get("op", {}) is None
