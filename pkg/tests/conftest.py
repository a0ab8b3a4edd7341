import pytest


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    path = tmp_path / "cache"
    monkeypatch.setenv("MODCORR_CACHE_DIR", str(path))
    return path
