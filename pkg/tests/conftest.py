from __future__ import annotations

import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep every test away from the user-level result cache
    monkeypatch.setenv("GROUPAPPROX_CACHE_DIR", str(tmp_path / "cache"))
