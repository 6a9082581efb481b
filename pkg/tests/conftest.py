"""Shared cached fixture builders; building is deterministic, so one
instance per session is safe."""

from functools import lru_cache

from fourgroup import fixtures


@lru_cache(maxsize=None)
def fx(selector: str):
    return fixtures.parse_fixture_selector(selector)
