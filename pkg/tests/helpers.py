"""Shared test utilities: folder lookups, a deterministic clock, fixtures."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from ran.catalog import Catalog
from ran.model import format_timestamp


def roots_of(catalog: Catalog, project_id: str) -> dict[str, str]:
    """Root-folder ids keyed by name (TrainData/TestData/Model/Code)."""
    with catalog.read() as conn:
        rows = conn.execute(
            "SELECT name, id FROM folders WHERE project=? AND parent IS NULL",
            (project_id,)).fetchall()
    return {name: fid for name, fid in rows}


def folder_ids(catalog: Catalog, project_id: str) -> dict[str, str]:
    """All folder ids in a project keyed by path."""
    from ran.catalog import folder_path

    out: dict[str, str] = {}
    with catalog.read() as conn:
        for (fid,) in conn.execute(
                "SELECT id FROM folders WHERE project=?", (project_id,)):
            out[folder_path(conn, fid)] = fid
    return out


def event_log(catalog: Catalog, project_id: str) -> list[tuple[int, str, str]]:
    """(seq, action, target) oldest first, unpaged."""
    with catalog.read() as conn:
        rows = conn.execute(
            "SELECT seq, action, target FROM events WHERE project=?"
            " ORDER BY seq", (project_id,)).fetchall()
    return [tuple(r) for r in rows]


def physical_blob_count(store) -> int:
    return len(store.list_ids())


class TickingClock:
    """Deterministic catalog clock: advances 1 ms per call."""

    def __init__(self, start: str = "2026-01-01T00:00:00.000Z"):
        self._now = datetime(2026, 1, 1, tzinfo=timezone.utc)

    def __call__(self) -> str:
        self._now += timedelta(milliseconds=1)
        return format_timestamp(self._now)
