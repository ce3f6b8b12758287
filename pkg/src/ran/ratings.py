"""Copy-gated up/down ratings.

A user may rate a project only after making a full copy of it (there is a
Full-scope reuse record with that user and that source project), and owners
can never rate their own projects. One mutable rating per (user, project).
"""

from __future__ import annotations

import sqlite3

from . import errors
from .catalog import Catalog, _aggregate, _append_event
from .model import ReuseScope, Score, score

_WIRE_VALUES = {"up": 1, "down": -1, "1": 1, "-1": -1, "+1": 1}


def parse_value(raw) -> int:
    """Accept the wire forms "up"/"down" (and signed-one spellings)."""
    if raw in (1, -1):
        return raw
    try:
        return _WIRE_VALUES[str(raw).strip().lower()]
    except KeyError:
        raise errors.Validation('rating value must be "up" or "down"')


def _eligible(conn: sqlite3.Connection, user: str, project_id: str,
              owner: str) -> bool:
    if user == owner:
        return False
    row = conn.execute(
        "SELECT 1 FROM reuse_records WHERE user=? AND source_project=? AND scope=?",
        (user, project_id, ReuseScope.FULL.value)).fetchone()
    return row is not None


def is_eligible(catalog: Catalog, user: str, project_id: str) -> bool:
    with catalog.read() as conn:
        project = catalog._project(conn, project_id)
        return _eligible(conn, user, project_id, project.owner)


def rate(catalog: Catalog, user: str, project_id: str, value) -> Score:
    value = parse_value(value)
    with catalog.write() as conn:
        project = catalog._project(conn, project_id)
        if not _eligible(conn, user, project_id, project.owner):
            raise errors.NotEligible("rating requires a full copy of the project")
        now = catalog.now()
        current = conn.execute(
            "SELECT value FROM ratings WHERE user=? AND project=?",
            (user, project_id)).fetchone()
        if current is None:
            conn.execute("INSERT INTO ratings VALUES (?,?,?,?)",
                         (user, project_id, value, now))
            _append_event(conn, project_id, user, "rating.set",
                          "up" if value == 1 else "down", now)
        elif current[0] != value:
            conn.execute(
                "UPDATE ratings SET value=?, updated_at=? WHERE user=? AND project=?",
                (value, now, user, project_id))
            _append_event(conn, project_id, user, "rating.set",
                          "up" if value == 1 else "down", now)
        ups, downs, _ = _aggregate(conn, project_id)
        return score(ups, downs)


def unrate(catalog: Catalog, user: str, project_id: str) -> Score:
    with catalog.write() as conn:
        catalog._project(conn, project_id)
        row = conn.execute("SELECT 1 FROM ratings WHERE user=? AND project=?",
                           (user, project_id)).fetchone()
        if row is None:
            raise errors.NoRating("you have not rated this project")
        conn.execute("DELETE FROM ratings WHERE user=? AND project=?",
                     (user, project_id))
        _append_event(conn, project_id, user, "rating.cleared", "", catalog.now())
        ups, downs, _ = _aggregate(conn, project_id)
        return score(ups, downs)


def aggregate(catalog: Catalog, project_id: str) -> Score:
    with catalog.read() as conn:
        catalog._project(conn, project_id)
        ups, downs, _ = _aggregate(conn, project_id)
        return score(ups, downs)


def summary(catalog: Catalog, requester: str, project_id: str) -> dict:
    """Aggregate plus the requester's own vote and eligibility flag."""
    with catalog.read() as conn:
        project = catalog._project(conn, project_id)
        eligible = _eligible(conn, requester, project_id, project.owner)
        if project.owner != requester and not eligible:
            catalog._check_view(project, requester)
        ups, downs, net = _aggregate(conn, project_id)
        mine = conn.execute("SELECT value FROM ratings WHERE user=? AND project=?",
                            (requester, project_id)).fetchone()
        return {
            "ups": ups,
            "downs": downs,
            "net": net,
            "mine": None if mine is None else ("up" if mine[0] == 1 else "down"),
            "eligible": eligible,
        }


def audit_ratings(catalog: Catalog) -> list[tuple[str, str]]:
    """(user, project) pairs whose rating lacks a Full reuse record."""
    with catalog.read() as conn:
        rows = conn.execute(
            """SELECT r.user, r.project FROM ratings r
               WHERE NOT EXISTS (
                   SELECT 1 FROM reuse_records e
                   WHERE e.user = r.user AND e.source_project = r.project
                     AND e.scope = ?)""", (ReuseScope.FULL.value,)).fetchall()
        return [(r[0], r[1]) for r in rows]
