"""Inverted index over project names/descriptions/tags and asset filenames/tags.

Postings live in the same SQLite database as the catalog and are rewritten
inside the owning catalog transaction, so the index can never lag a
committed write. Scoring is additive per query term: exact tag match 3,
name/filename token 2, description token 1; terms are ANDed.
"""

from __future__ import annotations

import re
import sqlite3
from dataclasses import dataclass

from . import errors
from .model import normalize_tag

_TOKEN_SPLIT = re.compile(r"[^a-z0-9]+")

TAG_WEIGHT = 3
NAME_WEIGHT = 2
DESCRIPTION_WEIGHT = 1

_FIELD_WEIGHTS = {
    "tag": TAG_WEIGHT,
    "name": NAME_WEIGHT,
    "filename": NAME_WEIGHT,
    "description": DESCRIPTION_WEIGHT,
}


@dataclass
class QueryResult:
    kind: str  # "project" | "asset"
    id: str
    score: int
    matched_fields: list[str]


def tokenize(text: str) -> set[str]:
    """Lowercase and split on non-alphanumerics; empties dropped."""
    return {tok for tok in _TOKEN_SPLIT.split((text or "").lower()) if tok}


@dataclass(frozen=True)
class _Term:
    tag_form: str | None
    token_forms: frozenset[str]


def parse_query(query: str) -> list[_Term]:
    terms = []
    for raw in (query or "").split():
        try:
            tag_form = normalize_tag(raw)
        except errors.Validation:
            tag_form = None
        terms.append(_Term(tag_form=tag_form, token_forms=frozenset(tokenize(raw))))
    if not terms:
        raise errors.EmptyQuery("query is empty")
    return terms


# --- index maintenance (called inside catalog transactions) ------------------

def index_project(conn: sqlite3.Connection, project_id: str, name: str,
                  description: str, tags: set[str]) -> None:
    deindex(conn, "project", project_id)
    rows = [("project", project_id, "name", tok) for tok in tokenize(name)]
    rows += [("project", project_id, "description", tok) for tok in tokenize(description)]
    rows += [("project", project_id, "tag", tag) for tag in tags]
    conn.executemany("INSERT OR IGNORE INTO postings VALUES (?,?,?,?)", rows)


def index_asset(conn: sqlite3.Connection, asset_id: str, filename: str,
                tags: set[str]) -> None:
    deindex(conn, "asset", asset_id)
    rows = [("asset", asset_id, "filename", tok) for tok in tokenize(filename)]
    rows += [("asset", asset_id, "tag", tag) for tag in tags]
    conn.executemany("INSERT OR IGNORE INTO postings VALUES (?,?,?,?)", rows)


def deindex(conn: sqlite3.Connection, kind: str, entity_id: str) -> None:
    conn.execute("DELETE FROM postings WHERE kind=? AND entity=?", (kind, entity_id))


# --- queries -----------------------------------------------------------------

def _match_term(conn: sqlite3.Connection, kind: str, term: _Term) -> dict[str, set[str]]:
    """entity id -> fields this term matched on."""
    wanted = set(term.token_forms)
    if term.tag_form:
        wanted.add(term.tag_form)
    if not wanted:
        return {}
    marks = ",".join("?" for _ in wanted)
    rows = conn.execute(
        f"SELECT entity, field, token FROM postings WHERE kind=? AND token IN ({marks})",
        (kind, *wanted),
    ).fetchall()
    hits: dict[str, set[str]] = {}
    for entity, field, token in rows:
        if field == "tag":
            if token != term.tag_form:
                continue  # tags match exactly, not via tokenized forms
        elif token not in term.token_forms:
            continue
        hits.setdefault(entity, set()).add(field)
    return hits


def _rank(conn: sqlite3.Connection, kind: str, terms: list[_Term]) -> dict[str, tuple[int, set[str]]]:
    """AND all terms; entity id -> (score, matched fields)."""
    combined: dict[str, tuple[int, set[str]]] | None = None
    for term in terms:
        hits = _match_term(conn, kind, term)
        scored = {
            entity: (sum(_FIELD_WEIGHTS[f] for f in fields), fields)
            for entity, fields in hits.items()
        }
        if combined is None:
            combined = scored
        else:
            combined = {
                entity: (combined[entity][0] + s, combined[entity][1] | f)
                for entity, (s, f) in scored.items()
                if entity in combined
            }
        if not combined:
            return {}
    return combined or {}


def search_projects(conn: sqlite3.Connection, requester: str, query: str,
                    page: int = 1, per_page: int = 20) -> tuple[list[QueryResult], int]:
    """Visible-project search: Public projects plus the requester's own."""
    ranked = _rank(conn, "project", parse_query(query))
    results = []
    for project_id, (points, fields) in ranked.items():
        row = conn.execute(
            "SELECT updated_at FROM projects WHERE id=? AND (visibility='Public' OR owner=?)",
            (project_id, requester),
        ).fetchone()
        if row is None:
            continue
        results.append((points, row[0], project_id, fields))
    _sort_ranked(results)
    page_items = _paginate(results, page, per_page)
    return (
        [QueryResult("project", pid, pts, sorted(fields)) for pts, _, pid, fields in page_items],
        len(results),
    )


def search_assets(conn: sqlite3.Connection, requester: str, query: str,
                  page: int = 1, per_page: int = 20) -> tuple[list[QueryResult], int]:
    """Asset search; hidden unless the requester uploaded the asset or some
    referencing project is visible to them."""
    ranked = _rank(conn, "asset", parse_query(query))
    results = []
    for asset_id, (points, fields) in ranked.items():
        row = conn.execute(
            "SELECT uploader, created_at FROM assets WHERE id=?", (asset_id,)
        ).fetchone()
        if row is None:
            continue
        uploader, created_at = row
        if uploader != requester and not _asset_visible(conn, asset_id, requester):
            continue
        results.append((points, created_at, asset_id, fields))
    _sort_ranked(results)
    page_items = _paginate(results, page, per_page)
    return (
        [QueryResult("asset", aid, pts, sorted(fields)) for pts, _, aid, fields in page_items],
        len(results),
    )


def _asset_visible(conn: sqlite3.Connection, asset_id: str, requester: str) -> bool:
    row = conn.execute(
        """SELECT 1 FROM artifacts a
           JOIN folders f ON a.folder = f.id
           JOIN projects p ON f.project = p.id
           WHERE a.asset=? AND (p.visibility='Public' OR p.owner=?) LIMIT 1""",
        (asset_id, requester),
    ).fetchone()
    return row is not None


def _sort_ranked(results: list) -> None:
    # score desc, then timestamp desc, then id asc; stable passes in reverse order
    results.sort(key=lambda r: r[2])
    results.sort(key=lambda r: r[1], reverse=True)
    results.sort(key=lambda r: r[0], reverse=True)


def _paginate(items: list, page: int, per_page: int) -> list:
    page = max(1, page)
    per_page = min(max(1, per_page), 100)
    start = (page - 1) * per_page
    return items[start : start + per_page]
