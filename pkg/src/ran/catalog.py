"""Transactional system of record: users, projects, folders, artifacts,
provenance, reuse records, and the per-project tracking log.

Backed by a single SQLite database (WAL mode). Every public operation is one
transaction; writers take BEGIN IMMEDIATE so the version check and event-seq
allocation are race-free, and the search postings are rewritten inside the
same transaction as the write they reflect.
"""

from __future__ import annotations

import json
import sqlite3
import threading
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator

from . import errors, search
from .blobstore import BlobStore, archive_member_names
from .model import (
    Artifact,
    AssetMeta,
    ByteRange,
    CopiedFrom,
    Folder,
    FolderKind,
    Members,
    Project,
    ReuseRecord,
    ReuseScope,
    Selection,
    Selector,
    TrackingEvent,
    User,
    Visibility,
    Whole,
    canonical_roots,
    new_id,
    normalize_tags,
    selector_from_wire,
    utc_now_text,
    validate_description,
    validate_display_name,
    validate_email,
    validate_folder_name,
    validate_project_name,
    validate_user_name,
)

_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    id TEXT PRIMARY KEY,
    email TEXT NOT NULL UNIQUE,
    display_name TEXT NOT NULL,
    password_digest TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS projects (
    id TEXT PRIMARY KEY,
    owner TEXT NOT NULL,
    name TEXT NOT NULL,
    description TEXT NOT NULL DEFAULT '',
    visibility TEXT NOT NULL,
    version INTEGER NOT NULL,
    copied_from_id TEXT,
    copied_from_version INTEGER,
    copied_from_name TEXT,
    created_at TEXT NOT NULL,
    updated_at TEXT NOT NULL
);
CREATE UNIQUE INDEX IF NOT EXISTS projects_owner_name ON projects(owner, name);
CREATE TABLE IF NOT EXISTS project_tags (
    project TEXT NOT NULL REFERENCES projects(id) ON DELETE CASCADE,
    tag TEXT NOT NULL,
    PRIMARY KEY (project, tag)
);
CREATE TABLE IF NOT EXISTS folders (
    id TEXT PRIMARY KEY,
    project TEXT NOT NULL REFERENCES projects(id) ON DELETE CASCADE,
    parent TEXT,
    kind TEXT NOT NULL,
    name TEXT NOT NULL
);
CREATE UNIQUE INDEX IF NOT EXISTS folders_sibling
    ON folders(project, ifnull(parent, ''), lower(name));
CREATE INDEX IF NOT EXISTS folders_parent ON folders(parent);
CREATE TABLE IF NOT EXISTS artifacts (
    id TEXT PRIMARY KEY,
    folder TEXT NOT NULL REFERENCES folders(id) ON DELETE CASCADE,
    asset TEXT NOT NULL,
    selector TEXT NOT NULL,
    display_name TEXT NOT NULL,
    added_by TEXT NOT NULL,
    added_at TEXT NOT NULL
);
CREATE UNIQUE INDEX IF NOT EXISTS artifacts_name ON artifacts(folder, display_name);
CREATE INDEX IF NOT EXISTS artifacts_asset ON artifacts(asset);
CREATE TABLE IF NOT EXISTS assets (
    id TEXT PRIMARY KEY,
    size_bytes INTEGER NOT NULL,
    media_type TEXT NOT NULL,
    original_filename TEXT NOT NULL,
    uploader TEXT NOT NULL,
    created_at TEXT NOT NULL,
    refcount INTEGER NOT NULL DEFAULT 0
);
CREATE TABLE IF NOT EXISTS asset_tags (
    asset TEXT NOT NULL REFERENCES assets(id) ON DELETE CASCADE,
    tag TEXT NOT NULL,
    PRIMARY KEY (asset, tag)
);
CREATE TABLE IF NOT EXISTS reuse_records (
    id TEXT PRIMARY KEY,
    user TEXT NOT NULL,
    source_project TEXT NOT NULL,
    target_project TEXT NOT NULL,
    scope TEXT NOT NULL,
    summary TEXT NOT NULL DEFAULT '',
    at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS ratings (
    user TEXT NOT NULL,
    project TEXT NOT NULL REFERENCES projects(id) ON DELETE CASCADE,
    value INTEGER NOT NULL,
    updated_at TEXT NOT NULL,
    PRIMARY KEY (user, project)
);
CREATE TABLE IF NOT EXISTS events (
    project TEXT NOT NULL REFERENCES projects(id) ON DELETE CASCADE,
    seq INTEGER NOT NULL,
    actor TEXT NOT NULL,
    action TEXT NOT NULL,
    target TEXT NOT NULL,
    at TEXT NOT NULL,
    PRIMARY KEY (project, seq)
);
CREATE TABLE IF NOT EXISTS postings (
    kind TEXT NOT NULL,
    entity TEXT NOT NULL,
    field TEXT NOT NULL,
    token TEXT NOT NULL,
    PRIMARY KEY (kind, entity, field, token)
);
CREATE INDEX IF NOT EXISTS postings_token ON postings(token, kind);
CREATE TABLE IF NOT EXISTS sessions (
    token_hash TEXT PRIMARY KEY,
    user TEXT NOT NULL,
    expires_at REAL NOT NULL
);
"""


class Catalog:
    """System of record. All mutating methods are single transactions."""

    def __init__(self, db_path: str | Path, blobs: BlobStore,
                 clock: Callable[[], str] = utc_now_text):
        self.db_path = str(db_path)
        self.blobs = blobs
        self._clock = clock
        self._local = threading.local()
        # executescript manages its own transaction
        self._conn().executescript(_SCHEMA)

    # --- connections / transactions -------------------------------------

    def _conn(self) -> sqlite3.Connection:
        conn = getattr(self._local, "conn", None)
        if conn is None:
            conn = sqlite3.connect(self.db_path, isolation_level=None, timeout=30.0)
            conn.execute("PRAGMA journal_mode=WAL")
            conn.execute("PRAGMA foreign_keys=ON")
            conn.execute("PRAGMA synchronous=NORMAL")
            self._local.conn = conn
        return conn

    @contextmanager
    def read(self) -> Iterator[sqlite3.Connection]:
        """Snapshot-consistent read transaction."""
        conn = self._conn()
        conn.execute("BEGIN DEFERRED")
        try:
            yield conn
            conn.execute("COMMIT")
        except BaseException:
            conn.execute("ROLLBACK")
            raise

    @contextmanager
    def write(self) -> Iterator[sqlite3.Connection]:
        conn = self._conn()
        conn.execute("BEGIN IMMEDIATE")
        try:
            yield conn
            conn.execute("COMMIT")
        except BaseException:
            conn.execute("ROLLBACK")
            raise

    def close(self) -> None:
        conn = getattr(self._local, "conn", None)
        if conn is not None:
            conn.close()
            self._local.conn = None

    def now(self) -> str:
        return self._clock()

    # --- users -----------------------------------------------------------

    def create_user(self, email: str, display_name: str, password_digest: str) -> User:
        email = validate_email(email)
        display_name = validate_user_name(display_name)
        user = User(
            id=new_id(),
            email=email,
            display_name=display_name,
            password_digest=password_digest,
            created_at=self.now(),
        )
        with self.write() as conn:
            taken = conn.execute("SELECT 1 FROM users WHERE email=?", (email,)).fetchone()
            if taken:
                raise errors.EmailTaken(f"email {email} is already registered")
            conn.execute(
                "INSERT INTO users VALUES (?,?,?,?,?)",
                (user.id, user.email, user.display_name, user.password_digest,
                 user.created_at),
            )
        return user

    def user_by_email(self, email: str) -> User | None:
        row = self._conn().execute(
            "SELECT id, email, display_name, password_digest, created_at"
            " FROM users WHERE email=?", ((email or "").strip().lower(),)
        ).fetchone()
        return User(*row) if row else None

    def user_by_id(self, user_id: str) -> User | None:
        row = self._conn().execute(
            "SELECT id, email, display_name, password_digest, created_at"
            " FROM users WHERE id=?", (user_id,)
        ).fetchone()
        return User(*row) if row else None

    # --- projects ----------------------------------------------------------

    def create_project(self, owner: str, name: str, description: str = "",
                       tags=(), visibility: Visibility = Visibility.PUBLIC) -> Project:
        name = validate_project_name(name)
        description = validate_description(description)
        tag_set = normalize_tags(tags)
        visibility = Visibility(visibility)
        now = self.now()
        project_id = new_id()
        with self.write() as conn:
            if conn.execute("SELECT 1 FROM projects WHERE owner=? AND name=?",
                            (owner, name)).fetchone():
                raise errors.NameConflict(f"you already have a project named {name!r}")
            conn.execute(
                "INSERT INTO projects (id, owner, name, description, visibility,"
                " version, created_at, updated_at) VALUES (?,?,?,?,?,1,?,?)",
                (project_id, owner, name, description, visibility.value, now, now),
            )
            conn.executemany("INSERT INTO project_tags VALUES (?,?)",
                             [(project_id, t) for t in sorted(tag_set)])
            for kind, root_name in canonical_roots():
                conn.execute(
                    "INSERT INTO folders (id, project, parent, kind, name)"
                    " VALUES (?,?,NULL,?,?)",
                    (new_id(), project_id, kind.value, root_name),
                )
            _append_event(conn, project_id, owner, "project.created", name, now)
            search.index_project(conn, project_id, name, description, tag_set)
            return self._project(conn, project_id)

    def update_project_meta(self, actor: str, project_id: str, expected_version: int,
                            patch: dict) -> Project:
        unknown = set(patch) - {"name", "description", "tags", "visibility"}
        if unknown:
            raise errors.Validation(f"unknown fields: {sorted(unknown)}")
        with self.write() as conn:
            project = self._project(conn, project_id)
            if project.owner != actor:
                raise errors.Forbidden("only the owner can edit a project")
            if project.version != expected_version:
                raise errors.VersionConflict(
                    f"expected version {expected_version}, current is {project.version}"
                )
            name = project.name
            if "name" in patch:
                name = validate_project_name(patch["name"])
                if name != project.name and conn.execute(
                        "SELECT 1 FROM projects WHERE owner=? AND name=?",
                        (actor, name)).fetchone():
                    raise errors.NameConflict(f"you already have a project named {name!r}")
            description = project.description
            if "description" in patch:
                description = validate_description(patch["description"])
            tag_set = project.tags
            if "tags" in patch:
                tag_set = normalize_tags(patch["tags"])
            visibility = project.visibility
            if "visibility" in patch:
                try:
                    visibility = Visibility(patch["visibility"])
                except ValueError:
                    raise errors.Validation("visibility must be Public or Private")
            now = self.now()
            conn.execute(
                "UPDATE projects SET name=?, description=?, visibility=?,"
                " version=version+1, updated_at=? WHERE id=?",
                (name, description, visibility.value, now, project_id),
            )
            conn.execute("DELETE FROM project_tags WHERE project=?", (project_id,))
            conn.executemany("INSERT INTO project_tags VALUES (?,?)",
                             [(project_id, t) for t in sorted(tag_set)])
            _append_event(conn, project_id, actor, "project.updated", name, now)
            search.index_project(conn, project_id, name, description, tag_set)
            return self._project(conn, project_id)

    def delete_project(self, actor: str, project_id: str) -> None:
        with self.write() as conn:
            project = self._project(conn, project_id)
            if project.owner != actor:
                raise errors.Forbidden("only the owner can delete a project")
            for asset_id, count in conn.execute(
                    """SELECT a.asset, COUNT(*) FROM artifacts a
                       JOIN folders f ON a.folder = f.id
                       WHERE f.project=? GROUP BY a.asset""", (project_id,)):
                conn.execute("UPDATE assets SET refcount = refcount - ? WHERE id=?",
                             (count, asset_id))
            search.deindex(conn, "project", project_id)
            # cascades folders, artifacts, tags, ratings, events; reuse records stay
            conn.execute("DELETE FROM projects WHERE id=?", (project_id,))

    def get_project(self, requester: str, project_id: str) -> Project:
        with self.read() as conn:
            project = self._project(conn, project_id)
            self._check_view(project, requester)
            return project

    def list_projects(self, owner: str) -> list[Project]:
        """Dashboard listing: the owner's projects, any visibility."""
        with self.read() as conn:
            rows = conn.execute(
                "SELECT id FROM projects WHERE owner=? ORDER BY updated_at DESC, id ASC",
                (owner,),
            ).fetchall()
            return [self._project(conn, row[0]) for row in rows]

    def browse(self, requester: str, page: int = 1, per_page: int = 20
               ) -> tuple[list[tuple[Project, tuple[int, int, int]]], int]:
        """All Public projects plus the requester's own, with (ups, downs, net)."""
        page = max(1, page)
        per_page = min(max(1, per_page), 100)
        with self.read() as conn:
            total = conn.execute(
                "SELECT COUNT(*) FROM projects WHERE visibility='Public' OR owner=?",
                (requester,),
            ).fetchone()[0]
            rows = conn.execute(
                "SELECT id FROM projects WHERE visibility='Public' OR owner=?"
                " ORDER BY updated_at DESC, id ASC LIMIT ? OFFSET ?",
                (requester, per_page, (page - 1) * per_page),
            ).fetchall()
            items = []
            for (pid,) in rows:
                project = self._project(conn, pid)
                items.append((project, _aggregate(conn, pid)))
            return items, total

    def search_projects(self, requester: str, query: str, page: int = 1,
                        per_page: int = 20) -> tuple[list[search.QueryResult], int]:
        with self.read() as conn:
            return search.search_projects(conn, requester, query, page, per_page)

    def search_assets(self, requester: str, query: str, page: int = 1,
                      per_page: int = 20) -> tuple[list[search.QueryResult], int]:
        with self.read() as conn:
            return search.search_assets(conn, requester, query, page, per_page)

    # --- folders -------------------------------------------------------------

    def folder_create(self, actor: str, project_id: str, parent_id: str,
                      name: str) -> Folder:
        name = validate_folder_name(name)
        with self.write() as conn:
            project = self._project(conn, project_id)
            if project.owner != actor:
                raise errors.Forbidden("only the owner can create folders")
            parent = self._folder(conn, parent_id)
            if parent.project != project_id:
                raise errors.NotFound("parent folder is not in this project")
            self._check_sibling_free(conn, project_id, parent_id, name)
            folder = Folder(id=new_id(), project=project_id, parent=parent_id,
                            kind=FolderKind.SUB, name=name)
            conn.execute("INSERT INTO folders VALUES (?,?,?,?,?)",
                         (folder.id, folder.project, folder.parent,
                          folder.kind.value, folder.name))
            now = self._bump(conn, project_id)
            _append_event(conn, project_id, actor, "folder.created",
                          _folder_path(conn, folder.id), now)
            return folder

    def folder_rename(self, actor: str, folder_id: str, new_name: str) -> Folder:
        new_name = validate_folder_name(new_name)
        with self.write() as conn:
            folder = self._folder(conn, folder_id)
            project = self._project(conn, folder.project)
            if project.owner != actor:
                raise errors.Forbidden("only the owner can rename folders")
            if folder.kind != FolderKind.SUB:
                raise errors.RootImmutable("the four root folders cannot be renamed")
            if new_name.lower() != folder.name.lower():
                self._check_sibling_free(conn, folder.project, folder.parent, new_name)
            conn.execute("UPDATE folders SET name=? WHERE id=?", (new_name, folder_id))
            folder.name = new_name
            now = self._bump(conn, folder.project)
            _append_event(conn, folder.project, actor, "folder.renamed",
                          _folder_path(conn, folder_id), now)
            return folder

    def folder_delete(self, actor: str, folder_id: str) -> None:
        with self.write() as conn:
            folder = self._folder(conn, folder_id)
            project = self._project(conn, folder.project)
            if project.owner != actor:
                raise errors.Forbidden("only the owner can delete folders")
            if folder.kind != FolderKind.SUB:
                raise errors.RootImmutable("the four root folders cannot be deleted")
            path = _folder_path(conn, folder_id)
            subtree = folder_subtree_ids(conn, folder_id)
            marks = ",".join("?" for _ in subtree)
            for asset_id, count in conn.execute(
                    f"SELECT asset, COUNT(*) FROM artifacts WHERE folder IN ({marks})"
                    " GROUP BY asset", subtree):
                conn.execute("UPDATE assets SET refcount = refcount - ? WHERE id=?",
                             (count, asset_id))
            conn.execute(f"DELETE FROM artifacts WHERE folder IN ({marks})", subtree)
            conn.execute(f"DELETE FROM folders WHERE id IN ({marks})", subtree)
            now = self._bump(conn, folder.project)
            _append_event(conn, folder.project, actor, "folder.deleted", path, now)

    def get_folder(self, requester: str, folder_id: str) -> tuple[Folder, str]:
        """Folder plus its path, visibility-checked."""
        with self.read() as conn:
            folder = self._folder(conn, folder_id)
            project = self._project(conn, folder.project)
            self._check_view(project, requester)
            return folder, _folder_path(conn, folder_id)

    def folder_list(self, requester: str, folder_id: str
                    ) -> tuple[list[Artifact], list[Folder]]:
        with self.read() as conn:
            folder = self._folder(conn, folder_id)
            project = self._project(conn, folder.project)
            self._check_view(project, requester)
            artifacts = [
                _artifact_from_row(row) for row in conn.execute(
                    "SELECT id, folder, asset, selector, display_name, added_by,"
                    " added_at FROM artifacts WHERE folder=?", (folder_id,))
            ]
            artifacts.sort(key=lambda a: (a.display_name.lower(), a.id))
            subfolders = [
                Folder(id=r[0], project=r[1], parent=r[2], kind=FolderKind(r[3]), name=r[4])
                for r in conn.execute(
                    "SELECT id, project, parent, kind, name FROM folders WHERE parent=?",
                    (folder_id,))
            ]
            subfolders.sort(key=lambda f: (f.name.lower(), f.id))
            return artifacts, subfolders

    # --- artifacts ------------------------------------------------------------

    def artifact_add(self, actor: str, folder_id: str, asset_id: str,
                     selector: Selector, display_name: str, asset_tags=None) -> Artifact:
        display_name = validate_display_name(display_name)
        with self.write() as conn:
            folder = self._folder(conn, folder_id)
            project = self._project(conn, folder.project)
            if project.owner != actor:
                raise errors.Forbidden("only the owner can add artifacts")
            meta = self._asset(conn, asset_id)
            self._validate_selector(meta, selector)
            if conn.execute("SELECT 1 FROM artifacts WHERE folder=? AND display_name=?",
                            (folder_id, display_name)).fetchone():
                raise errors.NameConflict(
                    f"folder already has an artifact named {display_name!r}")
            now = self.now()
            artifact = Artifact(id=new_id(), folder=folder_id, asset=asset_id,
                                selector=selector, display_name=display_name,
                                added_by=actor, added_at=now)
            conn.execute(
                "INSERT INTO artifacts VALUES (?,?,?,?,?,?,?)",
                (artifact.id, folder_id, asset_id,
                 json.dumps(selector.to_wire(), sort_keys=True),
                 display_name, actor, now),
            )
            conn.execute("UPDATE assets SET refcount = refcount + 1 WHERE id=?",
                         (asset_id,))
            if asset_tags:
                self._merge_asset_tags(conn, asset_id, asset_tags)
            now = self._bump(conn, folder.project)
            _append_event(conn, folder.project, actor, "artifact.added",
                          f"{_folder_path(conn, folder_id)}/{display_name}", now)
            return artifact

    def artifact_remove(self, actor: str, artifact_id: str) -> None:
        with self.write() as conn:
            artifact = self._artifact(conn, artifact_id)
            folder = self._folder(conn, artifact.folder)
            project = self._project(conn, folder.project)
            if project.owner != actor:
                raise errors.Forbidden("only the owner can remove artifacts")
            path = f"{_folder_path(conn, folder.id)}/{artifact.display_name}"
            conn.execute("DELETE FROM artifacts WHERE id=?", (artifact_id,))
            conn.execute("UPDATE assets SET refcount = refcount - 1 WHERE id=?",
                         (artifact.asset,))
            now = self._bump(conn, folder.project)
            _append_event(conn, folder.project, actor, "artifact.removed", path, now)

    # --- assets ----------------------------------------------------------------

    def register_asset(self, uploader: str, data, filename: str,
                       media_type: str, tags=()) -> tuple[AssetMeta, bool]:
        """Ingest bytes (deduplicated) and upsert the asset record."""
        tag_set = normalize_tags(tags)
        filename = (filename or "upload.bin").strip() or "upload.bin"
        media_type = (media_type or "application/octet-stream").strip()
        with self.blobs.ingest_guard():
            asset_id = self.blobs.put(data)
            size = self.blobs.stat(asset_id).size_bytes
            with self.write() as conn:
                existing = conn.execute("SELECT 1 FROM assets WHERE id=?",
                                        (asset_id,)).fetchone() is not None
                if not existing:
                    conn.execute(
                        "INSERT INTO assets (id, size_bytes, media_type,"
                        " original_filename, uploader, created_at, refcount)"
                        " VALUES (?,?,?,?,?,?,0)",
                        (asset_id, size, media_type, filename, uploader, self.now()),
                    )
                if tag_set:
                    self._merge_asset_tags(conn, asset_id, tag_set)
                else:
                    self._reindex_asset(conn, asset_id)
                return self._asset(conn, asset_id), existing

    def get_asset_meta(self, requester: str, asset_id: str) -> AssetMeta:
        with self.read() as conn:
            meta = self._asset(conn, asset_id)
            if meta.uploader != requester and not search._asset_visible(
                    conn, asset_id, requester):
                raise errors.Forbidden("asset is not visible to you")
            return meta

    # --- copy / import -----------------------------------------------------------

    def project_copy(self, actor: str, source_id: str, new_name: str) -> Project:
        new_name = validate_project_name(new_name)
        now = self.now()
        with self.write() as conn:
            source = self._project(conn, source_id)
            if source.owner == actor:
                raise errors.CopyOwnProject("you cannot copy your own project")
            self._check_view(source, actor)
            if conn.execute("SELECT 1 FROM projects WHERE owner=? AND name=?",
                            (actor, new_name)).fetchone():
                raise errors.NameConflict(f"you already have a project named {new_name!r}")

            copy_id = new_id()
            conn.execute(
                "INSERT INTO projects (id, owner, name, description, visibility,"
                " version, copied_from_id, copied_from_version, copied_from_name,"
                " created_at, updated_at) VALUES (?,?,?,?,?,1,?,?,?,?,?)",
                (copy_id, actor, new_name, source.description,
                 Visibility.PRIVATE.value, source.id, source.version, source.name,
                 now, now),
            )
            conn.executemany("INSERT INTO project_tags VALUES (?,?)",
                             [(copy_id, t) for t in sorted(source.tags)])

            id_map: dict[str, str] = {}
            for row in conn.execute(
                    "SELECT id, parent, kind, name FROM folders WHERE project=?"
                    " ORDER BY id", (source_id,)).fetchall():
                id_map[row[0]] = new_id()
            for old_id, parent, kind, name in conn.execute(
                    "SELECT id, parent, kind, name FROM folders WHERE project=?"
                    " ORDER BY id", (source_id,)).fetchall():
                conn.execute(
                    "INSERT INTO folders VALUES (?,?,?,?,?)",
                    (id_map[old_id], copy_id,
                     id_map[parent] if parent else None, kind, name),
                )
            copied = 0
            for folder, asset, selector, display_name in conn.execute(
                    """SELECT a.folder, a.asset, a.selector, a.display_name
                       FROM artifacts a JOIN folders f ON a.folder = f.id
                       WHERE f.project=? ORDER BY a.id""", (source_id,)).fetchall():
                conn.execute(
                    "INSERT INTO artifacts VALUES (?,?,?,?,?,?,?)",
                    (new_id(), id_map[folder], asset, selector, display_name,
                     actor, now),
                )
                conn.execute("UPDATE assets SET refcount = refcount + 1 WHERE id=?",
                             (asset,))
                copied += 1

            _append_event(conn, copy_id, actor, "project.created", new_name, now)
            actor_row = self.user_by_id(actor)
            _append_event(conn, source_id, actor, "project.copied-by",
                          actor_row.display_name if actor_row else actor, now)
            conn.execute(
                "INSERT INTO reuse_records VALUES (?,?,?,?,?,?,?)",
                (new_id(), actor, source_id, copy_id, ReuseScope.FULL.value,
                 f"full copy ({copied} artifacts)", now),
            )
            search.index_project(conn, copy_id, new_name, source.description,
                                 source.tags)
            return self._project(conn, copy_id)

    def selection_import(self, actor: str, source_id: str, selection: Selection,
                         target_id: str, target_folder_id: str) -> int:
        if selection.is_empty():
            raise errors.EmptySelection("nothing selected")
        now = self.now()
        with self.write() as conn:
            source = self._project(conn, source_id)
            self._check_view(source, actor)
            target = self._project(conn, target_id)
            if target.owner != actor:
                raise errors.Forbidden("you can only import into your own project")
            dest = self._folder(conn, target_folder_id)
            if dest.project != target_id:
                raise errors.NotFound("target folder is not in the target project")

            folder_ids, artifact_ids = _validated_selection(conn, source_id, selection)
            top_folders = _drop_nested(conn, folder_ids)
            # artifacts already inside a selected folder arrive with that folder
            covered = set()
            for fid in top_folders:
                covered.update(folder_subtree_ids(conn, fid))
            direct_artifacts = [
                aid for aid in sorted(artifact_ids)
                if self._artifact(conn, aid).folder not in covered
            ]

            imported: list[str] = []  # event targets, in insertion order

            def copy_artifact_into(artifact: Artifact, folder_id: str,
                                   suffix_on_clash: bool) -> None:
                name = artifact.display_name
                if suffix_on_clash:
                    taken = {
                        r[0] for r in conn.execute(
                            "SELECT display_name FROM artifacts WHERE folder=?",
                            (folder_id,))
                    }
                    name = _free_name(name, taken, fold_case=False)
                conn.execute(
                    "INSERT INTO artifacts VALUES (?,?,?,?,?,?,?)",
                    (new_id(), folder_id, artifact.asset,
                     json.dumps(artifact.selector.to_wire(), sort_keys=True),
                     name, actor, now),
                )
                conn.execute("UPDATE assets SET refcount = refcount + 1 WHERE id=?",
                             (artifact.asset,))
                imported.append(f"{_folder_path(conn, folder_id)}/{name}")

            def copy_folder_tree(src_folder_id: str, dest_parent: str,
                                 suffix_on_clash: bool) -> None:
                src = self._folder(conn, src_folder_id)
                name = src.name
                if suffix_on_clash:
                    taken = {
                        r[0].lower() for r in conn.execute(
                            "SELECT name FROM folders WHERE project=? AND parent=?",
                            (target_id, dest_parent))
                    }
                    name = _free_name(name, taken, fold_case=True)
                new_folder_id = new_id()
                conn.execute("INSERT INTO folders VALUES (?,?,?,?,?)",
                             (new_folder_id, target_id, dest_parent,
                              FolderKind.SUB.value, name))
                for row in conn.execute(
                        "SELECT id, folder, asset, selector, display_name, added_by,"
                        " added_at FROM artifacts WHERE folder=? ORDER BY display_name",
                        (src_folder_id,)).fetchall():
                    copy_artifact_into(_artifact_from_row(row), new_folder_id, False)
                for (child_id,) in conn.execute(
                        "SELECT id FROM folders WHERE parent=? ORDER BY name",
                        (src_folder_id,)).fetchall():
                    copy_folder_tree(child_id, new_folder_id, False)

            for fid in top_folders:
                copy_folder_tree(fid, target_folder_id, True)
            for aid in direct_artifacts:
                copy_artifact_into(self._artifact(conn, aid), target_folder_id, True)

            now_bump = self._bump(conn, target_id)
            for target_path in imported:
                _append_event(conn, target_id, actor, "artifact.added", target_path,
                              now_bump)
            if source.owner != actor:
                summary = (f"{len(top_folders)} folders, "
                           f"{len(imported)} artifacts")
                conn.execute(
                    "INSERT INTO reuse_records VALUES (?,?,?,?,?,?,?)",
                    (new_id(), actor, source_id, target_id,
                     ReuseScope.PARTIAL.value, summary, now),
                )
            return len(imported)

    # --- tracking / provenance ----------------------------------------------------

    def tracking_feed(self, requester: str, project_id: str, limit: int = 50,
                      before_seq: int | None = None) -> list[TrackingEvent]:
        limit = min(max(1, limit), 200)
        with self.read() as conn:
            project = self._project(conn, project_id)
            self._check_view(project, requester)
            if before_seq is None:
                rows = conn.execute(
                    "SELECT seq, project, actor, action, target, at FROM events"
                    " WHERE project=? ORDER BY seq DESC LIMIT ?",
                    (project_id, limit)).fetchall()
            else:
                rows = conn.execute(
                    "SELECT seq, project, actor, action, target, at FROM events"
                    " WHERE project=? AND seq < ? ORDER BY seq DESC LIMIT ?",
                    (project_id, before_seq, limit)).fetchall()
            return [TrackingEvent(*row) for row in rows]

    def provenance(self, requester: str, project_id: str) -> dict | None:
        """The copied-from snapshot plus whether the origin still exists."""
        with self.read() as conn:
            project = self._project(conn, project_id)
            self._check_view(project, requester)
            if project.copied_from is None:
                return None
            origin = conn.execute("SELECT 1 FROM projects WHERE id=?",
                                  (project.copied_from.project_id,)).fetchone()
            return {
                "project_id": project.copied_from.project_id,
                "source_version": project.copied_from.source_version,
                "source_name": project.copied_from.source_name,
                "origin_available": origin is not None,
            }

    def tree_snapshot(self, project_id: str) -> dict:
        """Canonical content snapshot of the folder tree (no ids/timestamps)."""
        with self.read() as conn:
            self._project(conn, project_id)

            def folder_node(folder_id: str) -> dict:
                folder = self._folder(conn, folder_id)
                artifact_rows = conn.execute(
                    "SELECT display_name, asset, selector FROM artifacts"
                    " WHERE folder=? ORDER BY display_name, id", (folder_id,)
                ).fetchall()
                child_rows = conn.execute(
                    "SELECT id FROM folders WHERE parent=? ORDER BY name, id",
                    (folder_id,)).fetchall()
                return {
                    "kind": folder.kind.value,
                    "name": folder.name,
                    "artifacts": [
                        {"display_name": d, "asset": a,
                         "selector": json.loads(s)}
                        for d, a, s in artifact_rows
                    ],
                    "folders": [folder_node(r[0]) for r in child_rows],
                }

            roots = conn.execute(
                "SELECT id FROM folders WHERE project=? AND parent IS NULL",
                (project_id,)).fetchall()
            nodes = [folder_node(r[0]) for r in roots]
            order = {name: i for i, (_, name) in enumerate(canonical_roots())}
            nodes.sort(key=lambda n: order.get(n["name"], 99))
            return {"roots": nodes}

    def list_reuse_records(self, source_project: str | None = None,
                           user: str | None = None) -> list[ReuseRecord]:
        clauses, params = [], []
        if source_project is not None:
            clauses.append("source_project=?")
            params.append(source_project)
        if user is not None:
            clauses.append("user=?")
            params.append(user)
        where = f"WHERE {' AND '.join(clauses)}" if clauses else ""
        rows = self._conn().execute(
            f"SELECT id, user, source_project, target_project, scope, summary, at"
            f" FROM reuse_records {where} ORDER BY at, id", params).fetchall()
        return [
            ReuseRecord(id=r[0], user=r[1], source_project=r[2], target_project=r[3],
                        scope=ReuseScope(r[4]), summary=r[5], at=r[6])
            for r in rows
        ]

    # --- maintenance ----------------------------------------------------------------

    def audit_refcounts(self) -> list[tuple[str, int, int]]:
        """(asset id, stored refcount, actual references) for every mismatch."""
        with self.read() as conn:
            rows = conn.execute(
                """SELECT s.id, s.refcount,
                          (SELECT COUNT(*) FROM artifacts a WHERE a.asset = s.id)
                   FROM assets s"""
            ).fetchall()
            return [(r[0], r[1], r[2]) for r in rows if r[1] != r[2]]

    def run_gc(self) -> tuple[int, int]:
        """Collect unreferenced blobs; returns (blobs removed, metas removed)."""
        token = self.blobs.snapshot_token()
        with self.read() as conn:
            live = {r[0] for r in conn.execute(
                "SELECT id FROM assets WHERE refcount > 0")}
        removed = self.blobs.gc(live, as_of=token)
        metas_removed = 0
        with self.write() as conn:
            stale = [r[0] for r in conn.execute(
                "SELECT id FROM assets WHERE refcount <= 0").fetchall()]
            for asset_id in stale:
                if not self.blobs.exists(asset_id):
                    search.deindex(conn, "asset", asset_id)
                    conn.execute("DELETE FROM assets WHERE id=?", (asset_id,))
                    metas_removed += 1
        return removed, metas_removed

    # --- internals ---------------------------------------------------------------------

    def _project(self, conn: sqlite3.Connection, project_id: str) -> Project:
        row = conn.execute(
            "SELECT id, owner, name, description, visibility, version,"
            " copied_from_id, copied_from_version, copied_from_name,"
            " created_at, updated_at FROM projects WHERE id=?", (project_id,)
        ).fetchone()
        if row is None:
            raise errors.NotFound(f"no project {project_id}")
        tags = {r[0] for r in conn.execute(
            "SELECT tag FROM project_tags WHERE project=?", (project_id,))}
        copied_from = None
        if row[6] is not None:
            copied_from = CopiedFrom(project_id=row[6], source_version=row[7],
                                     source_name=row[8])
        return Project(id=row[0], owner=row[1], name=row[2], description=row[3],
                       tags=tags, visibility=Visibility(row[4]), version=row[5],
                       copied_from=copied_from, created_at=row[9], updated_at=row[10])

    def _folder(self, conn: sqlite3.Connection, folder_id: str) -> Folder:
        row = conn.execute(
            "SELECT id, project, parent, kind, name FROM folders WHERE id=?",
            (folder_id,)).fetchone()
        if row is None:
            raise errors.NotFound(f"no folder {folder_id}")
        return Folder(id=row[0], project=row[1], parent=row[2],
                      kind=FolderKind(row[3]), name=row[4])

    def _artifact(self, conn: sqlite3.Connection, artifact_id: str) -> Artifact:
        row = conn.execute(
            "SELECT id, folder, asset, selector, display_name, added_by, added_at"
            " FROM artifacts WHERE id=?", (artifact_id,)).fetchone()
        if row is None:
            raise errors.NotFound(f"no artifact {artifact_id}")
        return _artifact_from_row(row)

    def _asset(self, conn: sqlite3.Connection, asset_id: str) -> AssetMeta:
        row = conn.execute(
            "SELECT id, size_bytes, media_type, original_filename, uploader,"
            " created_at, refcount FROM assets WHERE id=?", (asset_id,)).fetchone()
        if row is None:
            raise errors.AssetNotFound(f"no asset {asset_id}")
        tags = {r[0] for r in conn.execute(
            "SELECT tag FROM asset_tags WHERE asset=?", (asset_id,))}
        return AssetMeta(id=row[0], size_bytes=row[1], media_type=row[2],
                         original_filename=row[3], uploader=row[4], tags=tags,
                         created_at=row[5], refcount=row[6])

    def _check_view(self, project: Project, requester: str) -> None:
        if project.visibility != Visibility.PUBLIC and project.owner != requester:
            raise errors.Forbidden("project is private")

    def _check_sibling_free(self, conn: sqlite3.Connection, project_id: str,
                            parent_id: str | None, name: str) -> None:
        row = conn.execute(
            "SELECT 1 FROM folders WHERE project=? AND ifnull(parent,'')=?"
            " AND lower(name)=lower(?)",
            (project_id, parent_id or "", name)).fetchone()
        if row:
            raise errors.NameConflict(f"a sibling folder named {name!r} already exists")

    def _validate_selector(self, meta: AssetMeta, selector: Selector) -> None:
        if isinstance(selector, Whole):
            return
        if isinstance(selector, ByteRange):
            if selector.offset + selector.length > meta.size_bytes:
                raise errors.SelectorInvalid(
                    f"byte range exceeds asset size {meta.size_bytes}")
            return
        if isinstance(selector, Members):
            if meta.media_type != "application/zip":
                raise errors.SelectorInvalid(
                    "member selection requires an application/zip asset")
            try:
                names = archive_member_names(self.blobs.get(meta.id))
            except errors.NotAnArchive as exc:
                raise errors.SelectorInvalid(str(exc))
            missing = [p for p in selector.paths if p not in names]
            if missing:
                raise errors.SelectorInvalid(f"archive has no member {missing[0]!r}")
            return
        raise errors.SelectorInvalid(f"unsupported selector {selector!r}")

    def _merge_asset_tags(self, conn: sqlite3.Connection, asset_id: str,
                          raw_tags) -> None:
        new_tags = normalize_tags(raw_tags)
        current = {r[0] for r in conn.execute(
            "SELECT tag FROM asset_tags WHERE asset=?", (asset_id,))}
        merged = current | new_tags
        if len(merged) > 32:
            raise errors.Validation("asset would exceed 32 tags")
        conn.executemany("INSERT OR IGNORE INTO asset_tags VALUES (?,?)",
                         [(asset_id, t) for t in sorted(new_tags)])
        self._reindex_asset(conn, asset_id)

    def _reindex_asset(self, conn: sqlite3.Connection, asset_id: str) -> None:
        meta = self._asset(conn, asset_id)
        search.index_asset(conn, asset_id, meta.original_filename, meta.tags)

    def _bump(self, conn: sqlite3.Connection, project_id: str) -> str:
        """Version +1 and updated_at for one mutating operation; returns now."""
        now = self.now()
        conn.execute("UPDATE projects SET version = version + 1, updated_at=?"
                     " WHERE id=?", (now, project_id))
        return now


# --- module-level helpers (shared with packaging) --------------------------------

def folder_subtree_ids(conn: sqlite3.Connection, folder_id: str) -> list[str]:
    rows = conn.execute(
        """WITH RECURSIVE sub(id) AS (
               SELECT id FROM folders WHERE id=?
               UNION ALL
               SELECT f.id FROM folders f JOIN sub s ON f.parent = s.id
           ) SELECT id FROM sub""", (folder_id,)).fetchall()
    return [r[0] for r in rows]


def _folder_path(conn: sqlite3.Connection, folder_id: str) -> str:
    parts: list[str] = []
    current: str | None = folder_id
    while current is not None:
        row = conn.execute("SELECT parent, name FROM folders WHERE id=?",
                           (current,)).fetchone()
        if row is None:
            raise errors.NotFound(f"no folder {current}")
        parts.append(row[1])
        current = row[0]
    return "/".join(reversed(parts))


def folder_path(conn: sqlite3.Connection, folder_id: str) -> str:
    return _folder_path(conn, folder_id)


def _artifact_from_row(row) -> Artifact:
    return Artifact(id=row[0], folder=row[1], asset=row[2],
                    selector=selector_from_wire(json.loads(row[3])),
                    display_name=row[4], added_by=row[5], added_at=row[6])


def _aggregate(conn: sqlite3.Connection, project_id: str) -> tuple[int, int, int]:
    ups = conn.execute("SELECT COUNT(*) FROM ratings WHERE project=? AND value=1",
                       (project_id,)).fetchone()[0]
    downs = conn.execute("SELECT COUNT(*) FROM ratings WHERE project=? AND value=-1",
                         (project_id,)).fetchone()[0]
    return ups, downs, ups - downs


def _append_event(conn: sqlite3.Connection, project_id: str, actor: str,
                  action: str, target: str, at: str) -> None:
    next_seq = conn.execute(
        "SELECT COALESCE(MAX(seq), 0) + 1 FROM events WHERE project=?",
        (project_id,)).fetchone()[0]
    conn.execute("INSERT INTO events VALUES (?,?,?,?,?,?)",
                 (project_id, next_seq, actor, action, target, at))


def _validated_selection(conn: sqlite3.Connection, project_id: str,
                         selection: Selection) -> tuple[list[str], list[str]]:
    folder_ids = sorted(selection.folders)
    for fid in folder_ids:
        row = conn.execute("SELECT project FROM folders WHERE id=?", (fid,)).fetchone()
        if row is None or row[0] != project_id:
            raise errors.NotFound(f"folder {fid} is not in the source project")
    artifact_ids = sorted(selection.artifacts)
    for aid in artifact_ids:
        row = conn.execute(
            """SELECT f.project FROM artifacts a JOIN folders f ON a.folder = f.id
               WHERE a.id=?""", (aid,)).fetchone()
        if row is None or row[0] != project_id:
            raise errors.NotFound(f"artifact {aid} is not in the source project")
    return folder_ids, artifact_ids


def _drop_nested(conn: sqlite3.Connection, folder_ids: list[str]) -> list[str]:
    """Remove folders already covered by another selected folder's subtree."""
    selected = set(folder_ids)
    keep = []
    for fid in folder_ids:
        current = conn.execute("SELECT parent FROM folders WHERE id=?",
                               (fid,)).fetchone()
        ancestor = current[0] if current else None
        nested = False
        while ancestor is not None:
            if ancestor in selected:
                nested = True
                break
            row = conn.execute("SELECT parent FROM folders WHERE id=?",
                               (ancestor,)).fetchone()
            ancestor = row[0] if row else None
        if not nested:
            keep.append(fid)
    return keep


def _free_name(base: str, taken: set[str], fold_case: bool) -> str:
    """Collision-resolving name: base, else base-imported-<n> for smallest free n>=2."""
    probe = base.lower() if fold_case else base
    if probe not in taken:
        return base
    n = 2
    while True:
        candidate = f"{base}-imported-{n}"
        probe = candidate.lower() if fold_case else candidate
        if probe not in taken:
            return candidate
        n += 1
