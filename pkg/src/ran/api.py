"""HTTP/JSON facade over the registry modules.

Every endpoint is a thin adapter: parse request, call one module operation,
serialize the result. Errors share one body shape,
``{"error": {"code": "<MachineCode>", "message": "..."}}``, with codes equal
to the module error names. All endpoints except register and login require
``Authorization: Bearer <token>``.
"""

from __future__ import annotations

import collections
import re
import time
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import auth, errors, packaging, ratings
from .catalog import Catalog
from .model import (
    Artifact,
    AssetMeta,
    Folder,
    Project,
    Selection,
    TrackingEvent,
    User,
    selector_from_wire,
)

API_PREFIX = "/api/v1"


# --- serialization ----------------------------------------------------------

def user_wire(user: User) -> dict:
    return user.public_view()


def project_wire(project: Project) -> dict:
    copied_from = None
    if project.copied_from is not None:
        copied_from = {
            "project_id": project.copied_from.project_id,
            "source_version": project.copied_from.source_version,
            "source_name": project.copied_from.source_name,
        }
    return {
        "id": project.id,
        "owner": project.owner,
        "name": project.name,
        "description": project.description,
        "tags": sorted(project.tags),
        "visibility": project.visibility.value,
        "version": project.version,
        "copied_from": copied_from,
        "created_at": project.created_at,
        "updated_at": project.updated_at,
    }


def folder_wire(folder: Folder) -> dict:
    return {
        "id": folder.id,
        "project": folder.project,
        "parent": folder.parent,
        "kind": folder.kind.value,
        "name": folder.name,
    }


def artifact_wire(artifact: Artifact) -> dict:
    return {
        "id": artifact.id,
        "folder": artifact.folder,
        "asset": artifact.asset,
        "selector": artifact.selector.to_wire(),
        "display_name": artifact.display_name,
        "added_by": artifact.added_by,
        "added_at": artifact.added_at,
    }


def asset_wire(meta: AssetMeta) -> dict:
    return {
        "id": meta.id,
        "size_bytes": meta.size_bytes,
        "media_type": meta.media_type,
        "original_filename": meta.original_filename,
        "uploader": meta.uploader,
        "tags": sorted(meta.tags),
        "created_at": meta.created_at,
        "refcount": meta.refcount,
    }


def event_wire(event: TrackingEvent, actor_name: str | None) -> dict:
    return {
        "seq": event.seq,
        "project": event.project,
        "actor": event.actor,
        "actor_name": actor_name,
        "action": event.action,
        "target": event.target,
        "at": event.at,
    }


def _safe_filename(name: str, fallback: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("._")
    return cleaned or fallback


class _UploadWindow:
    """Per-client upload counter over a sliding one-minute window."""

    def __init__(self, cap_per_minute: int):
        self.cap = cap_per_minute
        self._hits: dict[str, collections.deque] = collections.defaultdict(
            collections.deque)

    def admit(self, client: str) -> bool:
        if self.cap <= 0:
            return True
        now = time.monotonic()
        hits = self._hits[client]
        while hits and hits[0] <= now - 60.0:
            hits.popleft()
        if len(hits) >= self.cap:
            return False
        hits.append(now)
        return True


def create_app(catalog: Catalog, sessions: auth.Sessions,
               upload_cap_per_minute: int = 120,
               static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="artifact registry", docs_url=None, redoc_url=None,
                  openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-Total-Count"],
    )
    uploads = _UploadWindow(upload_cap_per_minute)

    # --- error shape ------------------------------------------------------

    @app.exception_handler(errors.RegistryError)
    async def registry_error(request: Request, exc: errors.RegistryError):
        return JSONResponse(status_code=exc.http_status,
                            content={"error": {"code": exc.code,
                                               "message": str(exc)}})

    @app.exception_handler(RequestValidationError)
    async def invalid_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": {"code": "Validation",
                                               "message": "malformed request"}})

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        code = {404: "NotFound", 405: "MethodNotAllowed"}.get(
            exc.status_code, f"Http{exc.status_code}")
        return JSONResponse(status_code=exc.status_code,
                            content={"error": {"code": code,
                                               "message": str(exc.detail)}})

    # --- helpers ------------------------------------------------------------

    def require_user(request: Request) -> str:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            raise errors.InvalidCredentials("missing bearer token")
        return sessions.authenticate(header[7:].strip())

    async def json_body(request: Request) -> dict:
        try:
            data = await request.json()
        except Exception:
            raise errors.Validation("request body must be a JSON object")
        if not isinstance(data, dict):
            raise errors.Validation("request body must be a JSON object")
        return data

    def field(body: dict, name: str, required: bool = True, default=None):
        if name not in body:
            if required:
                raise errors.Validation(f"missing field {name!r}")
            return default
        return body[name]

    def page_params(request: Request) -> tuple[int, int]:
        try:
            page = int(request.query_params.get("page", "1"))
            per_page = int(request.query_params.get("per_page", "20"))
        except ValueError:
            raise errors.Validation("page and per_page must be integers")
        return max(1, page), min(max(1, per_page), 100)

    def actor_names(events: list[TrackingEvent]) -> dict[str, str | None]:
        names: dict[str, str | None] = {}
        for event in events:
            if event.actor not in names:
                user = catalog.user_by_id(event.actor)
                names[event.actor] = user.display_name if user else None
        return names

    def project_detail(requester: str, project: Project) -> dict:
        body = project_wire(project)
        ups, downs, net = ratings.aggregate(catalog, project.id)
        body["score"] = {"ups": ups, "downs": downs, "net": net}
        if project.copied_from is not None:
            body["provenance"] = catalog.provenance(requester, project.id)
        roots = []
        with catalog.read() as conn:
            rows = conn.execute(
                "SELECT id, project, parent, kind, name FROM folders"
                " WHERE project=? AND parent IS NULL", (project.id,)).fetchall()
        order = {"TrainData": 0, "TestData": 1, "Model": 2, "Code": 3}
        rows.sort(key=lambda r: order.get(r[4], 99))
        for row in rows:
            roots.append({"id": row[0], "kind": row[3], "name": row[4]})
        body["roots"] = roots
        return body

    # --- users / sessions ------------------------------------------------------

    @app.post(f"{API_PREFIX}/users", status_code=201)
    async def register(request: Request):
        body = await json_body(request)
        user = auth.register(catalog,
                             field(body, "email"),
                             field(body, "display_name"),
                             field(body, "password"))
        return user_wire(user)

    @app.post(f"{API_PREFIX}/sessions")
    async def login(request: Request):
        body = await json_body(request)
        user, token = auth.login(catalog, sessions,
                                 field(body, "email"), field(body, "password"))
        return {"token": token, "user": user_wire(user)}

    @app.delete(f"{API_PREFIX}/sessions", status_code=204)
    async def logout(request: Request):
        require_user(request)
        header = request.headers.get("authorization", "")
        sessions.revoke(header[7:].strip())
        return Response(status_code=204)

    # --- projects ---------------------------------------------------------------

    @app.get(f"{API_PREFIX}/projects")
    async def list_or_search_projects(request: Request):
        uid = require_user(request)
        page, per_page = page_params(request)
        query = request.query_params.get("query")
        if query is not None:
            results, total = catalog.search_projects(uid, query, page, per_page)
            items = []
            for result in results:
                project = catalog.get_project(uid, result.id)
                items.append({
                    "kind": "project",
                    "id": result.id,
                    "score": result.score,
                    "matched_fields": sorted(result.matched_fields),
                    "project": project_wire(project),
                })
            return JSONResponse(items, headers={"X-Total-Count": str(total)})
        if request.query_params.get("mine") in ("1", "true", "yes"):
            projects = catalog.list_projects(uid)
            total = len(projects)
            start = (page - 1) * per_page
            window = projects[start:start + per_page]
            items = [project_wire(p) for p in window]
            return JSONResponse(items, headers={"X-Total-Count": str(total)})
        rows, total = catalog.browse(uid, page, per_page)
        items = []
        for project, (ups, downs, net) in rows:
            body = project_wire(project)
            body["score"] = {"ups": ups, "downs": downs, "net": net}
            items.append(body)
        return JSONResponse(items, headers={"X-Total-Count": str(total)})

    @app.post(f"{API_PREFIX}/projects", status_code=201)
    async def create_project(request: Request):
        uid = require_user(request)
        body = await json_body(request)
        project = catalog.create_project(
            uid,
            field(body, "name"),
            field(body, "description", required=False, default=""),
            field(body, "tags", required=False, default=[]),
            field(body, "visibility", required=False, default="Public"),
        )
        return project_detail(uid, project)

    @app.get(f"{API_PREFIX}/projects/{{project_id}}")
    async def get_project(request: Request, project_id: str):
        uid = require_user(request)
        project = catalog.get_project(uid, project_id)
        return project_detail(uid, project)

    @app.patch(f"{API_PREFIX}/projects/{{project_id}}")
    async def patch_project(request: Request, project_id: str):
        uid = require_user(request)
        body = await json_body(request)
        expected = field(body, "expected_version")
        if not isinstance(expected, int):
            raise errors.Validation("expected_version must be an integer")
        patch = {k: v for k, v in body.items()
                 if k in ("name", "description", "tags", "visibility")}
        project = catalog.update_project_meta(uid, project_id, expected, patch)
        return project_detail(uid, project)

    @app.delete(f"{API_PREFIX}/projects/{{project_id}}", status_code=204)
    async def delete_project(request: Request, project_id: str):
        uid = require_user(request)
        catalog.delete_project(uid, project_id)
        return Response(status_code=204)

    @app.post(f"{API_PREFIX}/projects/{{project_id}}/copies", status_code=201)
    async def copy_project(request: Request, project_id: str):
        uid = require_user(request)
        body = await json_body(request)
        copy = catalog.project_copy(uid, project_id, field(body, "name"))
        return project_detail(uid, copy)

    @app.post(f"{API_PREFIX}/projects/{{project_id}}/imports")
    async def import_selection(request: Request, project_id: str):
        uid = require_user(request)
        body = await json_body(request)
        raw = field(body, "selection")
        if not isinstance(raw, dict):
            raise errors.Validation("selection must be an object")
        selection = Selection(
            folders=frozenset(raw.get("folders") or ()),
            artifacts=frozenset(raw.get("artifacts") or ()),
        )
        count = catalog.selection_import(
            uid, project_id, selection,
            field(body, "target_project"), field(body, "target_folder"))
        return {"imported": count}

    @app.get(f"{API_PREFIX}/projects/{{project_id}}/package")
    async def download_package(request: Request, project_id: str):
        uid = require_user(request)
        folders = request.query_params.get("folders")
        artifacts = request.query_params.get("artifacts")
        selection = None
        if folders is not None or artifacts is not None:
            selection = Selection(
                folders=frozenset(x for x in (folders or "").split(",") if x),
                artifacts=frozenset(x for x in (artifacts or "").split(",") if x),
            )
        project = catalog.get_project(uid, project_id)
        blob = packaging.build_package(catalog, uid, project_id, selection)
        filename = _safe_filename(project.name, "package") + ".zip"
        return Response(
            content=blob,
            media_type="application/zip",
            headers={"Content-Disposition": f'attachment; filename="{filename}"'},
        )

    # --- ratings ---------------------------------------------------------------

    @app.put(f"{API_PREFIX}/projects/{{project_id}}/rating")
    async def set_rating(request: Request, project_id: str):
        uid = require_user(request)
        body = await json_body(request)
        ratings.rate(catalog, uid, project_id, field(body, "value"))
        return ratings.summary(catalog, uid, project_id)

    @app.delete(f"{API_PREFIX}/projects/{{project_id}}/rating")
    async def clear_rating(request: Request, project_id: str):
        uid = require_user(request)
        ratings.unrate(catalog, uid, project_id)
        return ratings.summary(catalog, uid, project_id)

    @app.get(f"{API_PREFIX}/projects/{{project_id}}/rating")
    async def get_rating(request: Request, project_id: str):
        uid = require_user(request)
        return ratings.summary(catalog, uid, project_id)

    # --- events ----------------------------------------------------------------

    @app.get(f"{API_PREFIX}/projects/{{project_id}}/events")
    async def project_events(request: Request, project_id: str):
        uid = require_user(request)
        try:
            limit = int(request.query_params.get("limit", "50"))
            before = request.query_params.get("before")
            before_seq = int(before) if before is not None else None
        except ValueError:
            raise errors.Validation("limit and before must be integers")
        events = catalog.tracking_feed(uid, project_id, limit, before_seq)
        names = actor_names(events)
        return {"events": [event_wire(e, names[e.actor]) for e in events]}

    # --- folders ----------------------------------------------------------------

    @app.post(f"{API_PREFIX}/projects/{{project_id}}/folders", status_code=201)
    async def create_folder(request: Request, project_id: str):
        uid = require_user(request)
        body = await json_body(request)
        folder = catalog.folder_create(uid, project_id,
                                       field(body, "parent"), field(body, "name"))
        return folder_wire(folder)

    @app.get(f"{API_PREFIX}/folders/{{folder_id}}")
    async def get_folder(request: Request, folder_id: str):
        uid = require_user(request)
        folder, path = catalog.get_folder(uid, folder_id)
        artifacts, subfolders = catalog.folder_list(uid, folder_id)
        body = folder_wire(folder)
        body["path"] = path
        return {
            "folder": body,
            "artifacts": [artifact_wire(a) for a in artifacts],
            "subfolders": [folder_wire(f) for f in subfolders],
        }

    @app.patch(f"{API_PREFIX}/folders/{{folder_id}}")
    async def rename_folder(request: Request, folder_id: str):
        uid = require_user(request)
        body = await json_body(request)
        folder = catalog.folder_rename(uid, folder_id, field(body, "name"))
        return folder_wire(folder)

    @app.delete(f"{API_PREFIX}/folders/{{folder_id}}", status_code=204)
    async def delete_folder(request: Request, folder_id: str):
        uid = require_user(request)
        catalog.folder_delete(uid, folder_id)
        return Response(status_code=204)

    # --- artifacts ---------------------------------------------------------------

    @app.post(f"{API_PREFIX}/folders/{{folder_id}}/artifacts", status_code=201)
    async def add_artifact(request: Request, folder_id: str):
        uid = require_user(request)
        body = await json_body(request)
        selector = selector_from_wire(field(body, "selector", required=False))
        artifact = catalog.artifact_add(
            uid, folder_id,
            field(body, "asset"),
            selector,
            field(body, "display_name"),
            field(body, "tags", required=False),
        )
        return artifact_wire(artifact)

    @app.delete(f"{API_PREFIX}/artifacts/{{artifact_id}}", status_code=204)
    async def remove_artifact(request: Request, artifact_id: str):
        uid = require_user(request)
        catalog.artifact_remove(uid, artifact_id)
        return Response(status_code=204)

    # --- assets -------------------------------------------------------------------

    @app.post(f"{API_PREFIX}/assets", status_code=201)
    async def upload_asset(request: Request):
        uid = require_user(request)
        client = request.client.host if request.client else "unknown"
        if not uploads.admit(client):
            raise errors.UploadCapExceeded("per-client upload cap reached; retry later")
        form = await request.form()
        upload = form.get("file")
        if upload is None or isinstance(upload, str):
            raise errors.Validation("multipart field 'file' is required")
        raw_tags = form.get("tags") or ""
        tags = [t for t in re.split(r"[,\s]+", raw_tags) if t]
        meta, existing = catalog.register_asset(
            uid, upload.file, upload.filename or "upload.bin",
            upload.content_type or "application/octet-stream", tags)
        return JSONResponse({"asset": asset_wire(meta), "existing": existing},
                            status_code=200 if existing else 201)

    @app.get(f"{API_PREFIX}/assets")
    async def search_assets(request: Request):
        uid = require_user(request)
        page, per_page = page_params(request)
        query = request.query_params.get("query")
        if query is None:
            raise errors.EmptyQuery("query parameter is required")
        results, total = catalog.search_assets(uid, query, page, per_page)
        items = []
        for result in results:
            meta = catalog.get_asset_meta(uid, result.id)
            items.append({
                "kind": "asset",
                "id": result.id,
                "score": result.score,
                "matched_fields": sorted(result.matched_fields),
                "asset": asset_wire(meta),
            })
        return JSONResponse(items, headers={"X-Total-Count": str(total)})

    @app.get(f"{API_PREFIX}/assets/{{asset_id}}/meta")
    async def asset_meta(request: Request, asset_id: str):
        uid = require_user(request)
        return asset_wire(catalog.get_asset_meta(uid, asset_id))

    @app.get(f"{API_PREFIX}/assets/{{asset_id}}")
    async def asset_bytes(request: Request, asset_id: str):
        uid = require_user(request)
        meta = catalog.get_asset_meta(uid, asset_id)
        data = catalog.blobs.get(asset_id)
        filename = _safe_filename(meta.original_filename, "asset.bin")
        return Response(
            content=data,
            media_type=meta.media_type,
            headers={"Content-Disposition": f'inline; filename="{filename}"'},
        )

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")

    return app
