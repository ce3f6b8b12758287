"""Command-line client for the registry's HTTP API.

Output modes: human-readable text (default) or ``--json``, which emits exactly
one JSON document per command so the tool can be scripted machine-to-machine.
Exit codes: 0 success, 1 API or transport error (the error code is printed),
2 usage error. The session token comes from ``--token``, the ``RAN_TOKEN``
environment variable, or the config file written by ``ran login``; it is
never printed.
"""

from __future__ import annotations

import functools
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import httpx

from .model import is_valid_id

DEFAULT_ENDPOINT = "http://127.0.0.1:8080"
API = "/api/v1"


class ApiError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class Client:
    def __init__(self, endpoint: str, token: str | None):
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        self._http = httpx.Client(base_url=endpoint.rstrip("/"),
                                  headers=headers, timeout=60.0)

    def request(self, method: str, path: str, *, params=None, json_body=None,
                files=None, data=None) -> httpx.Response:
        try:
            response = self._http.request(method, path, params=params,
                                          json=json_body, files=files, data=data)
        except httpx.HTTPError as exc:
            raise ApiError("Transport", str(exc))
        if response.status_code >= 400:
            try:
                err = response.json()["error"]
                code, message = err["code"], err.get("message", "")
            except (ValueError, KeyError, TypeError):
                code, message = f"Http{response.status_code}", response.text[:200]
            raise ApiError(code, message)
        return response


# --- configuration ---------------------------------------------------------

def config_path() -> Path:
    override = os.environ.get("RAN_CONFIG")
    if override:
        return Path(override)
    return Path(click.get_app_dir("ran")) / "config.json"


def load_config() -> dict:
    path = config_path()
    try:
        return json.loads(path.read_text())
    except (OSError, ValueError):
        return {}


def save_config(cfg: dict) -> Path:
    path = config_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(cfg, indent=2, sort_keys=True) + "\n")
    try:
        path.chmod(0o600)
    except OSError:
        pass
    return path


@dataclass
class Ctx:
    endpoint: str
    token: str | None
    json_mode: bool

    def client(self) -> Client:
        return Client(self.endpoint, self.token)


def emit(ctx: Ctx, payload, human: str | list[str] | None = None) -> None:
    if ctx.json_mode:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    elif isinstance(human, list):
        for line in human:
            click.echo(line)
    elif human is not None:
        click.echo(human)


def api_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context().obj
        try:
            return f(*args, **kwargs)
        except ApiError as exc:
            if ctx.json_mode:
                click.echo(json.dumps(
                    {"error": {"code": exc.code, "message": exc.message}},
                    indent=2, sort_keys=True))
            else:
                click.echo(f"error: {exc.code}: {exc.message}", err=True)
            sys.exit(1)
    return wrapper


def resolve_folder(client: Client, project_id: str, ref: str) -> str:
    """Accept a folder id or a path like TrainData/apples."""
    if is_valid_id(ref):
        return ref
    detail = client.request("GET", f"{API}/projects/{project_id}").json()
    parts = [p for p in ref.split("/") if p]
    if not parts:
        raise ApiError("NotFound", f"empty folder reference {ref!r}")
    current = None
    for i, part in enumerate(parts):
        if i == 0:
            matches = [r for r in detail["roots"]
                       if r["name"].lower() == part.lower()]
        else:
            listing = client.request("GET", f"{API}/folders/{current}").json()
            matches = [f for f in listing["subfolders"]
                       if f["name"].lower() == part.lower()]
        if not matches:
            raise ApiError("NotFound", f"no folder {part!r} in {ref!r}")
        current = matches[0]["id"]
    return current


def _password_option(ctx: Ctx, password: str | None, confirm: bool) -> str:
    if password is not None:
        return password
    if ctx.json_mode:
        raise ApiError("Validation",
                       "--password is required in --json mode (no prompts)")
    return click.prompt("Password", hide_input=True, confirmation_prompt=confirm)


def _project_line(p: dict) -> str:
    score = p.get("score")
    net = f" net {score['net']:+d}" if score else ""
    tags = f" [{', '.join(p['tags'])}]" if p.get("tags") else ""
    return (f"{p['id']}  {p['name']}  ({p['visibility']}, v{p['version']})"
            f"{net}{tags}")


# --- root group --------------------------------------------------------------

@click.group()
@click.option("--endpoint", envvar="RAN_ENDPOINT", default=None,
              help="API base URL (default: config file, then "
                   f"{DEFAULT_ENDPOINT}).")
@click.option("--token", envvar="RAN_TOKEN", default=None,
              help="Bearer token (default: RAN_TOKEN, then config file).")
@click.option("--json", "json_mode", is_flag=True,
              help="Emit exactly one JSON document on stdout.")
@click.pass_context
def main(ctx: click.Context, endpoint: str | None, token: str | None,
         json_mode: bool) -> None:
    """Client for a self-hosted artifact registry."""
    cfg = load_config()
    ctx.obj = Ctx(
        endpoint=endpoint or cfg.get("endpoint") or DEFAULT_ENDPOINT,
        token=token or cfg.get("token"),
        json_mode=json_mode,
    )


# --- account ----------------------------------------------------------------

@main.command()
@click.argument("email")
@click.argument("display_name")
@click.option("--password", default=None, help="Password (prompted if omitted).")
@click.pass_obj
@api_errors
def register(ctx: Ctx, email: str, display_name: str, password: str | None):
    """Create an account."""
    password = _password_option(ctx, password, confirm=True)
    user = ctx.client().request(
        "POST", f"{API}/users",
        json_body={"email": email, "display_name": display_name,
                   "password": password}).json()
    emit(ctx, user, f"registered {user['email']} ({user['id']})")


@main.command()
@click.argument("email")
@click.option("--password", default=None, help="Password (prompted if omitted).")
@click.pass_obj
@api_errors
def login(ctx: Ctx, email: str, password: str | None):
    """Log in and store the session token in the config file."""
    password = _password_option(ctx, password, confirm=False)
    body = ctx.client().request(
        "POST", f"{API}/sessions",
        json_body={"email": email, "password": password}).json()
    cfg = load_config()
    cfg["endpoint"] = ctx.endpoint
    cfg["token"] = body["token"]
    path = save_config(cfg)
    user = body["user"]
    emit(ctx, {"ok": True, "user": user, "config": str(path)},
         f"logged in as {user['display_name']} (token saved to {path})")


@main.command()
@click.pass_obj
@api_errors
def logout(ctx: Ctx):
    """Revoke the current session and clear the stored token."""
    ctx.client().request("DELETE", f"{API}/sessions")
    cfg = load_config()
    cfg.pop("token", None)
    save_config(cfg)
    emit(ctx, {"ok": True}, "logged out")


# --- project group --------------------------------------------------------------

@main.group()
def project() -> None:
    """Create, inspect, share, and download projects."""


@project.command("create")
@click.argument("name")
@click.option("--description", default="")
@click.option("--tags", default="", help="Comma-separated tags.")
@click.option("--visibility", type=click.Choice(["Public", "Private"]),
              default="Public")
@click.pass_obj
@api_errors
def project_create(ctx: Ctx, name: str, description: str, tags: str,
                   visibility: str):
    body = ctx.client().request(
        "POST", f"{API}/projects",
        json_body={"name": name, "description": description,
                   "tags": [t for t in tags.split(",") if t.strip()],
                   "visibility": visibility}).json()
    emit(ctx, body, f"created project {body['id']} ({body['name']})")


@project.command("list")
@click.option("--mine/--all", default=True,
              help="Own projects (default) or everything visible.")
@click.option("--page", default=1)
@click.option("--per-page", default=20)
@click.pass_obj
@api_errors
def project_list(ctx: Ctx, mine: bool, page: int, per_page: int):
    params = {"page": page, "per_page": per_page}
    if mine:
        params["mine"] = "true"
    items = ctx.client().request("GET", f"{API}/projects", params=params).json()
    emit(ctx, items, [_project_line(p) for p in items] or ["(no projects)"])


@project.command("show")
@click.argument("project_id")
@click.pass_obj
@api_errors
def project_show(ctx: Ctx, project_id: str):
    p = ctx.client().request("GET", f"{API}/projects/{project_id}").json()
    lines = [
        f"{p['name']}  ({p['visibility']}, v{p['version']})",
        f"id: {p['id']}",
        f"owner: {p['owner']}",
        f"tags: {', '.join(p['tags']) or '(none)'}",
        f"score: +{p['score']['ups']} / -{p['score']['downs']}"
        f" (net {p['score']['net']:+d})",
    ]
    if p.get("description"):
        lines.append(f"description: {p['description']}")
    if p.get("provenance"):
        prov = p["provenance"]
        origin = "" if prov["origin_available"] else " (origin unavailable)"
        lines.append(f"copied from: {prov['source_name']} "
                     f"v{prov['source_version']}{origin}")
    lines.append("folders:")
    for root in p["roots"]:
        lines.append(f"  {root['name']}  {root['id']}")
    emit(ctx, p, lines)


@project.command("search")
@click.argument("query", nargs=-1, required=True)
@click.option("--page", default=1)
@click.option("--per-page", default=20)
@click.pass_obj
@api_errors
def project_search(ctx: Ctx, query: tuple[str, ...], page: int, per_page: int):
    items = ctx.client().request(
        "GET", f"{API}/projects",
        params={"query": " ".join(query), "page": page,
                "per_page": per_page}).json()
    lines = [
        f"{row['project']['id']}  {row['project']['name']}"
        f"  (score {row['score']}, matched {', '.join(row['matched_fields'])})"
        for row in items
    ]
    emit(ctx, items, lines or ["(no matches)"])


@project.command("copy")
@click.argument("project_id")
@click.argument("new_name")
@click.pass_obj
@api_errors
def project_copy(ctx: Ctx, project_id: str, new_name: str):
    body = ctx.client().request(
        "POST", f"{API}/projects/{project_id}/copies",
        json_body={"name": new_name}).json()
    emit(ctx, body, f"copied to {body['id']} ({body['name']})")


@project.command("import")
@click.argument("source_id")
@click.option("--folders", default="", help="Source folder ids/paths, comma-separated.")
@click.option("--artifacts", default="", help="Source artifact ids, comma-separated.")
@click.option("--target", "target_project", required=True,
              help="Your project id to import into.")
@click.option("--into", "target_folder", required=True,
              help="Destination folder (id or path) in the target project.")
@click.pass_obj
@api_errors
def project_import(ctx: Ctx, source_id: str, folders: str, artifacts: str,
                   target_project: str, target_folder: str):
    """Import selected folders/artifacts from another project."""
    client = ctx.client()
    folder_ids = [resolve_folder(client, source_id, ref)
                  for ref in folders.split(",") if ref.strip()]
    artifact_ids = [a.strip() for a in artifacts.split(",") if a.strip()]
    destination = resolve_folder(client, target_project, target_folder)
    body = client.request(
        "POST", f"{API}/projects/{source_id}/imports",
        json_body={"selection": {"folders": folder_ids, "artifacts": artifact_ids},
                   "target_project": target_project,
                   "target_folder": destination}).json()
    emit(ctx, body, f"imported {body['imported']} artifacts")


@project.command("delete")
@click.argument("project_id")
@click.option("--yes", is_flag=True, help="Skip the confirmation prompt.")
@click.pass_obj
@api_errors
def project_delete(ctx: Ctx, project_id: str, yes: bool):
    if not yes and not ctx.json_mode:
        click.confirm(f"Delete project {project_id}?", abort=True)
    ctx.client().request("DELETE", f"{API}/projects/{project_id}")
    emit(ctx, {"ok": True, "deleted": project_id}, f"deleted {project_id}")


@project.command("rate")
@click.argument("project_id")
@click.argument("value", type=click.Choice(["up", "down", "clear"]))
@click.pass_obj
@api_errors
def project_rate(ctx: Ctx, project_id: str, value: str):
    client = ctx.client()
    if value == "clear":
        body = client.request("DELETE", f"{API}/projects/{project_id}/rating").json()
    else:
        body = client.request("PUT", f"{API}/projects/{project_id}/rating",
                              json_body={"value": value}).json()
    emit(ctx, body,
         f"score: +{body['ups']} / -{body['downs']} (net {body['net']:+d})")


@project.command("events")
@click.argument("project_id")
@click.option("--limit", default=50)
@click.option("--before", default=None, type=int)
@click.pass_obj
@api_errors
def project_events(ctx: Ctx, project_id: str, limit: int, before: int | None):
    params: dict = {"limit": limit}
    if before is not None:
        params["before"] = before
    body = ctx.client().request(
        "GET", f"{API}/projects/{project_id}/events", params=params).json()
    lines = [
        f"[{e['seq']:>4}] {e['at']}  {e['action']:<16} {e['target']}"
        f"  ({e['actor_name'] or e['actor']})"
        for e in body["events"]
    ]
    emit(ctx, body, lines or ["(no events)"])


@project.command("download")
@click.argument("project_id")
@click.option("--folders", default="",
              help="Folder ids or paths (e.g. Model), comma-separated.")
@click.option("--artifacts", default="", help="Artifact ids, comma-separated.")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
@api_errors
def project_download(ctx: Ctx, project_id: str, folders: str, artifacts: str,
                     output: str):
    """Download a zip of the whole project or a selection."""
    client = ctx.client()
    params = {}
    if folders.strip():
        params["folders"] = ",".join(
            resolve_folder(client, project_id, ref)
            for ref in folders.split(",") if ref.strip())
    if artifacts.strip():
        params["artifacts"] = ",".join(
            a.strip() for a in artifacts.split(",") if a.strip())
    response = client.request(
        "GET", f"{API}/projects/{project_id}/package", params=params)
    data = response.content
    Path(output).write_bytes(data)
    digest = hashlib.sha256(data).hexdigest()
    emit(ctx, {"path": output, "size_bytes": len(data), "sha256": digest},
         f"wrote {output} ({len(data)} bytes, sha256 {digest})")


# --- folder group -----------------------------------------------------------------

@main.group()
def folder() -> None:
    """Manage folders inside a project."""


@folder.command("create")
@click.argument("project_id")
@click.argument("parent")
@click.argument("name")
@click.pass_obj
@api_errors
def folder_create(ctx: Ctx, project_id: str, parent: str, name: str):
    """Create NAME under PARENT (folder id or path like TrainData)."""
    client = ctx.client()
    parent_id = resolve_folder(client, project_id, parent)
    body = client.request(
        "POST", f"{API}/projects/{project_id}/folders",
        json_body={"parent": parent_id, "name": name}).json()
    emit(ctx, body, f"created folder {body['id']} ({body['name']})")


@folder.command("rename")
@click.argument("folder_id")
@click.argument("new_name")
@click.pass_obj
@api_errors
def folder_rename(ctx: Ctx, folder_id: str, new_name: str):
    body = ctx.client().request("PATCH", f"{API}/folders/{folder_id}",
                                json_body={"name": new_name}).json()
    emit(ctx, body, f"renamed to {body['name']}")


@folder.command("delete")
@click.argument("folder_id")
@click.option("--yes", is_flag=True, help="Skip the confirmation prompt.")
@click.pass_obj
@api_errors
def folder_delete(ctx: Ctx, folder_id: str, yes: bool):
    if not yes and not ctx.json_mode:
        click.confirm(f"Delete folder {folder_id} and its contents?", abort=True)
    ctx.client().request("DELETE", f"{API}/folders/{folder_id}")
    emit(ctx, {"ok": True, "deleted": folder_id}, f"deleted {folder_id}")


@folder.command("list")
@click.argument("folder_ref")
@click.option("--project", "project_id", default=None,
              help="Project id (required when FOLDER_REF is a path).")
@click.pass_obj
@api_errors
def folder_list(ctx: Ctx, folder_ref: str, project_id: str | None):
    """List a folder's artifacts and subfolders (id or path with --project)."""
    client = ctx.client()
    if not is_valid_id(folder_ref):
        if project_id is None:
            raise ApiError("Validation",
                           "--project is required when using a folder path")
        folder_ref = resolve_folder(client, project_id, folder_ref)
    body = client.request("GET", f"{API}/folders/{folder_ref}").json()
    lines = [f"{body['folder']['path']}  ({body['folder']['id']})", "artifacts:"]
    for a in body["artifacts"]:
        lines.append(f"  {a['display_name']}  asset {a['asset'][:12]}…"
                     f"  ({a['id']})")
    if not body["artifacts"]:
        lines.append("  (none)")
    lines.append("subfolders:")
    for f in body["subfolders"]:
        lines.append(f"  {f['name']}/  ({f['id']})")
    if not body["subfolders"]:
        lines.append("  (none)")
    emit(ctx, body, lines)


# --- asset group -------------------------------------------------------------------

@main.group()
def asset() -> None:
    """Upload, find, and fetch content-addressed assets."""


@asset.command("upload")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--tags", default="", help="Comma-separated tags.")
@click.option("--media-type", default=None, help="Override the guessed media type.")
@click.pass_obj
@api_errors
def asset_upload(ctx: Ctx, path: str, tags: str, media_type: str | None):
    import mimetypes

    file_path = Path(path)
    guessed = media_type or mimetypes.guess_type(file_path.name)[0] \
        or "application/octet-stream"
    with file_path.open("rb") as fh:
        body = ctx.client().request(
            "POST", f"{API}/assets",
            files={"file": (file_path.name, fh, guessed)},
            data={"tags": tags}).json()
    state = "already stored" if body["existing"] else "stored"
    emit(ctx, body, f"{state}: {body['asset']['id']}")


@asset.command("search")
@click.argument("query", nargs=-1, required=True)
@click.option("--page", default=1)
@click.option("--per-page", default=20)
@click.pass_obj
@api_errors
def asset_search(ctx: Ctx, query: tuple[str, ...], page: int, per_page: int):
    items = ctx.client().request(
        "GET", f"{API}/assets",
        params={"query": " ".join(query), "page": page,
                "per_page": per_page}).json()
    lines = [
        f"{row['id']}  {row['asset']['original_filename']}"
        f"  ({row['asset']['size_bytes']} bytes, score {row['score']})"
        for row in items
    ]
    emit(ctx, items, lines or ["(no matches)"])


@asset.command("get")
@click.argument("asset_id")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
@api_errors
def asset_get(ctx: Ctx, asset_id: str, output: str):
    response = ctx.client().request("GET", f"{API}/assets/{asset_id}")
    Path(output).write_bytes(response.content)
    emit(ctx, {"path": output, "size_bytes": len(response.content),
               "asset": asset_id},
         f"wrote {output} ({len(response.content)} bytes)")


# --- artifact group -----------------------------------------------------------------

@main.group()
def artifact() -> None:
    """Attach assets to folders and detach them."""


@artifact.command("add")
@click.argument("folder_ref")
@click.argument("asset_id")
@click.argument("display_name")
@click.option("--project", "project_id", default=None,
              help="Project id (required when FOLDER_REF is a path).")
@click.option("--selector", default=None,
              help='JSON selector, e.g. {"type":"byte_range","offset":0,"len":4}.')
@click.option("--tags", default="", help="Comma-separated tags to merge onto the asset.")
@click.pass_obj
@api_errors
def artifact_add(ctx: Ctx, folder_ref: str, asset_id: str, display_name: str,
                 project_id: str | None, selector: str | None, tags: str):
    client = ctx.client()
    if not is_valid_id(folder_ref):
        if project_id is None:
            raise ApiError("Validation",
                           "--project is required when using a folder path")
        folder_ref = resolve_folder(client, project_id, folder_ref)
    wire = None
    if selector:
        try:
            wire = json.loads(selector)
        except ValueError:
            raise ApiError("Validation", "--selector must be valid JSON")
    body = client.request(
        "POST", f"{API}/folders/{folder_ref}/artifacts",
        json_body={"asset": asset_id, "selector": wire,
                   "display_name": display_name,
                   "tags": [t for t in tags.split(",") if t.strip()]}).json()
    emit(ctx, body, f"added {body['display_name']} ({body['id']})")


@artifact.command("remove")
@click.argument("artifact_id")
@click.pass_obj
@api_errors
def artifact_remove(ctx: Ctx, artifact_id: str):
    ctx.client().request("DELETE", f"{API}/artifacts/{artifact_id}")
    emit(ctx, {"ok": True, "removed": artifact_id}, f"removed {artifact_id}")


if __name__ == "__main__":
    main()
