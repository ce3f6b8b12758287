"""Deterministic zip packaging of a folder/artifact selection.

The archive contains a canonical "manifest.json" first, then every resolved
artifact's extracted bytes at its tree path, sorted by path, all entries
STORED with a fixed DOS-epoch timestamp. Identical logical content always
yields byte-identical archives, so packages can be compared by hash.
"""

from __future__ import annotations

import io
import json
import zipfile

from . import errors
from .catalog import (
    Catalog,
    _artifact_from_row,
    _drop_nested,
    _validated_selection,
    folder_path,
    folder_subtree_ids,
)
from .blobstore import write_deterministic_entry
from .model import Artifact, Selection

MAX_PACKAGE_BYTES = 4 * 1024 ** 3  # zip64 boundary; larger packages are refused
MANIFEST_NAME = "manifest.json"
MANIFEST_FORMAT = "ran-package/1"


def canonical_manifest_bytes(manifest: dict) -> bytes:
    """Sorted keys, no insignificant whitespace, trailing LF."""
    return (json.dumps(manifest, sort_keys=True, separators=(",", ":"),
                       ensure_ascii=False) + "\n").encode("utf-8")


def resolve_selection(catalog: Catalog, conn, project_id: str,
                      selection: Selection) -> list[tuple[str, Artifact]]:
    """Expand a selection to (archive path, artifact), path-sorted, deduplicated."""
    if selection.is_empty():
        raise errors.EmptySelection("nothing selected")
    folder_ids, artifact_ids = _validated_selection(conn, project_id, selection)

    chosen: dict[str, tuple[str, Artifact]] = {}

    def add(folder_id: str, artifact: Artifact) -> None:
        if artifact.id not in chosen:
            path = f"{folder_path(conn, folder_id)}/{artifact.display_name}"
            chosen[artifact.id] = (path, artifact)

    for fid in _drop_nested(conn, folder_ids):
        for sub_id in folder_subtree_ids(conn, fid):
            for row in conn.execute(
                    "SELECT id, folder, asset, selector, display_name, added_by,"
                    " added_at FROM artifacts WHERE folder=?", (sub_id,)).fetchall():
                add(sub_id, _artifact_from_row(row))
    for aid in artifact_ids:
        artifact = catalog._artifact(conn, aid)
        add(artifact.folder, artifact)

    return sorted(chosen.values(), key=lambda pair: (pair[0], pair[1].id))


def build_package(catalog: Catalog, requester: str, project_id: str,
                  selection: Selection | None = None) -> bytes:
    """Build the deterministic zip for a selection (default: the whole tree)."""
    with catalog.read() as conn:
        project = catalog._project(conn, project_id)
        catalog._check_view(project, requester)
        if selection is None:
            roots = [r[0] for r in conn.execute(
                "SELECT id FROM folders WHERE project=? AND parent IS NULL",
                (project_id,)).fetchall()]
            selection = Selection(folders=frozenset(roots))
        resolved = resolve_selection(catalog, conn, project_id, selection)

    payloads: list[tuple[str, bytes, Artifact]] = []
    total = 0
    for path, artifact in resolved:
        if not catalog.blobs.exists(artifact.asset):
            raise errors.BlobMissing(f"asset {artifact.asset} has no stored bytes")
        data = catalog.blobs.extract(artifact.asset, artifact.selector)
        total += len(data)
        if total > MAX_PACKAGE_BYTES:
            raise errors.PackageTooLarge(
                f"package exceeds {MAX_PACKAGE_BYTES} bytes")
        payloads.append((path, data, artifact))

    manifest = {
        "format": MANIFEST_FORMAT,
        "project": {
            "name": project.name,
            "version": project.version,
            "description": project.description,
            "tags": sorted(project.tags),
        },
        "entries": [
            {
                "path": path,
                "asset": artifact.asset,
                "selector": artifact.selector.to_wire(),
                "size_bytes": len(data),
            }
            for path, data, artifact in payloads
        ],
    }
    manifest_bytes = canonical_manifest_bytes(manifest)
    if total + len(manifest_bytes) > MAX_PACKAGE_BYTES:
        raise errors.PackageTooLarge(f"package exceeds {MAX_PACKAGE_BYTES} bytes")

    out = io.BytesIO()
    with zipfile.ZipFile(out, "w", compression=zipfile.ZIP_STORED,
                         allowZip64=False) as zf:
        write_deterministic_entry(zf, MANIFEST_NAME, manifest_bytes)
        for path, data, _ in payloads:
            write_deterministic_entry(zf, path, data)
    return out.getvalue()
