"""Content-addressed, deduplicated, immutable blob storage.

Blobs live at ``<root>/blobs/<first2hex>/<next2hex>/<full sha256>``. Ingest
writes to a temp file and atomically renames, so a crash never leaves a
half-written blob under its final name. Identical concurrent puts race on
the rename; the loser discards its temp file and returns the same id.

Garbage collection takes the caller's live set. To keep "a blob put after
the live snapshot is never removed by that gc run" airtight, callers take a
``snapshot_token()`` *before* computing the live set and pass it to ``gc``;
blobs finalized after the token (or under a still-open ingest guard) are
protected from that run.
"""

from __future__ import annotations

import hashlib
import io
import os
import threading
import zipfile
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Callable, Iterable, Iterator

from . import errors
from .model import ByteRange, Members, Selector, Whole, is_asset_id

DEFAULT_MAX_BLOB_SIZE = 512 * 1024 * 1024
_CHUNK = 1024 * 1024

# Fixed DOS-epoch timestamp for every archive entry we emit.
ZIP_EPOCH = (1980, 1, 1, 0, 0, 0)


@dataclass(frozen=True)
class BlobStat:
    id: str
    size_bytes: int


class _IngestGuard:
    """Tracks blob ids finalized while the guard is held."""

    def __init__(self, store: BlobStore):
        self._store = store
        self.ids: set[str] = set()

    def __enter__(self) -> _IngestGuard:
        self._store._enter_guard(self)
        return self

    def __exit__(self, *exc) -> None:
        self._store._exit_guard(self)


class BlobStore:
    def __init__(self, root: str | Path, max_blob_size: int = DEFAULT_MAX_BLOB_SIZE):
        self.root = Path(root)
        self.max_blob_size = max_blob_size
        self._blob_dir = self.root / "blobs"
        self._tmp_dir = self.root / "tmp"
        self._blob_dir.mkdir(parents=True, exist_ok=True)
        self._tmp_dir.mkdir(parents=True, exist_ok=True)
        self._state_lock = threading.Lock()
        self._clock = 0
        self._protection: dict[str, int] = {}
        self._active_guards: set[_IngestGuard] = set()
        self._local = threading.local()

    # --- paths ---------------------------------------------------------

    def _path(self, blob_id: str) -> Path:
        return self._blob_dir / blob_id[:2] / blob_id[2:4] / blob_id

    # --- ingest --------------------------------------------------------

    def ingest_guard(self) -> _IngestGuard:
        """Hold across put + reference registration so gc cannot interleave."""
        return _IngestGuard(self)

    def _enter_guard(self, guard: _IngestGuard) -> None:
        with self._state_lock:
            self._active_guards.add(guard)
        stack = getattr(self._local, "guards", None)
        if stack is None:
            stack = self._local.guards = []
        stack.append(guard)

    def _exit_guard(self, guard: _IngestGuard) -> None:
        stack = getattr(self._local, "guards", [])
        if guard in stack:
            stack.remove(guard)
        with self._state_lock:
            self._active_guards.discard(guard)
            # Ids keep protection until a later gc token supersedes them.
            self._clock += 1
            for blob_id in guard.ids:
                self._protection[blob_id] = self._clock

    def put(self, data: bytes | BinaryIO) -> str:
        """Store a blob, return its SHA-256 hex id. Idempotent on content."""
        stream: BinaryIO = io.BytesIO(data) if isinstance(data, (bytes, bytearray)) else data
        hasher = hashlib.sha256()
        size = 0
        tmp_path = self._tmp_dir / f"ingest-{os.getpid()}-{threading.get_ident()}-{id(stream)}"
        try:
            with open(tmp_path, "wb") as tmp:
                while True:
                    chunk = stream.read(_CHUNK)
                    if not chunk:
                        break
                    size += len(chunk)
                    if size > self.max_blob_size:
                        raise errors.TooLarge(
                            f"blob exceeds the {self.max_blob_size} byte limit"
                        )
                    hasher.update(chunk)
                    tmp.write(chunk)
                tmp.flush()
                os.fsync(tmp.fileno())
            blob_id = hasher.hexdigest()
            self._finalize(tmp_path, blob_id)
            return blob_id
        except OSError as exc:
            raise errors.StorageFailure(f"blob ingest failed: {exc}") from exc
        finally:
            tmp_path.unlink(missing_ok=True)

    def _finalize(self, tmp_path: Path, blob_id: str) -> None:
        final = self._path(blob_id)
        final.parent.mkdir(parents=True, exist_ok=True)
        with self._state_lock:
            self._clock += 1
            if not final.exists():
                os.replace(tmp_path, final)
                _fsync_dir(final.parent)
            self._protection[blob_id] = self._clock
            for guard in getattr(self._local, "guards", []):
                guard.ids.add(blob_id)

    # --- reads ---------------------------------------------------------

    def exists(self, blob_id: str) -> bool:
        return is_asset_id(blob_id) and self._path(blob_id).is_file()

    def get(self, blob_id: str) -> bytes:
        """Read a blob, verifying its content still hashes to the id."""
        if not self.exists(blob_id):
            raise errors.NotFound(f"no blob {blob_id}")
        data = self._path(blob_id).read_bytes()
        if hashlib.sha256(data).hexdigest() != blob_id:
            raise errors.CorruptBlob(f"stored bytes for {blob_id} fail verification")
        return data

    def stat(self, blob_id: str) -> BlobStat:
        if not self.exists(blob_id):
            raise errors.NotFound(f"no blob {blob_id}")
        return BlobStat(id=blob_id, size_bytes=self._path(blob_id).stat().st_size)

    def extract(self, blob_id: str, selector: Selector) -> bytes:
        """Materialize the selected fragment of a blob."""
        data = self.get(blob_id)
        if isinstance(selector, Whole):
            return data
        if isinstance(selector, ByteRange):
            if selector.offset + selector.length > len(data):
                raise errors.SelectorOutOfBounds(
                    f"range {selector.offset}+{selector.length} exceeds size {len(data)}"
                )
            return data[selector.offset : selector.offset + selector.length]
        if isinstance(selector, Members):
            return _extract_members(data, selector.paths)
        raise errors.SelectorInvalid(f"unsupported selector {selector!r}")

    def _iter_stored(self) -> Iterator[str]:
        for sub1 in sorted(self._blob_dir.iterdir()):
            if not sub1.is_dir():
                continue
            for sub2 in sorted(sub1.iterdir()):
                if not sub2.is_dir():
                    continue
                for blob in sorted(sub2.iterdir()):
                    if is_asset_id(blob.name):
                        yield blob.name

    def list_ids(self) -> list[str]:
        return list(self._iter_stored())

    # --- garbage collection ---------------------------------------------

    def snapshot_token(self) -> int:
        """Take before computing the live set; pass to gc as ``as_of``."""
        with self._state_lock:
            return self._clock

    def gc(self, live: Iterable[str], as_of: int | None = None) -> int:
        """Remove every stored blob not in ``live``; returns removal count.

        Blobs finalized after ``as_of`` (default: now) or under an ingest
        guard that is still open survive this run.
        """
        live_set = set(live)
        with self._state_lock:
            token = self._clock if as_of is None else as_of
            protected = {b for b, c in self._protection.items() if c > token}
            for guard in self._active_guards:
                protected |= guard.ids
            removed = 0
            try:
                for blob_id in list(self._iter_stored()):
                    if blob_id in live_set or blob_id in protected:
                        continue
                    self._path(blob_id).unlink()
                    removed += 1
            except OSError as exc:
                raise errors.StorageFailure(f"gc failed: {exc}") from exc
            self._protection = {b: c for b, c in self._protection.items() if c > token}
            return removed


def _fsync_dir(path: Path) -> None:
    fd = os.open(path, os.O_RDONLY)
    try:
        os.fsync(fd)
    finally:
        os.close(fd)


def _extract_members(data: bytes, paths: tuple[str, ...]) -> bytes:
    """Re-wrap the named archive members into a fresh deterministic zip."""
    try:
        archive = zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile:
        raise errors.NotAnArchive("blob is not a zip archive")
    with archive:
        names = set(archive.namelist())
        missing = [p for p in paths if p not in names]
        if missing:
            raise errors.MemberMissing(f"archive has no member {missing[0]!r}")
        out = io.BytesIO()
        with zipfile.ZipFile(out, "w", compression=zipfile.ZIP_STORED, allowZip64=False) as zf:
            for path in paths:  # Members paths are already sorted
                write_deterministic_entry(zf, path, archive.read(path))
        return out.getvalue()


def archive_member_names(data: bytes) -> set[str]:
    """Member names of a zip blob; NotAnArchive if it is not one."""
    try:
        with zipfile.ZipFile(io.BytesIO(data)) as archive:
            return set(archive.namelist())
    except zipfile.BadZipFile:
        raise errors.NotAnArchive("blob is not a zip archive")


def write_deterministic_entry(zf: zipfile.ZipFile, path: str, data: bytes) -> None:
    """Add one STORED entry with all nondeterminism pinned."""
    info = zipfile.ZipInfo(filename=path, date_time=ZIP_EPOCH)
    info.compress_type = zipfile.ZIP_STORED
    info.create_system = 0  # FAT; avoids host-specific permission bits
    info.external_attr = (0o644 & 0xFFFF) << 16
    zf.writestr(info, data)
