"""Server entry point: wire the stores together and serve the HTTP API.

Configuration comes from the environment:

- ``RAN_DATA_DIR``      where blobs and the catalog database live (default ``./ran-data``)
- ``RAN_LISTEN``        ``host:port`` to bind (default ``127.0.0.1:8080``)
- ``RAN_MAX_BLOB_SIZE`` per-asset size cap in bytes (default 512 MiB)
- ``RAN_TOKEN_TTL``     session lifetime in seconds, sliding (default 86400)
- ``RAN_UPLOAD_CAP``    uploads per client per minute, 0 disables (default 120)
- ``RAN_STATIC_DIR``    optional directory with a built web client to serve at ``/``
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI

from .api import create_app
from .auth import DEFAULT_TTL_SECONDS, Sessions
from .blobstore import DEFAULT_MAX_BLOB_SIZE, BlobStore
from .catalog import Catalog


def build_app(data_dir: str | Path,
              max_blob_size: int = DEFAULT_MAX_BLOB_SIZE,
              token_ttl: float = DEFAULT_TTL_SECONDS,
              upload_cap: int = 120,
              static_dir: str | Path | None = None) -> FastAPI:
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    blobs = BlobStore(data_dir / "blobs", max_blob_size=max_blob_size)
    catalog = Catalog(data_dir / "catalog.sqlite3", blobs)
    sessions = Sessions(catalog, ttl_seconds=token_ttl)
    return create_app(catalog, sessions, upload_cap_per_minute=upload_cap,
                      static_dir=static_dir)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{name} must be an integer, got {raw!r}")


def main() -> None:
    import uvicorn

    listen = os.environ.get("RAN_LISTEN", "127.0.0.1:8080")
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise SystemExit(f"RAN_LISTEN must look like host:port, got {listen!r}")
    app = build_app(
        data_dir=os.environ.get("RAN_DATA_DIR", "./ran-data"),
        max_blob_size=_env_int("RAN_MAX_BLOB_SIZE", DEFAULT_MAX_BLOB_SIZE),
        token_ttl=_env_int("RAN_TOKEN_TTL", DEFAULT_TTL_SECONDS),
        upload_cap=_env_int("RAN_UPLOAD_CAP", 120),
        static_dir=os.environ.get("RAN_STATIC_DIR") or None,
    )
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")


if __name__ == "__main__":
    main()
