from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from ran import auth
from ran.api import create_app
from ran.blobstore import BlobStore
from ran.catalog import Catalog

PASSWORD = "correct-horse-battery"


@pytest.fixture()
def store(tmp_path) -> BlobStore:
    return BlobStore(tmp_path / "blobs")


@pytest.fixture()
def catalog(tmp_path, store) -> Catalog:
    return Catalog(tmp_path / "catalog.sqlite3", store)


@pytest.fixture()
def sessions(catalog) -> auth.Sessions:
    return auth.Sessions(catalog)


@pytest.fixture()
def app(catalog, sessions):
    return create_app(catalog, sessions)


@pytest.fixture()
def client(app) -> TestClient:
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def make_user(catalog):
    def _make(email: str, name: str | None = None):
        return auth.register(catalog, email, name or email.split("@")[0],
                             PASSWORD)
    return _make


@pytest.fixture()
def signup(client):
    """Register + login over HTTP; returns (auth headers, user body)."""
    def _signup(email: str, name: str | None = None, password: str = PASSWORD):
        r = client.post("/api/v1/users",
                        json={"email": email,
                              "display_name": name or email.split("@")[0],
                              "password": password})
        assert r.status_code == 201, r.text
        user = r.json()
        r = client.post("/api/v1/sessions",
                        json={"email": email, "password": password})
        assert r.status_code == 200, r.text
        token = r.json()["token"]
        return {"Authorization": f"Bearer {token}"}, user
    return _signup


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if "test_acceptance" not in item.nodeid:
        return
    failed_setup = report.when == "setup" and report.failed
    finished_call = report.when == "call"
    if not (failed_setup or finished_call):
        return
    status = "PASS" if report.passed else "FAIL"
    tr = item.config.pluginmanager.getplugin("terminalreporter")
    if tr is not None:
        tr.write_line(f"[{status}] {item.name}")
