from __future__ import annotations

import io
import json
import zipfile

import pytest
from fastapi.testclient import TestClient

from ran import auth, packaging
from ran.api import create_app
from ran.model import Selection

from oracle_zip import extract_map

V = "/api/v1"
UUID = "00000000-0000-4000-8000-000000000000"

# every route except register/login requires a bearer token
PROTECTED = [
    ("DELETE", f"{V}/sessions"),
    ("GET", f"{V}/projects"),
    ("POST", f"{V}/projects"),
    ("GET", f"{V}/projects/{UUID}"),
    ("PATCH", f"{V}/projects/{UUID}"),
    ("DELETE", f"{V}/projects/{UUID}"),
    ("POST", f"{V}/projects/{UUID}/copies"),
    ("POST", f"{V}/projects/{UUID}/imports"),
    ("GET", f"{V}/projects/{UUID}/package"),
    ("PUT", f"{V}/projects/{UUID}/rating"),
    ("DELETE", f"{V}/projects/{UUID}/rating"),
    ("GET", f"{V}/projects/{UUID}/rating"),
    ("GET", f"{V}/projects/{UUID}/events"),
    ("POST", f"{V}/projects/{UUID}/folders"),
    ("GET", f"{V}/folders/{UUID}"),
    ("PATCH", f"{V}/folders/{UUID}"),
    ("DELETE", f"{V}/folders/{UUID}"),
    ("POST", f"{V}/folders/{UUID}/artifacts"),
    ("DELETE", f"{V}/artifacts/{UUID}"),
    ("POST", f"{V}/assets"),
    ("GET", f"{V}/assets"),
    ("GET", f"{V}/assets/{'ab' * 32}/meta"),
    ("GET", f"{V}/assets/{'ab' * 32}"),
]


def make_project(client, headers, name, **extra):
    r = client.post(f"{V}/projects", json={"name": name, **extra},
                    headers=headers)
    assert r.status_code == 201, r.text
    return r.json()


def root_id(project_body, name):
    return next(f["id"] for f in project_body["roots"] if f["name"] == name)


def upload(client, headers, payload, filename, media_type=None, tags=""):
    files = {"file": (filename, io.BytesIO(payload),
                      media_type or "application/octet-stream")}
    return client.post(f"{V}/assets", files=files, data={"tags": tags},
                       headers=headers)


class TestAuthBarrier:
    @pytest.mark.parametrize("method,path", PROTECTED)
    def test_every_endpoint_rejects_missing_token(self, client, method, path):
        r = client.request(method, path)
        assert r.status_code == 401
        assert r.json()["error"]["code"] in ("InvalidCredentials",
                                             "ExpiredToken")

    @pytest.mark.parametrize("method,path", PROTECTED[:4])
    def test_garbage_tokens_rejected(self, client, method, path):
        r = client.request(method, path,
                           headers={"Authorization": "Bearer nonsense"})
        assert r.status_code == 401

    def test_non_bearer_scheme_rejected(self, client, signup):
        headers, _ = signup("scheme@x.dev")
        token = headers["Authorization"].split(" ", 1)[1]
        r = client.get(f"{V}/projects",
                       headers={"Authorization": f"Basic {token}"})
        assert r.status_code == 401


class TestErrorShape:
    def test_not_found_body(self, client, signup):
        headers, _ = signup("e404@x.dev")
        r = client.get(f"{V}/projects/{UUID}", headers=headers)
        assert r.status_code == 404
        body = r.json()
        assert set(body) == {"error"}
        assert set(body["error"]) == {"code", "message"}
        assert body["error"]["code"] == "NotFound"

    def test_validation_body(self, client, signup):
        headers, _ = signup("e400@x.dev")
        r = client.post(f"{V}/projects", json={}, headers=headers)
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "Validation"

    def test_unknown_route_is_wrapped_not_found(self, client):
        r = client.get(f"{V}/nonsense")
        assert r.status_code == 404
        assert r.json()["error"]["code"] == "NotFound"

    def test_method_not_allowed_wrapped(self, client):
        r = client.put(f"{V}/users")
        assert r.status_code == 405
        assert r.json()["error"]["code"] == "MethodNotAllowed"


class TestUsers:
    def test_register_returns_wire_user_only(self, client):
        r = client.post(f"{V}/users", json={
            "email": "New@X.dev", "display_name": "Newbie",
            "password": "long-enough-pw"})
        assert r.status_code == 201
        body = r.json()
        assert body["email"] == "new@x.dev"
        assert body["display_name"] == "Newbie"
        assert set(body) == {"id", "email", "display_name", "created_at"}
        assert "password" not in r.text and "digest" not in r.text

    def test_duplicate_email_conflict(self, client):
        payload = {"email": "two@x.dev", "display_name": "Two",
                   "password": "long-enough-pw"}
        assert client.post(f"{V}/users", json=payload).status_code == 201
        r = client.post(f"{V}/users", json=payload)
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "EmailTaken"

    def test_weak_password_rejected(self, client):
        r = client.post(f"{V}/users", json={
            "email": "weak@x.dev", "display_name": "Weak",
            "password": "short"})
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "WeakPassword"


class TestSessionEndpoints:
    def test_login_issues_usable_token(self, client, signup):
        headers, user = signup("flow@x.dev")
        r = client.get(f"{V}/projects", headers=headers)
        assert r.status_code == 200

    def test_wrong_password_is_401(self, client, signup):
        signup("pw@x.dev")
        r = client.post(f"{V}/sessions", json={
            "email": "pw@x.dev", "password": "wrong-password-1"})
        assert r.status_code == 401
        assert r.json()["error"]["code"] == "InvalidCredentials"

    def test_logout_invalidates_token(self, client, signup):
        headers, _ = signup("out@x.dev")
        assert client.delete(f"{V}/sessions",
                             headers=headers).status_code == 204
        assert client.get(f"{V}/projects",
                          headers=headers).status_code == 401

    def test_password_digest_never_leaves_the_server(self, client, signup):
        headers, user = signup("leak@x.dev")
        surfaces = [
            client.post(f"{V}/sessions", json={
                "email": "leak@x.dev",
                "password": "correct-horse-battery"}).text,
            client.get(f"{V}/projects", headers=headers).text,
        ]
        for text in surfaces:
            assert "scrypt" not in text
            assert "password_digest" not in text


class TestProjectEndpoints:
    def test_create_returns_detail_with_canonical_roots(self, client, signup):
        headers, _ = signup("proj@x.dev")
        body = make_project(client, headers, "detector",
                            description="finds things", tags=["Apple"])
        assert body["name"] == "detector"
        assert body["version"] == 1
        assert body["tags"] == ["apple"]
        assert [f["name"] for f in body["roots"]] == [
            "TrainData", "TestData", "Model", "Code"]
        assert body["score"] == {"ups": 0, "downs": 0, "net": 0}

    def test_patch_requires_expected_version(self, client, signup):
        headers, _ = signup("patch@x.dev")
        project = make_project(client, headers, "patchy")
        r = client.patch(f"{V}/projects/{project['id']}",
                         json={"description": "no version"}, headers=headers)
        assert r.status_code == 400
        r = client.patch(f"{V}/projects/{project['id']}",
                         json={"expected_version": 1, "description": "v2"},
                         headers=headers)
        assert r.status_code == 200
        assert r.json()["version"] == 2
        stale = client.patch(f"{V}/projects/{project['id']}",
                             json={"expected_version": 1,
                                   "description": "again"},
                             headers=headers)
        assert stale.status_code == 409
        assert stale.json()["error"]["code"] == "VersionConflict"

    def test_delete_then_404(self, client, signup):
        headers, _ = signup("del@x.dev")
        project = make_project(client, headers, "doomed")
        assert client.delete(f"{V}/projects/{project['id']}",
                             headers=headers).status_code == 204
        assert client.get(f"{V}/projects/{project['id']}",
                          headers=headers).status_code == 404

    def test_foreign_private_project_forbidden(self, client, signup):
        owner_headers, _ = signup("own2@x.dev")
        other_headers, _ = signup("oth2@x.dev")
        project = make_project(client, owner_headers, "secret",
                               visibility="Private")
        r = client.get(f"{V}/projects/{project['id']}", headers=other_headers)
        assert r.status_code == 403
        assert r.json()["error"]["code"] == "Forbidden"


class TestListingAndSearch:
    def test_browse_pagination_headers(self, client, signup):
        headers, _ = signup("browse@x.dev")
        for i in range(3):
            make_project(client, headers, f"listing-{i}")
        r = client.get(f"{V}/projects", params={"per_page": 2},
                       headers=headers)
        assert r.status_code == 200
        assert r.headers["X-Total-Count"] == "3"
        assert len(r.json()) == 2
        assert all("score" in item for item in r.json())

    def test_mine_returns_own_projects_newest_first(self, client, signup):
        mine_headers, _ = signup("mine@x.dev")
        other_headers, _ = signup("other@x.dev")
        make_project(client, other_headers, "not-mine")
        a = make_project(client, mine_headers, "mine-a")
        b = make_project(client, mine_headers, "mine-b")
        r = client.get(f"{V}/projects", params={"mine": "true"},
                       headers=mine_headers)
        assert [p["id"] for p in r.json()] == [b["id"], a["id"]]

    def test_search_enriches_hits_with_projects(self, client, signup):
        headers, _ = signup("qsearch@x.dev")
        made = make_project(client, headers, "apple-hunter", tags=["apple"])
        r = client.get(f"{V}/projects", params={"query": "apple"},
                       headers=headers)
        assert r.status_code == 200
        hits = r.json()
        assert hits[0]["id"] == made["id"]
        assert hits[0]["score"] == 5  # tag 3 + name 2
        assert hits[0]["project"]["name"] == "apple-hunter"

    def test_empty_query_param_rejected(self, client, signup):
        headers, _ = signup("eq@x.dev")
        r = client.get(f"{V}/projects", params={"query": "  "},
                       headers=headers)
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "EmptyQuery"


class TestFolderAndArtifactEndpoints:
    def test_folder_lifecycle(self, client, signup):
        headers, _ = signup("fold@x.dev")
        project = make_project(client, headers, "foldy")
        train = root_id(project, "TrainData")
        r = client.post(f"{V}/projects/{project['id']}/folders",
                        json={"parent": train, "name": "raw"},
                        headers=headers)
        assert r.status_code == 201
        folder = r.json()
        listing = client.get(f"{V}/folders/{train}", headers=headers).json()
        assert [f["name"] for f in listing["subfolders"]] == ["raw"]
        assert listing["folder"]["path"] == "TrainData"
        r = client.patch(f"{V}/folders/{folder['id']}",
                         json={"name": "cooked"}, headers=headers)
        assert r.json()["name"] == "cooked"
        assert client.delete(f"{V}/folders/{folder['id']}",
                             headers=headers).status_code == 204
        assert client.get(f"{V}/folders/{folder['id']}",
                          headers=headers).status_code == 404

    def test_root_rename_conflict_status(self, client, signup):
        headers, _ = signup("rootp@x.dev")
        project = make_project(client, headers, "rooty")
        r = client.patch(f"{V}/folders/{root_id(project, 'Model')}",
                         json={"name": "Models"}, headers=headers)
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "RootImmutable"

    def test_artifact_add_defaults_to_whole(self, client, signup):
        headers, _ = signup("arti@x.dev")
        project = make_project(client, headers, "arty")
        asset = upload(client, headers, b"weights", "w.pt").json()["asset"]
        r = client.post(f"{V}/folders/{root_id(project, 'Model')}/artifacts",
                        json={"asset": asset["id"], "display_name": "w.pt"},
                        headers=headers)
        assert r.status_code == 201
        body = r.json()
        assert body["selector"] == {"type": "whole"}
        assert client.delete(f"{V}/artifacts/{body['id']}",
                             headers=headers).status_code == 204

    def test_artifact_add_byte_range_wire(self, client, signup):
        headers, _ = signup("range@x.dev")
        project = make_project(client, headers, "rangy")
        asset = upload(client, headers, b"0123456789", "d.bin").json()["asset"]
        r = client.post(
            f"{V}/folders/{root_id(project, 'TrainData')}/artifacts",
            json={"asset": asset["id"], "display_name": "mid.bin",
                  "selector": {"type": "byte_range", "offset": 3,
                               "len": 4}},
            headers=headers)
        assert r.status_code == 201
        assert r.json()["selector"] == {"type": "byte_range", "offset": 3,
                                        "len": 4}


class TestAssetEndpoints:
    def test_upload_dedupes_with_existing_flag(self, client, signup):
        headers, _ = signup("dedupe@x.dev")
        first = upload(client, headers, b"same-bytes", "a.bin", tags="apple")
        assert first.status_code == 201
        assert first.json()["existing"] is False
        second = upload(client, headers, b"same-bytes", "b.bin", tags="pear")
        assert second.status_code == 200
        assert second.json()["existing"] is True
        assert second.json()["asset"]["id"] == first.json()["asset"]["id"]
        assert {"apple", "pear"} <= set(second.json()["asset"]["tags"])

    def test_round_trip_bytes_and_meta(self, client, signup):
        headers, _ = signup("bytes@x.dev")
        asset = upload(client, headers, b"precious", "p.bin").json()["asset"]
        meta = client.get(f"{V}/assets/{asset['id']}/meta", headers=headers)
        assert meta.json()["size_bytes"] == len(b"precious")
        raw = client.get(f"{V}/assets/{asset['id']}", headers=headers)
        assert raw.content == b"precious"
        assert raw.headers["Content-Disposition"].startswith("inline")

    def test_search_requires_query(self, client, signup):
        headers, _ = signup("asearch@x.dev")
        r = client.get(f"{V}/assets", headers=headers)
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "EmptyQuery"

    def test_search_returns_enriched_hits(self, client, signup):
        headers, _ = signup("ahit@x.dev")
        uploaded = upload(client, headers, b"findable", "apple_set.zip",
                          media_type="application/zip").json()["asset"]
        r = client.get(f"{V}/assets", params={"query": "apple"},
                       headers=headers)
        hits = r.json()
        assert r.headers["X-Total-Count"] == "1"
        assert hits[0]["asset"]["id"] == uploaded["id"]

    def test_upload_cap_yields_429(self, catalog, sessions):
        app = create_app(catalog, sessions, upload_cap_per_minute=2)
        with TestClient(app) as capped:
            r = capped.post(f"{V}/users", json={
                "email": "cap@x.dev", "display_name": "Cap",
                "password": "long-enough-pw"})
            token = capped.post(f"{V}/sessions", json={
                "email": "cap@x.dev",
                "password": "long-enough-pw"}).json()["token"]
            headers = {"Authorization": f"Bearer {token}"}
            for i in range(2):
                assert upload(capped, headers, bytes([i]) * 4,
                              f"{i}.bin").status_code == 201
            r = upload(capped, headers, b"third", "2.bin")
            assert r.status_code == 429
            assert r.json()["error"]["code"] == "UploadCapExceeded"


class TestRatingEndpoints:
    @pytest.fixture()
    def copied_project(self, client, signup):
        owner_headers, _ = signup("rowner@x.dev")
        rater_headers, _ = signup("rrater@x.dev")
        project = make_project(client, owner_headers, "ratable")
        asset = upload(client, owner_headers, b"data", "d.bin").json()["asset"]
        client.post(f"{V}/folders/{root_id(project, 'TrainData')}/artifacts",
                    json={"asset": asset["id"], "display_name": "d.bin"},
                    headers=owner_headers)
        r = client.post(f"{V}/projects/{project['id']}/copies",
                        json={"name": "rated-copy"}, headers=rater_headers)
        assert r.status_code == 201
        return owner_headers, rater_headers, project

    def test_flow_up_flip_clear(self, client, copied_project):
        _, rater, project = copied_project
        pid = project["id"]
        before = client.get(f"{V}/projects/{pid}/rating", headers=rater).json()
        assert before == {"ups": 0, "downs": 0, "net": 0, "mine": None,
                          "eligible": True}
        up = client.put(f"{V}/projects/{pid}/rating",
                        json={"value": "up"}, headers=rater).json()
        assert up == {"ups": 1, "downs": 0, "net": 1, "mine": "up",
                      "eligible": True}
        down = client.put(f"{V}/projects/{pid}/rating",
                          json={"value": "down"}, headers=rater).json()
        assert (down["downs"], down["net"], down["mine"]) == (1, -1, "down")
        cleared = client.delete(f"{V}/projects/{pid}/rating",
                                headers=rater).json()
        assert cleared == {"ups": 0, "downs": 0, "net": 0, "mine": None,
                           "eligible": True}

    def test_owner_not_eligible_and_blocked(self, client, copied_project):
        owner, _, project = copied_project
        summary = client.get(f"{V}/projects/{project['id']}/rating",
                             headers=owner).json()
        assert summary["eligible"] is False
        r = client.put(f"{V}/projects/{project['id']}/rating",
                       json={"value": "up"}, headers=owner)
        assert r.status_code == 403
        assert r.json()["error"]["code"] == "NotEligible"

    def test_copy_requires_different_owner(self, client, copied_project):
        owner, _, project = copied_project
        r = client.post(f"{V}/projects/{project['id']}/copies",
                        json={"name": "self-copy"}, headers=owner)
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "CopyOwnProject"

    def test_bad_value_rejected(self, client, copied_project):
        _, rater, project = copied_project
        r = client.put(f"{V}/projects/{project['id']}/rating",
                       json={"value": "sideways"}, headers=rater)
        assert r.status_code == 400


class TestProvenanceOnTheWire:
    def test_copy_detail_carries_provenance(self, client, signup):
        owner_headers, _ = signup("porigin@x.dev")
        copier_headers, _ = signup("pcopier@x.dev")
        source = make_project(client, owner_headers, "origin")
        copy = client.post(f"{V}/projects/{source['id']}/copies",
                           json={"name": "derived"},
                           headers=copier_headers).json()
        assert copy["copied_from"] == {
            "project_id": source["id"],
            "source_version": 1,
            "source_name": "origin",
        }
        assert copy["provenance"]["origin_available"] is True
        assert copy["visibility"] == "Private"
        client.delete(f"{V}/projects/{source['id']}", headers=owner_headers)
        refreshed = client.get(f"{V}/projects/{copy['id']}",
                               headers=copier_headers).json()
        assert refreshed["provenance"]["origin_available"] is False


class TestEventEndpoints:
    def test_feed_shape_and_paging(self, client, signup):
        headers, user = signup("events@x.dev")
        project = make_project(client, headers, "eventful")
        train = root_id(project, "TrainData")
        for name in ("one", "two", "three"):
            client.post(f"{V}/projects/{project['id']}/folders",
                        json={"parent": train, "name": name},
                        headers=headers)
        r = client.get(f"{V}/projects/{project['id']}/events",
                       params={"limit": 2}, headers=headers)
        events = r.json()["events"]
        assert len(events) == 2
        assert events[0]["seq"] == 4
        assert events[0]["action"] == "folder.created"
        assert events[0]["actor_name"] == user["display_name"]
        assert set(events[0]) == {"seq", "project", "actor", "actor_name",
                                  "action", "target", "at"}
        older = client.get(f"{V}/projects/{project['id']}/events",
                           params={"before": 3}, headers=headers).json()
        assert [e["seq"] for e in older["events"]] == [2, 1]


class TestPackageEndpoint:
    def test_whole_download_matches_module_bytes(self, client, signup,
                                                 catalog):
        headers, user = signup("pkg@x.dev")
        project = make_project(client, headers, "packaged")
        asset = upload(client, headers, b"content", "c.bin").json()["asset"]
        client.post(f"{V}/folders/{root_id(project, 'Code')}/artifacts",
                    json={"asset": asset["id"], "display_name": "c.bin"},
                    headers=headers)
        r = client.get(f"{V}/projects/{project['id']}/package",
                       headers=headers)
        assert r.status_code == 200
        assert r.headers["content-type"] == "application/zip"
        assert "attachment" in r.headers["Content-Disposition"]
        module_bytes = packaging.build_package(catalog, user["id"],
                                               project["id"])
        assert r.content == module_bytes

    def test_selective_download_by_query_params(self, client, signup):
        headers, _ = signup("sel@x.dev")
        project = make_project(client, headers, "selective")
        asset = upload(client, headers, b"traindata", "t.bin").json()["asset"]
        client.post(f"{V}/folders/{root_id(project, 'TrainData')}/artifacts",
                    json={"asset": asset["id"], "display_name": "t.bin"},
                    headers=headers)
        r = client.get(f"{V}/projects/{project['id']}/package",
                       params={"folders": root_id(project, "TrainData")},
                       headers=headers)
        members = extract_map(r.content)
        assert set(members) == {"manifest.json", "TrainData/t.bin"}
        assert members["TrainData/t.bin"] == b"traindata"

    def test_empty_named_selection_rejected(self, client, signup):
        headers, _ = signup("esel@x.dev")
        project = make_project(client, headers, "empty-sel")
        r = client.get(f"{V}/projects/{project['id']}/package",
                       params={"folders": ""}, headers=headers)
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "EmptySelection"


class TestImportEndpoint:
    def test_import_between_projects(self, client, signup):
        owner_headers, _ = signup("iowner@x.dev")
        taker_headers, _ = signup("itaker@x.dev")
        source = make_project(client, owner_headers, "giving")
        asset = upload(client, owner_headers, b"gift", "g.bin").json()["asset"]
        train = root_id(source, "TrainData")
        art = client.post(f"{V}/folders/{train}/artifacts",
                          json={"asset": asset["id"],
                                "display_name": "g.bin"},
                          headers=owner_headers).json()
        target = make_project(client, taker_headers, "taking")
        r = client.post(
            f"{V}/projects/{source['id']}/imports",
            json={"selection": {"artifacts": [art["id"]]},
                  "target_project": target["id"],
                  "target_folder": root_id(target, "TrainData")},
            headers=taker_headers)
        assert r.status_code == 200
        assert r.json() == {"imported": 1}
        listing = client.get(
            f"{V}/folders/{root_id(target, 'TrainData')}",
            headers=taker_headers).json()
        assert [a["display_name"] for a in listing["artifacts"]] == ["g.bin"]


class TestHttpModuleParity:
    def test_same_script_same_end_state(self, tmp_path, client, signup,
                                        catalog):
        """The HTTP surface and direct module calls must land on identical
        content states."""
        from ran.blobstore import BlobStore
        from ran.catalog import Catalog
        from ran.model import Selection as Sel, Whole

        # --- over HTTP
        owner_h, owner_u = signup("par1@x.dev", "Parity")
        other_h, other_u = signup("par2@x.dev", "Parity2")
        project = make_project(client, owner_h, "parity",
                               description="d", tags=["t"])
        asset = upload(client, owner_h, b"parity-bytes", "p.bin").json()["asset"]
        client.post(f"{V}/folders/{root_id(project, 'Model')}/artifacts",
                    json={"asset": asset["id"], "display_name": "p.bin"},
                    headers=owner_h)
        client.post(f"{V}/projects/{project['id']}/copies",
                    json={"name": "parity-copy"}, headers=other_h)
        client.put(f"{V}/projects/{project['id']}/rating",
                   json={"value": "up"}, headers=other_h)

        # --- same steps through the modules on a fresh store
        store2 = BlobStore(tmp_path / "blobs2")
        cat2 = Catalog(tmp_path / "cat2.sqlite3", store2)
        mod_owner = auth.register(cat2, "par1@x.dev", "Parity",
                                  "correct-horse-battery")
        mod_other = auth.register(cat2, "par2@x.dev", "Parity2",
                                  "correct-horse-battery")
        mod_project = cat2.create_project(mod_owner.id, "parity",
                                          description="d", tags=["t"])
        meta, _ = cat2.register_asset(mod_owner.id, b"parity-bytes", "p.bin",
                                      "application/octet-stream", [])
        with cat2.read() as conn:
            model_root = conn.execute(
                "SELECT id FROM folders WHERE project=? AND name='Model'",
                (mod_project.id,)).fetchone()[0]
        cat2.artifact_add(mod_owner.id, model_root, meta.id, Whole(), "p.bin")
        cat2.project_copy(mod_other.id, mod_project.id, "parity-copy")
        from ran import ratings as ratings_mod
        ratings_mod.rate(cat2, mod_other.id, mod_project.id, 1)

        assert catalog.tree_snapshot(project["id"]) == \
            cat2.tree_snapshot(mod_project.id)
        http_events = [(e[1]) for e in _actions(catalog, project["id"])]
        mod_events = [(e[1]) for e in _actions(cat2, mod_project.id)]
        assert http_events == mod_events
        http_pkg = packaging.build_package(catalog, owner_u["id"],
                                           project["id"])
        mod_pkg = packaging.build_package(cat2, mod_owner.id, mod_project.id)
        assert http_pkg == mod_pkg


def _actions(catalog, project_id):
    from helpers import event_log
    return event_log(catalog, project_id)
