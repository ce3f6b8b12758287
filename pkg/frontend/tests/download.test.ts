import assert from "node:assert/strict";
import { test } from "node:test";

import { buildDownloadRequest, downloadQuery } from "../src/download.js";
import { emptySelection, toggleSelection } from "../src/state.js";
import type { DownloadSelection } from "../src/state.js";

function selection(
  projectId: string,
  folders: string[],
  artifacts: string[],
): DownloadSelection {
  return {
    projectId,
    folders: new Set(folders),
    artifacts: new Set(artifacts),
  };
}

test("empty selection yields no request at all", () => {
  assert.equal(buildDownloadRequest("p1", emptySelection("p1")), null);
  assert.equal(downloadQuery(emptySelection("p1")), null);
});

test("a selection for a different project yields no request", () => {
  const other = toggleSelection(null, "p2", "folder", "f1");
  assert.equal(buildDownloadRequest("p1", other), null);
});

test("folders only produces a folders parameter", () => {
  const url = buildDownloadRequest("p1", selection("p1", ["fb", "fa"], []));
  assert.equal(url, "/api/v1/projects/p1/package?folders=fa,fb");
});

test("artifacts only produces an artifacts parameter", () => {
  const url = buildDownloadRequest("p1", selection("p1", [], ["a2", "a1"]));
  assert.equal(url, "/api/v1/projects/p1/package?artifacts=a1,a2");
});

test("a mixed selection carries both parameters", () => {
  const url = buildDownloadRequest("p1", selection("p1", ["f1"], ["a1", "a2"]));
  assert.equal(url, "/api/v1/projects/p1/package?folders=f1&artifacts=a1,a2");
});

test("ids are sorted so equal selections build equal requests", () => {
  const one = buildDownloadRequest("p1", selection("p1", ["b", "a", "c"], []));
  const two = buildDownloadRequest("p1", selection("p1", ["c", "b", "a"], []));
  assert.equal(one, two);
});

test("ids are percent-encoded but list commas stay literal", () => {
  const url = buildDownloadRequest("p1", selection("p1", ["f 1", "f&2"], []));
  assert.equal(url, "/api/v1/projects/p1/package?folders=f%201,f%262");
});

test("the project id is encoded into the path", () => {
  const url = buildDownloadRequest("p/1", selection("p/1", ["f1"], []));
  assert.equal(url, "/api/v1/projects/p%2F1/package?folders=f1");
});

test("downloadQuery returns raw comma-joined values", () => {
  const query = downloadQuery(selection("p1", ["f2", "f1"], ["a1"]));
  assert.deepEqual(query, { folders: "f1,f2", artifacts: "a1" });
});
