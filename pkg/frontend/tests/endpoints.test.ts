import assert from "node:assert/strict";
import { test } from "node:test";

import { API_PREFIX, ENDPOINTS, endpointPath } from "../src/api.js";

// Recorded from the service's route table. When the server grows or changes
// a route, update this list together with the ENDPOINTS table.
const SERVER_ROUTES = new Set([
  "POST /api/v1/users",
  "POST /api/v1/sessions",
  "DELETE /api/v1/sessions",
  "GET /api/v1/projects",
  "POST /api/v1/projects",
  "GET /api/v1/projects/{project_id}",
  "PATCH /api/v1/projects/{project_id}",
  "DELETE /api/v1/projects/{project_id}",
  "POST /api/v1/projects/{project_id}/copies",
  "POST /api/v1/projects/{project_id}/imports",
  "GET /api/v1/projects/{project_id}/package",
  "PUT /api/v1/projects/{project_id}/rating",
  "DELETE /api/v1/projects/{project_id}/rating",
  "GET /api/v1/projects/{project_id}/rating",
  "GET /api/v1/projects/{project_id}/events",
  "POST /api/v1/projects/{project_id}/folders",
  "GET /api/v1/folders/{folder_id}",
  "PATCH /api/v1/folders/{folder_id}",
  "DELETE /api/v1/folders/{folder_id}",
  "POST /api/v1/folders/{folder_id}/artifacts",
  "DELETE /api/v1/artifacts/{artifact_id}",
  "POST /api/v1/assets",
  "GET /api/v1/assets",
  "GET /api/v1/assets/{asset_id}/meta",
  "GET /api/v1/assets/{asset_id}",
]);

test("every client endpoint is a recorded server route", () => {
  for (const [name, spec] of Object.entries(ENDPOINTS)) {
    const route = `${spec.method} ${API_PREFIX}${spec.template}`;
    assert.ok(SERVER_ROUTES.has(route),
              `client endpoint ${name} uses unknown route ${route}`);
  }
});

test("endpoint templates declare parameters in {braces} only", () => {
  for (const spec of Object.values(ENDPOINTS)) {
    assert.match(spec.template, /^(\/[A-Za-z0-9_]+|\/\{[a-z_]+\})+$/);
  }
});

test("endpointPath fills path parameters", () => {
  assert.equal(endpointPath("project", { project_id: "abc-123" }),
               "/api/v1/projects/abc-123");
  assert.equal(endpointPath("setRating", { project_id: "p1" }),
               "/api/v1/projects/p1/rating");
});

test("endpointPath percent-encodes parameter values", () => {
  assert.equal(endpointPath("folder", { folder_id: "a/b c" }),
               "/api/v1/folders/a%2Fb%20c");
});

test("endpointPath refuses a missing parameter", () => {
  assert.throws(() => endpointPath("project", {}),
                /missing path parameter project_id/);
});

test("parameterless endpoints need no arguments", () => {
  assert.equal(endpointPath("login"), "/api/v1/sessions");
  assert.equal(endpointPath("listProjects"), "/api/v1/projects");
  assert.equal(endpointPath("searchAssets"), "/api/v1/assets");
});
