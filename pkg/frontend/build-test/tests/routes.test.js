import assert from "node:assert/strict";
import { test } from "node:test";
import { parseRoute, routeHash } from "../src/routes.js";
test("empty and root fragments land on the dashboard", () => {
    assert.deepEqual(parseRoute(""), { view: "dashboard" });
    assert.deepEqual(parseRoute("#"), { view: "dashboard" });
    assert.deepEqual(parseRoute("#/"), { view: "dashboard" });
    assert.deepEqual(parseRoute("#/dashboard"), { view: "dashboard" });
});
test("fixed pages parse by path", () => {
    assert.deepEqual(parseRoute("#/login"), { view: "login" });
    assert.deepEqual(parseRoute("#/register"), { view: "register" });
    assert.deepEqual(parseRoute("#/browse"), { view: "browse" });
});
test("search reads q from the query string", () => {
    assert.deepEqual(parseRoute("#/search?q=resnet"), { view: "search", query: "resnet" });
    assert.deepEqual(parseRoute("#/search?q=two+words"), { view: "search", query: "two words" });
    assert.deepEqual(parseRoute("#/search"), { view: "search", query: "" });
});
test("project and folder routes carry decoded ids", () => {
    assert.deepEqual(parseRoute("#/projects/abc-123"), { view: "project", id: "abc-123" });
    assert.deepEqual(parseRoute("#/folders/f%20x"), { view: "folder", id: "f x" });
});
test("anything else is not found", () => {
    assert.equal(parseRoute("#/nonsense").view, "notfound");
    assert.equal(parseRoute("#/projects").view, "notfound");
    assert.equal(parseRoute("#/projects/a/b").view, "notfound");
    assert.equal(parseRoute("#/folders/").view, "notfound");
});
test("notfound remembers the requested path", () => {
    assert.deepEqual(parseRoute("#/no/such/page"), { view: "notfound", path: "/no/such/page" });
});
test("routeHash round-trips through parseRoute", () => {
    const routes = [
        { view: "login" },
        { view: "register" },
        { view: "dashboard" },
        { view: "browse" },
        { view: "search", query: "fruit classifier" },
        { view: "project", id: "0f8e2d" },
        { view: "folder", id: "a b" },
    ];
    for (const route of routes) {
        assert.deepEqual(parseRoute(routeHash(route)), route);
    }
});
