import assert from "node:assert/strict";
import { test } from "node:test";

import { emptySelection, selectionFor, selectionIsEmpty, toggleSelection } from "../src/state.js";

test("a fresh selection is empty", () => {
  const selection = emptySelection("p1");
  assert.equal(selection.projectId, "p1");
  assert.ok(selectionIsEmpty(selection));
});

test("selectionFor keeps a selection for the same project", () => {
  const selection = toggleSelection(null, "p1", "folder", "f1");
  assert.equal(selectionFor(selection, "p1"), selection);
});

test("selectionFor resets when the project changes", () => {
  const selection = toggleSelection(null, "p1", "folder", "f1");
  const other = selectionFor(selection, "p2");
  assert.equal(other.projectId, "p2");
  assert.ok(selectionIsEmpty(other));
});

test("toggle adds and a second toggle removes", () => {
  const once = toggleSelection(null, "p1", "artifact", "a1");
  assert.deepEqual([...once.artifacts], ["a1"]);
  const twice = toggleSelection(once, "p1", "artifact", "a1");
  assert.ok(selectionIsEmpty(twice));
});

test("folders and artifacts are tracked separately", () => {
  let selection = toggleSelection(null, "p1", "folder", "x");
  selection = toggleSelection(selection, "p1", "artifact", "x");
  assert.deepEqual([...selection.folders], ["x"]);
  assert.deepEqual([...selection.artifacts], ["x"]);
});

test("toggle never mutates its input", () => {
  const before = toggleSelection(null, "p1", "folder", "f1");
  toggleSelection(before, "p1", "folder", "f2");
  toggleSelection(before, "p1", "folder", "f1");
  assert.deepEqual([...before.folders], ["f1"]);
});

test("toggling against a different project starts over", () => {
  const p1 = toggleSelection(null, "p1", "folder", "f1");
  const p2 = toggleSelection(p1, "p2", "folder", "f2");
  assert.equal(p2.projectId, "p2");
  assert.deepEqual([...p2.folders], ["f2"]);
});
