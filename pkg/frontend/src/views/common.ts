/** Shared view fragments. */

import { ApiError } from "../api.js";
import type { Project } from "../api.js";
import { el } from "../dom.js";

export function loading(): HTMLElement {
  return el("p", { class: "muted" }, "loading…");
}

export function errorBox(err: unknown): HTMLElement {
  if (err instanceof ApiError) {
    return el("div", { class: "error" }, `${err.code}: ${err.message}`);
  }
  return el("div", { class: "error" }, String(err));
}

export function tagList(tags: string[]): HTMLElement {
  const box = el("span", { class: "tags" });
  for (const tag of tags) box.append(el("span", { class: "tag" }, tag));
  return box;
}

export function projectLink(project: Project): HTMLElement {
  return el("a", { href: `#/projects/${encodeURIComponent(project.id)}` },
            project.name);
}

export function visibilityBadge(visibility: string): HTMLElement {
  const cls = visibility === "Public" ? "badge public" : "badge private";
  return el("span", { class: cls }, visibility);
}

export function shortId(id: string): string {
  return id.length > 10 ? `${id.slice(0, 10)}…` : id;
}

export function selectorLabel(selector: { type: string; [key: string]: unknown }): string {
  if (selector.type === "byte_range") {
    const offset = Number(selector["offset"]);
    const len = Number(selector["len"]);
    return `bytes ${offset}..${offset + len}`;
  }
  if (selector.type === "members") {
    const paths = selector["paths"];
    const count = Array.isArray(paths) ? paths.length : 0;
    return `${count} archive member${count === 1 ? "" : "s"}`;
  }
  return "whole file";
}

export function formatBytes(size: number): string {
  if (size < 1024) return `${size} B`;
  const units = ["KiB", "MiB", "GiB"];
  let value = size;
  let unit = "B";
  for (const next of units) {
    if (value < 1024) break;
    value /= 1024;
    unit = next;
  }
  return `${value.toFixed(1)} ${unit}`;
}
