import type { ProjectDetail, RatingSummary } from "../api.js";
import { formatScore, projectControls } from "../controls.js";
import { el } from "../dom.js";
import { buildDownloadRequest, downloadQuery } from "../download.js";
import type { AppContext } from "./context.js";
import { requireSession } from "./context.js";
import { errorBox, loading, tagList, visibilityBadge } from "./common.js";

export async function renderProject(
  ctx: AppContext,
  projectId: string,
): Promise<HTMLElement> {
  const session = requireSession(ctx);
  const root = el("div", {}, loading());
  try {
    const [detail, rating] = await Promise.all([
      ctx.client().request<ProjectDetail>("project", {
        params: { project_id: projectId },
      }),
      ctx.client().request<RatingSummary>("ratingSummary", {
        params: { project_id: projectId },
      }),
    ]);
    if (!ctx.isCurrent()) return root;
    root.replaceChildren(
      ...projectPage(ctx, session.user.id, detail.body, rating.body));
  } catch (err) {
    if (ctx.isCurrent()) root.replaceChildren(errorBox(err));
  }
  return root;
}

function projectPage(
  ctx: AppContext,
  viewerId: string,
  detail: ProjectDetail,
  rating: RatingSummary,
): HTMLElement[] {
  const parts: HTMLElement[] = [
    el("div", { class: "page-head" },
      el("h2", {}, detail.name),
      el("span", { class: "score", title: "aggregate rating" },
         formatScore(rating))),
    el("p", { class: "meta" },
      visibilityBadge(detail.visibility), ` v${detail.version} `, tagList(detail.tags)),
  ];
  if (detail.description) parts.push(el("p", {}, detail.description));
  if (detail.provenance) {
    const prov = detail.provenance;
    const line = el("p", { class: "provenance" },
      "Copied from ",
      prov.origin_available
        ? el("a", { href: `#/projects/${encodeURIComponent(prov.project_id)}` },
             prov.source_name)
        : el("span", {}, prov.source_name),
      ` (v${prov.source_version})`,
      prov.origin_available ? null : el("span", { class: "muted" },
                                        "; source no longer available"));
    parts.push(line);
  }
  parts.push(controlsRow(ctx, viewerId, detail, rating));
  parts.push(foldersPanel(ctx, detail));
  return parts;
}

function controlsRow(
  ctx: AppContext,
  viewerId: string,
  detail: ProjectDetail,
  rating: RatingSummary,
): HTMLElement {
  const controls = projectControls(viewerId, detail.owner, rating.eligible);
  const row = el("div", { class: "controls" });
  if (controls.showCopy) row.append(copyForm(ctx, detail));
  if (controls.showRate) {
    row.append(rateWidget(ctx, detail.id, rating));
  } else if (controls.showCopy) {
    row.append(el("span", { class: "muted" },
                  "Copy this project to unlock rating."));
  }
  return row;
}

function copyForm(ctx: AppContext, detail: ProjectDetail): HTMLElement {
  const name = el("input", { type: "text", name: "copy_name",
                             value: `${detail.name}-copy` });
  const feedback = el("span", {});
  return el("form", {
    class: "inline-form",
    onsubmit: (event) => {
      event.preventDefault();
      void submit();
    },
  }, name, el("button", { type: "submit" }, "Copy"), feedback);

  async function submit(): Promise<void> {
    feedback.replaceChildren();
    try {
      const { body } = await ctx.client().request<{ id: string }>("copyProject", {
        params: { project_id: detail.id },
        body: { name: name.value.trim() },
      });
      if (!ctx.isCurrent()) return;
      ctx.navigate(`#/projects/${encodeURIComponent(body.id)}`);
    } catch (err) {
      if (ctx.isCurrent()) feedback.replaceChildren(errorBox(err));
    }
  }
}

function rateWidget(
  ctx: AppContext,
  projectId: string,
  rating: RatingSummary,
): HTMLElement {
  const feedback = el("span", {});
  const up = el("button", {
    type: "button",
    class: rating.mine === "up" ? "rate active" : "rate",
    onclick: () => void send("up"),
  }, "▲ useful");
  const down = el("button", {
    type: "button",
    class: rating.mine === "down" ? "rate active" : "rate",
    onclick: () => void send("down"),
  }, "▼ not useful");
  const widget = el("span", { class: "rate-widget" }, up, down);
  if (rating.mine !== null) {
    widget.append(el("button", {
      type: "button",
      class: "rate",
      onclick: () => void send(null),
    }, "clear"));
  }
  widget.append(feedback);
  return widget;

  // the page re-renders from the server after every vote; no local guesses
  async function send(value: "up" | "down" | null): Promise<void> {
    feedback.replaceChildren();
    try {
      if (value === null) {
        await ctx.client().request<RatingSummary>("clearRating", {
          params: { project_id: projectId },
        });
      } else {
        await ctx.client().request<RatingSummary>("setRating", {
          params: { project_id: projectId },
          body: { value },
        });
      }
      if (ctx.isCurrent()) ctx.refresh();
    } catch (err) {
      if (ctx.isCurrent()) feedback.replaceChildren(errorBox(err));
    }
  }
}

function foldersPanel(ctx: AppContext, detail: ProjectDetail): HTMLElement {
  const selection = ctx.getSelection(detail.id);
  const rows = detail.roots.map((rootRef) =>
    el("div", { class: "folder-row" },
      el("input", {
        type: "checkbox",
        checked: selection.folders.has(rootRef.id),
        onchange: () => {
          ctx.toggleSelection(detail.id, "folder", rootRef.id);
          ctx.refresh();
        },
      }),
      el("a", { href: `#/folders/${encodeURIComponent(rootRef.id)}` },
         rootRef.name),
      el("span", { class: "muted" }, rootRef.kind),
    ));
  return el("div", { class: "split" },
    el("div", { class: "grow" }, el("h3", {}, "Folders"), ...rows),
    downloadPanel(ctx, detail.id, detail.name));
}

export function downloadPanel(
  ctx: AppContext,
  projectId: string,
  projectName: string,
): HTMLElement {
  const selection = ctx.getSelection(projectId);
  const request = buildDownloadRequest(projectId, selection);
  const feedback = el("div", {});
  const button = el("button", {
    type: "button",
    disabled: request === null,
    onclick: () => void download(),
  }, "Download selection");
  const summary = el("p", { class: "muted" },
    `${selection.folders.size} folder(s), ${selection.artifacts.size} artifact(s) selected`);
  return el("aside", { class: "download-panel" },
    el("h3", {}, "Download"), summary, button, feedback);

  async function download(): Promise<void> {
    const query = downloadQuery(ctx.getSelection(projectId));
    if (query === null) return;
    feedback.replaceChildren(el("p", { class: "muted" }, "packaging…"));
    try {
      const blob = await ctx.client().requestBlob("packageZip", {
        params: { project_id: projectId },
        query,
      });
      saveBlob(blob, `${projectName}.zip`);
      if (ctx.isCurrent()) feedback.replaceChildren();
    } catch (err) {
      if (ctx.isCurrent()) feedback.replaceChildren(errorBox(err));
    }
  }
}

/** Hand the fetched archive to the browser's save machinery. */
function saveBlob(blob: Blob, filename: string): void {
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  document.body.append(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}
