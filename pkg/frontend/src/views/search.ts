import type { AssetHit, ProjectHit } from "../api.js";
import { el } from "../dom.js";
import type { AppContext } from "./context.js";
import { requireSession } from "./context.js";
import { errorBox, formatBytes, loading, projectLink, shortId, tagList } from "./common.js";

export async function renderSearch(ctx: AppContext, query: string): Promise<HTMLElement> {
  requireSession(ctx);
  const heading = el("h2", {}, `Search: ${query}`);
  const root = el("div", {}, heading, loading());
  if (query.trim() === "") {
    root.replaceChildren(heading, el("p", { class: "muted" }, "Type something to search for."));
    return root;
  }
  try {
    const [projects, assets] = await Promise.all([
      ctx.client().request<ProjectHit[]>("listProjects", { query: { query } }),
      ctx.client().request<AssetHit[]>("searchAssets", { query: { query } }),
    ]);
    if (!ctx.isCurrent()) return root;
    root.replaceChildren(
      heading,
      el("h3", {}, `Projects (${projects.body.length})`),
      projects.body.length === 0
        ? el("p", { class: "muted" }, "No matching projects.")
        : projectHits(projects.body),
      el("h3", {}, `Assets (${assets.body.length})`),
      assets.body.length === 0
        ? el("p", { class: "muted" }, "No matching assets.")
        : assetHits(assets.body),
    );
  } catch (err) {
    if (ctx.isCurrent()) root.replaceChildren(heading, errorBox(err));
  }
  return root;
}

function projectHits(hits: ProjectHit[]): HTMLElement {
  const rows = hits.map((hit) =>
    el("tr", {},
      el("td", {}, projectLink(hit.project)),
      el("td", {}, tagList(hit.project.tags)),
      el("td", { class: "muted" }, hit.matched_fields.join(", ")),
      el("td", { class: "muted" }, hit.score.toFixed(2)),
    ));
  return el("div", { class: "table-wrap" },
    el("table", {},
      el("thead", {}, el("tr", {},
        el("th", {}, "Name"), el("th", {}, "Tags"),
        el("th", {}, "Matched"), el("th", {}, "Relevance"))),
      el("tbody", {}, ...rows)));
}

function assetHits(hits: AssetHit[]): HTMLElement {
  const rows = hits.map((hit) =>
    el("tr", {},
      el("td", { title: hit.asset.id }, hit.asset.original_filename || shortId(hit.asset.id)),
      el("td", {}, formatBytes(hit.asset.size_bytes)),
      el("td", {}, hit.asset.media_type),
      el("td", {}, tagList(hit.asset.tags)),
      el("td", { class: "muted" }, hit.matched_fields.join(", ")),
      el("td", { class: "muted" }, hit.score.toFixed(2)),
    ));
  return el("div", { class: "table-wrap" },
    el("table", {},
      el("thead", {}, el("tr", {},
        el("th", {}, "File"), el("th", {}, "Size"), el("th", {}, "Type"),
        el("th", {}, "Tags"), el("th", {}, "Matched"), el("th", {}, "Relevance"))),
      el("tbody", {}, ...rows)));
}
