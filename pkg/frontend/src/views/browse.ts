import type { BrowseRow } from "../api.js";
import { el } from "../dom.js";
import type { AppContext } from "./context.js";
import { requireSession } from "./context.js";
import { formatScore } from "../controls.js";
import { errorBox, loading, projectLink, shortId, tagList, visibilityBadge } from "./common.js";

export async function renderBrowse(ctx: AppContext): Promise<HTMLElement> {
  requireSession(ctx);
  const root = el("div", {}, el("h2", {}, "Browse"), loading());
  try {
    const { body: rows, total } = await ctx.client().request<BrowseRow[]>("listProjects", {});
    if (!ctx.isCurrent()) return root;
    const count = total ?? String(rows.length);
    root.replaceChildren(
      el("h2", {}, "Browse"),
      el("p", { class: "muted" }, `${count} project(s) visible to you`),
      rows.length === 0
        ? el("p", { class: "muted" }, "No projects are visible yet.")
        : browseTable(rows),
    );
  } catch (err) {
    if (ctx.isCurrent()) root.replaceChildren(el("h2", {}, "Browse"), errorBox(err));
  }
  return root;
}

function browseTable(rows: BrowseRow[]): HTMLElement {
  // aggregate score is part of every row, whatever the viewer's own vote
  const body = rows.map((row) =>
    el("tr", {},
      el("td", {}, projectLink(row)),
      el("td", { class: "score" }, formatScore(row.score)),
      el("td", {}, visibilityBadge(row.visibility)),
      el("td", {}, `v${row.version}`),
      el("td", {}, tagList(row.tags)),
      el("td", { class: "muted", title: row.owner }, shortId(row.owner)),
    ));
  return el("div", { class: "table-wrap" },
    el("table", {},
      el("thead", {}, el("tr", {},
        el("th", {}, "Name"), el("th", {}, "Score"), el("th", {}, "Visibility"),
        el("th", {}, "Version"), el("th", {}, "Tags"), el("th", {}, "Owner"))),
      el("tbody", {}, ...body)));
}
