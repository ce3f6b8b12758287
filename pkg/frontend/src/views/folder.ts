import type { ArtifactInfo, EventRow, FolderInfo, FolderListing, Project } from "../api.js";
import { el } from "../dom.js";
import { createPoller, TRACKING_POLL_MS } from "../poll.js";
import type { AppContext } from "./context.js";
import { requireSession } from "./context.js";
import { errorBox, loading, selectorLabel, shortId } from "./common.js";
import { downloadPanel } from "./project.js";

export async function renderFolder(
  ctx: AppContext,
  folderId: string,
): Promise<HTMLElement> {
  requireSession(ctx);
  const root = el("div", {}, loading());
  try {
    const { body: listing } = await ctx.client().request<FolderListing>("folder", {
      params: { folder_id: folderId },
    });
    const { body: project } = await ctx.client().request<Project>("project", {
      params: { project_id: listing.folder.project },
    });
    if (!ctx.isCurrent()) return root;
    root.replaceChildren(...folderPage(ctx, listing, project));
  } catch (err) {
    if (ctx.isCurrent()) root.replaceChildren(errorBox(err));
  }
  return root;
}

function folderPage(
  ctx: AppContext,
  listing: FolderListing,
  project: Project,
): HTMLElement[] {
  const folder = listing.folder;
  const head = el("div", {},
    el("p", { class: "breadcrumb" },
      el("a", { href: `#/projects/${encodeURIComponent(project.id)}` },
         project.name),
      ` / ${folder.path ?? folder.name}`),
    el("h2", {}, folder.name),
    el("p", { class: "muted" }, `${folder.kind} folder`),
  );
  // artifacts above, subfolders below, tracking window in the side column
  const main = el("div", { class: "grow" },
    el("h3", {}, `Artifacts (${listing.artifacts.length})`),
    listing.artifacts.length === 0
      ? el("p", { class: "muted" }, "No artifacts in this folder.")
      : artifactTable(ctx, project.id, listing.artifacts),
    el("h3", {}, `Subfolders (${listing.subfolders.length})`),
    listing.subfolders.length === 0
      ? el("p", { class: "muted" }, "No subfolders.")
      : subfolderList(ctx, project.id, listing.subfolders),
  );
  const side = el("aside", { class: "side-column" },
    downloadPanel(ctx, project.id, project.name),
    trackingWindow(ctx, project.id),
  );
  return [head, el("div", { class: "split" }, main, side)];
}

function artifactTable(
  ctx: AppContext,
  projectId: string,
  artifacts: ArtifactInfo[],
): HTMLElement {
  const selection = ctx.getSelection(projectId);
  const rows = artifacts.map((artifact) =>
    el("tr", {},
      el("td", {}, el("input", {
        type: "checkbox",
        checked: selection.artifacts.has(artifact.id),
        onchange: () => {
          ctx.toggleSelection(projectId, "artifact", artifact.id);
          ctx.refresh();
        },
      })),
      el("td", {}, artifact.display_name),
      el("td", { class: "muted" }, selectorLabel(artifact.selector)),
      el("td", { class: "muted", title: artifact.asset }, shortId(artifact.asset)),
      el("td", { class: "muted" }, artifact.added_at),
    ));
  return el("div", { class: "table-wrap" },
    el("table", {},
      el("thead", {}, el("tr", {},
        el("th", {}, ""), el("th", {}, "Name"), el("th", {}, "Fragment"),
        el("th", {}, "Asset"), el("th", {}, "Added"))),
      el("tbody", {}, ...rows)));
}

function subfolderList(
  ctx: AppContext,
  projectId: string,
  subfolders: FolderInfo[],
): HTMLElement {
  const selection = ctx.getSelection(projectId);
  const rows = subfolders.map((sub) =>
    el("div", { class: "folder-row" },
      el("input", {
        type: "checkbox",
        checked: selection.folders.has(sub.id),
        onchange: () => {
          ctx.toggleSelection(projectId, "folder", sub.id);
          ctx.refresh();
        },
      }),
      el("a", { href: `#/folders/${encodeURIComponent(sub.id)}` }, sub.name),
    ));
  return el("div", {}, ...rows);
}

function trackingWindow(ctx: AppContext, projectId: string): HTMLElement {
  const list = el("div", { class: "events" }, loading());
  const box = el("div", { class: "tracking" },
    el("h3", {}, "Activity"), list);

  async function tick(): Promise<void> {
    const { body } = await ctx.client().request<{ events: EventRow[] }>("events", {
      params: { project_id: projectId },
      query: { limit: "20" },
    });
    if (!ctx.isCurrent()) return;
    if (body.events.length === 0) {
      list.replaceChildren(el("p", { class: "muted" }, "No activity yet."));
      return;
    }
    list.replaceChildren(...body.events.map((event) =>
      el("div", { class: "event" },
        el("span", { class: "muted" }, event.at), " ",
        el("strong", {}, event.actor_name ?? shortId(event.actor)),
        ` ${event.action} `,
        el("span", { class: "muted", title: event.target }, shortId(event.target)),
      )));
  }

  const poller = createPoller(tick, TRACKING_POLL_MS);
  poller.start();
  ctx.onCleanup(() => poller.stop());
  return box;
}
