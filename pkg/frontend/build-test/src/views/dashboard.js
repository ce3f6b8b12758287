import { el } from "../dom.js";
import { requireSession } from "./context.js";
import { errorBox, loading, projectLink, tagList, visibilityBadge } from "./common.js";
export async function renderDashboard(ctx) {
    requireSession(ctx);
    const root = el("div", {}, el("h2", {}, "Your projects"), loading());
    try {
        const { body: projects } = await ctx.client().request("listProjects", { query: { mine: "true" } });
        if (!ctx.isCurrent())
            return root;
        root.replaceChildren(el("div", { class: "page-head" }, el("h2", {}, "Your projects"), createForm(ctx)), projects.length === 0
            ? el("p", { class: "muted" }, "Nothing here yet. Create a project to start sharing.")
            : projectTable(projects));
    }
    catch (err) {
        if (ctx.isCurrent())
            root.replaceChildren(el("h2", {}, "Your projects"), errorBox(err));
    }
    return root;
}
function projectTable(projects) {
    const rows = projects.map((project) => el("tr", {}, el("td", {}, projectLink(project)), el("td", {}, visibilityBadge(project.visibility)), el("td", {}, `v${project.version}`), el("td", {}, tagList(project.tags)), el("td", { class: "muted" }, project.updated_at)));
    return el("div", { class: "table-wrap" }, el("table", {}, el("thead", {}, el("tr", {}, el("th", {}, "Name"), el("th", {}, "Visibility"), el("th", {}, "Version"), el("th", {}, "Tags"), el("th", {}, "Updated"))), el("tbody", {}, ...rows)));
}
function createForm(ctx) {
    const name = el("input", { type: "text", name: "name", placeholder: "project name" });
    const visibility = el("select", { name: "visibility" }, el("option", { value: "Public" }, "Public"), el("option", { value: "Private" }, "Private"));
    const feedback = el("span", {});
    return el("form", {
        class: "inline-form",
        onsubmit: (event) => {
            event.preventDefault();
            void submit();
        },
    }, name, visibility, el("button", { type: "submit" }, "Create"), feedback);
    async function submit() {
        feedback.replaceChildren();
        try {
            const { body } = await ctx.client().request("createProject", {
                body: { name: name.value.trim(), visibility: visibility.value },
            });
            if (!ctx.isCurrent())
                return;
            ctx.navigate(`#/projects/${encodeURIComponent(body.id)}`);
        }
        catch (err) {
            if (ctx.isCurrent())
                feedback.replaceChildren(errorBox(err));
        }
    }
}
