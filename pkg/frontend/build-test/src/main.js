/** Application shell: session, navigation, and route rendering.
 *
 * Rendering is a pure function of server state plus the current route; every
 * mutation re-fetches rather than patching the page locally.
 */
import { Client } from "./api.js";
import { el } from "./dom.js";
import { createGatekeeper } from "./poll.js";
import { parseRoute } from "./routes.js";
import { selectionFor, toggleSelection } from "./state.js";
import { renderBrowse } from "./views/browse.js";
import { renderDashboard } from "./views/dashboard.js";
import { renderFolder } from "./views/folder.js";
import { renderLogin } from "./views/login.js";
import { renderNotFound } from "./views/notfound.js";
import { renderProject } from "./views/project.js";
import { renderRegister } from "./views/register.js";
import { renderSearch } from "./views/search.js";
const SESSION_KEY = "ran.session";
const API_BASE = window.RAN_API_BASE ?? "";
function loadSession() {
    const raw = sessionStorage.getItem(SESSION_KEY);
    if (raw === null)
        return null;
    try {
        return JSON.parse(raw);
    }
    catch {
        sessionStorage.removeItem(SESSION_KEY);
        return null;
    }
}
function storeSession(session) {
    if (session === null) {
        sessionStorage.removeItem(SESSION_KEY);
    }
    else {
        sessionStorage.setItem(SESSION_KEY, JSON.stringify(session));
    }
}
let session = loadSession();
let selection = null;
const gate = createGatekeeper();
// teardown hooks (poller stops) for the view currently on screen
let activeCleanups = [];
function expireSession() {
    session = null;
    storeSession(null);
    location.hash = "#/login";
}
function makeContext(token, cleanups) {
    return {
        client: () => new Client(API_BASE, session?.token ?? null, expireSession),
        session: () => session,
        setSession(next) {
            session = next;
            storeSession(next);
        },
        isCurrent: () => gate.isCurrent(token),
        navigate(hash) {
            if (location.hash === hash) {
                void renderRoute();
            }
            else {
                location.hash = hash;
            }
        },
        refresh: () => void renderRoute(),
        getSelection: (projectId) => selectionFor(selection, projectId),
        toggleSelection(projectId, kind, id) {
            selection = toggleSelection(selection, projectId, kind, id);
        },
        onCleanup(fn) {
            cleanups.push(fn);
        },
    };
}
function navBar(ctx) {
    const user = ctx.session()?.user ?? null;
    const search = el("input", { type: "search", name: "q",
        placeholder: "search projects and assets" });
    const form = el("form", {
        class: "nav-search",
        onsubmit: (event) => {
            event.preventDefault();
            const q = search.value.trim();
            if (q !== "")
                ctx.navigate(`#/search?${new URLSearchParams({ q })}`);
        },
    }, search);
    const right = user === null
        ? el("span", {})
        : el("span", { class: "nav-user" }, el("span", { class: "muted" }, user.display_name), el("button", {
            type: "button",
            onclick: () => void signOut(),
        }, "Sign out"));
    return el("nav", {}, el("a", { class: "brand", href: "#/dashboard" }, "ran"), user !== null ? el("a", { href: "#/dashboard" }, "Dashboard") : null, user !== null ? el("a", { href: "#/browse" }, "Browse") : null, user !== null ? form : null, right);
    async function signOut() {
        try {
            await ctx.client().request("logout", {});
        }
        catch {
            // the local session goes away even if the server call fails
        }
        ctx.setSession(null);
        ctx.navigate("#/login");
    }
}
async function renderRoute() {
    const token = gate.next();
    for (const fn of activeCleanups)
        fn();
    activeCleanups = [];
    const route = parseRoute(location.hash);
    const authed = session !== null;
    if (!authed && route.view !== "login" && route.view !== "register") {
        location.hash = "#/login";
        return;
    }
    if (authed && (route.view === "login" || route.view === "register")) {
        location.hash = "#/dashboard";
        return;
    }
    const cleanups = [];
    const ctx = makeContext(token, cleanups);
    let view;
    try {
        switch (route.view) {
            case "login":
                view = renderLogin(ctx);
                break;
            case "register":
                view = renderRegister(ctx);
                break;
            case "dashboard":
                view = await renderDashboard(ctx);
                break;
            case "browse":
                view = await renderBrowse(ctx);
                break;
            case "search":
                view = await renderSearch(ctx, route.query);
                break;
            case "project":
                view = await renderProject(ctx, route.id);
                break;
            case "folder":
                view = await renderFolder(ctx, route.id);
                break;
            case "notfound":
                view = renderNotFound(route.path);
                break;
        }
    }
    catch (err) {
        view = el("div", { class: "error" }, String(err));
    }
    if (!gate.isCurrent(token)) {
        // this render lost the race and never mounts; stop anything it started
        for (const fn of cleanups)
            fn();
        return;
    }
    activeCleanups = cleanups;
    const app = document.getElementById("app");
    if (app === null)
        return;
    app.replaceChildren(navBar(ctx), el("main", {}, view));
}
window.addEventListener("hashchange", () => void renderRoute());
void renderRoute();
