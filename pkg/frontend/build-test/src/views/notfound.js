import { el } from "../dom.js";
export function renderNotFound(path) {
    return el("div", { class: "card narrow" }, el("h2", {}, "Not found"), el("p", {}, `There is nothing at ${path}.`), el("p", {}, el("a", { href: "#/dashboard" }, "Back to your dashboard")));
}
