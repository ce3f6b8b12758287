import type { Session } from "../api.js";
import { el } from "../dom.js";
import type { AppContext } from "./context.js";
import { errorBox } from "./common.js";

export function renderLogin(ctx: AppContext): HTMLElement {
  const email = el("input", { type: "email", name: "email",
                              placeholder: "email", autocomplete: "username" });
  const password = el("input", { type: "password", name: "password",
                                 placeholder: "password",
                                 autocomplete: "current-password" });
  const feedback = el("div", {});
  const form = el("form", {
    onsubmit: (event) => {
      event.preventDefault();
      void submit();
    },
  },
    el("h2", {}, "Sign in"),
    el("label", {}, "Email", email),
    el("label", {}, "Password", password),
    el("button", { type: "submit" }, "Sign in"),
    feedback,
    el("p", { class: "muted" }, "No account yet? ",
       el("a", { href: "#/register" }, "Register")),
  );

  async function submit(): Promise<void> {
    feedback.replaceChildren();
    try {
      const { body } = await ctx.client().request<Session>("login", {
        body: { email: email.value.trim(), password: password.value },
      });
      if (!ctx.isCurrent()) return;
      ctx.setSession(body);
      ctx.navigate("#/dashboard");
    } catch (err) {
      if (ctx.isCurrent()) feedback.replaceChildren(errorBox(err));
    }
  }

  return el("div", { class: "card narrow" }, form);
}
