import type { Session, User } from "../api.js";
import { el } from "../dom.js";
import type { AppContext } from "./context.js";
import { errorBox } from "./common.js";

export function renderRegister(ctx: AppContext): HTMLElement {
  const email = el("input", { type: "email", name: "email",
                              placeholder: "email", autocomplete: "username" });
  const displayName = el("input", { type: "text", name: "display_name",
                                    placeholder: "display name" });
  const password = el("input", { type: "password", name: "password",
                                 placeholder: "password",
                                 autocomplete: "new-password" });
  const feedback = el("div", {});
  const form = el("form", {
    onsubmit: (event) => {
      event.preventDefault();
      void submit();
    },
  },
    el("h2", {}, "Create an account"),
    el("label", {}, "Email", email),
    el("label", {}, "Display name", displayName),
    el("label", {}, "Password", password),
    el("button", { type: "submit" }, "Register"),
    feedback,
    el("p", { class: "muted" }, "Already registered? ",
       el("a", { href: "#/login" }, "Sign in")),
  );

  async function submit(): Promise<void> {
    feedback.replaceChildren();
    try {
      await ctx.client().request<User>("register", {
        body: {
          email: email.value.trim(),
          display_name: displayName.value.trim(),
          password: password.value,
        },
      });
      // registration does not start a session: sign in with the new account
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
