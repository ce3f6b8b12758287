/** Hash-based routing: `#/projects/abc` keeps deep links working from a
 * plain static file server (no rewrite rules needed). */

export type Route =
  | { view: "login" }
  | { view: "register" }
  | { view: "dashboard" }
  | { view: "browse" }
  | { view: "search"; query: string }
  | { view: "project"; id: string }
  | { view: "folder"; id: string }
  | { view: "notfound"; path: string };

export function parseRoute(fragment: string): Route {
  const raw = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  const queryStart = raw.indexOf("?");
  const path = queryStart === -1 ? raw : raw.slice(0, queryStart);
  const queryText = queryStart === -1 ? "" : raw.slice(queryStart + 1);

  if (path === "" || path === "/" || path === "/dashboard") {
    return { view: "dashboard" };
  }
  if (path === "/login") return { view: "login" };
  if (path === "/register") return { view: "register" };
  if (path === "/browse") return { view: "browse" };
  if (path === "/search") {
    const query = new URLSearchParams(queryText).get("q") ?? "";
    return { view: "search", query };
  }
  const project = path.match(/^\/projects\/([^/]+)$/);
  if (project?.[1]) return { view: "project", id: decodeURIComponent(project[1]) };
  const folder = path.match(/^\/folders\/([^/]+)$/);
  if (folder?.[1]) return { view: "folder", id: decodeURIComponent(folder[1]) };
  return { view: "notfound", path: raw };
}

export function routeHash(route: Route): string {
  switch (route.view) {
    case "login":
      return "#/login";
    case "register":
      return "#/register";
    case "dashboard":
      return "#/dashboard";
    case "browse":
      return "#/browse";
    case "search":
      return `#/search?${new URLSearchParams({ q: route.query })}`;
    case "project":
      return `#/projects/${encodeURIComponent(route.id)}`;
    case "folder":
      return `#/folders/${encodeURIComponent(route.id)}`;
    case "notfound":
      return `#${route.path}`;
  }
}
