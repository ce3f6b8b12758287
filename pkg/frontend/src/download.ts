/** Build the package request for a checkbox selection. */

import { endpointPath } from "./api.js";
import type { DownloadSelection } from "./state.js";
import { selectionIsEmpty } from "./state.js";

function sortedIds(ids: Set<string>): string[] {
  return [...ids].sort();
}

/** Raw query parameters for the selection, or null when nothing is selected.
 * Values are unencoded comma-joined ids; the transport encodes them once. */
export function downloadQuery(
  selection: DownloadSelection,
): Record<string, string> | null {
  if (selectionIsEmpty(selection)) return null;
  const query: Record<string, string> = {};
  if (selection.folders.size > 0) {
    query["folders"] = sortedIds(selection.folders).join(",");
  }
  if (selection.artifacts.size > 0) {
    query["artifacts"] = sortedIds(selection.artifacts).join(",");
  }
  return query;
}

/** Package URL for the selection, or null when nothing is selected
 * (the Download button stays disabled and no request is made). */
export function buildDownloadRequest(
  projectId: string,
  selection: DownloadSelection,
): string | null {
  if (selection.projectId !== projectId) return null;
  const query = downloadQuery(selection);
  if (query === null) return null;
  const pairs = Object.entries(query).map(([key, value]) => {
    const encoded = value.split(",").map(encodeURIComponent).join(",");
    return `${key}=${encoded}`;
  });
  return `${endpointPath("packageZip", { project_id: projectId })}?${pairs.join("&")}`;
}
