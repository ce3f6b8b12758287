/** Download selection state.
 *
 * The selection may only reference the project currently being viewed, so
 * every operation is keyed by project id and touching a different project
 * starts from an empty selection.
 */

export interface DownloadSelection {
  projectId: string;
  folders: Set<string>;
  artifacts: Set<string>;
}

export function emptySelection(projectId: string): DownloadSelection {
  return { projectId, folders: new Set(), artifacts: new Set() };
}

export function selectionIsEmpty(selection: DownloadSelection): boolean {
  return selection.folders.size === 0 && selection.artifacts.size === 0;
}

export function selectionFor(
  selection: DownloadSelection | null,
  projectId: string,
): DownloadSelection {
  if (selection === null || selection.projectId !== projectId) {
    return emptySelection(projectId);
  }
  return selection;
}

export function toggleSelection(
  selection: DownloadSelection | null,
  projectId: string,
  kind: "folder" | "artifact",
  id: string,
): DownloadSelection {
  const current = selectionFor(selection, projectId);
  const next: DownloadSelection = {
    projectId,
    folders: new Set(current.folders),
    artifacts: new Set(current.artifacts),
  };
  const bucket = kind === "folder" ? next.folders : next.artifacts;
  if (bucket.has(id)) {
    bucket.delete(id);
  } else {
    bucket.add(id);
  }
  return next;
}
