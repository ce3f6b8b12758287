/** Download selection state.
 *
 * The selection may only reference the project currently being viewed, so
 * every operation is keyed by project id and touching a different project
 * starts from an empty selection.
 */
export function emptySelection(projectId) {
    return { projectId, folders: new Set(), artifacts: new Set() };
}
export function selectionIsEmpty(selection) {
    return selection.folders.size === 0 && selection.artifacts.size === 0;
}
export function selectionFor(selection, projectId) {
    if (selection === null || selection.projectId !== projectId) {
        return emptySelection(projectId);
    }
    return selection;
}
export function toggleSelection(selection, projectId, kind, id) {
    const current = selectionFor(selection, projectId);
    const next = {
        projectId,
        folders: new Set(current.folders),
        artifacts: new Set(current.artifacts),
    };
    const bucket = kind === "folder" ? next.folders : next.artifacts;
    if (bucket.has(id)) {
        bucket.delete(id);
    }
    else {
        bucket.add(id);
    }
    return next;
}
