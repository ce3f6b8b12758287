/** What every view gets from the shell. */

import type { Client, Session } from "../api.js";
import type { DownloadSelection } from "../state.js";

export interface AppContext {
  client(): Client;
  session(): Session | null;
  setSession(session: Session | null): void;
  /** False once the user has navigated away; stale responses must not render. */
  isCurrent(): boolean;
  navigate(hash: string): void;
  /** Re-render the current route (after a successful mutation). */
  refresh(): void;
  getSelection(projectId: string): DownloadSelection;
  toggleSelection(projectId: string, kind: "folder" | "artifact", id: string): void;
  onCleanup(fn: () => void): void;
}

export function requireSession(ctx: AppContext): Session {
  const session = ctx.session();
  if (session === null) throw new Error("view requires a session");
  return session;
}
