/** Which project controls a viewer gets, and score formatting. */

import type { Score } from "./api.js";

export interface ProjectControls {
  showCopy: boolean;
  showRate: boolean;
}

export function projectControls(
  viewerId: string,
  ownerId: string,
  eligible: boolean,
): ProjectControls {
  return {
    // you cannot copy your own project, so the button would only taunt
    showCopy: viewerId !== ownerId,
    showRate: eligible,
  };
}

export function formatScore(score: Score): string {
  const net = score.net > 0 ? `+${score.net}` : `${score.net}`;
  return `▲${score.ups} ▼${score.downs} (net ${net})`;
}
