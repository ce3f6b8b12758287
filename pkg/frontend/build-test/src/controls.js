/** Which project controls a viewer gets, and score formatting. */
export function projectControls(viewerId, ownerId, eligible) {
    return {
        // you cannot copy your own project, so the button would only taunt
        showCopy: viewerId !== ownerId,
        showRate: eligible,
    };
}
export function formatScore(score) {
    const net = score.net > 0 ? `+${score.net}` : `${score.net}`;
    return `▲${score.ups} ▼${score.downs} (net ${net})`;
}
