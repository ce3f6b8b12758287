/** Polling and stale-response plumbing for the tracking window. */
export const TRACKING_POLL_MS = 10_000;
const realTimers = {
    set: (fn, ms) => setInterval(fn, ms),
    clear: (handle) => clearInterval(handle),
};
/** Run `tick` immediately on start and then every `intervalMs`, with at most
 * one tick in flight: a slow response is never overlapped by the next one. */
export function createPoller(tick, intervalMs = TRACKING_POLL_MS, timers = realTimers) {
    let handle = null;
    let inFlight = false;
    const run = () => {
        if (inFlight)
            return;
        inFlight = true;
        void tick()
            .catch(() => undefined)
            .finally(() => {
            inFlight = false;
        });
    };
    return {
        start() {
            if (handle !== null)
                return;
            run();
            handle = timers.set(run, intervalMs);
        },
        stop() {
            if (handle !== null)
                timers.clear(handle);
            handle = null;
        },
        get running() {
            return handle !== null;
        },
    };
}
/** Monotonic token source: a response fetched for an older token is stale
 * (the route moved on) and must not touch the page. */
export function createGatekeeper() {
    let current = 0;
    return {
        next() {
            current += 1;
            return current;
        },
        isCurrent(token) {
            return token === current;
        },
    };
}
