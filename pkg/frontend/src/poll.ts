/** Polling and stale-response plumbing for the tracking window. */

export const TRACKING_POLL_MS = 10_000;

export interface TimerApi {
  set(fn: () => void, ms: number): unknown;
  clear(handle: unknown): void;
}

const realTimers: TimerApi = {
  set: (fn, ms) => setInterval(fn, ms),
  clear: (handle) => clearInterval(handle as Parameters<typeof clearInterval>[0]),
};

export interface Poller {
  start(): void;
  stop(): void;
  readonly running: boolean;
}

/** Run `tick` immediately on start and then every `intervalMs`, with at most
 * one tick in flight: a slow response is never overlapped by the next one. */
export function createPoller(
  tick: () => Promise<unknown>,
  intervalMs: number = TRACKING_POLL_MS,
  timers: TimerApi = realTimers,
): Poller {
  let handle: unknown = null;
  let inFlight = false;

  const run = (): void => {
    if (inFlight) return;
    inFlight = true;
    void tick()
      .catch(() => undefined)
      .finally(() => {
        inFlight = false;
      });
  };

  return {
    start() {
      if (handle !== null) return;
      run();
      handle = timers.set(run, intervalMs);
    },
    stop() {
      if (handle !== null) timers.clear(handle);
      handle = null;
    },
    get running() {
      return handle !== null;
    },
  };
}

export interface Gatekeeper {
  next(): number;
  isCurrent(token: number): boolean;
}

/** Monotonic token source: a response fetched for an older token is stale
 * (the route moved on) and must not touch the page. */
export function createGatekeeper(): Gatekeeper {
  let current = 0;
  return {
    next() {
      current += 1;
      return current;
    },
    isCurrent(token: number) {
      return token === current;
    },
  };
}
