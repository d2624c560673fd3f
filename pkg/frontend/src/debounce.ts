/** Debounced, self-cancelling request scheduling. */

/** Calls `fn` once `ms` of quiet has passed; earlier pending calls drop. */
export function debounce<A extends unknown[]>(fn: (...args: A) => void, ms: number): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, ms);
  };
}

/** Hands out AbortSignals, aborting the previous one on each new request. */
export class RequestGate {
  private controller: AbortController | null = null;
  private seq = 0;

  /** Abort any in-flight request and open a new one. */
  begin(): { signal: AbortSignal; token: number } {
    this.controller?.abort();
    this.controller = new AbortController();
    this.seq += 1;
    return { signal: this.controller.signal, token: this.seq };
  }

  /** True if `token` still identifies the newest request. */
  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}
