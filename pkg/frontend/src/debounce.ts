// Trailing-edge rate limiter for slider-driven requests: the first call in
// a quiet period fires immediately, later calls collapse onto one trailing
// invocation per interval, so a drag never exceeds 1000/minIntervalMs
// requests per second.

export class RateLimiter {
  private lastRun = -Infinity;
  private pending: (() => void) | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly minIntervalMs: number,
    private readonly now: () => number = () => Date.now(),
  ) {}

  schedule(fn: () => void): void {
    const elapsed = this.now() - this.lastRun;
    if (elapsed >= this.minIntervalMs && this.timer === null) {
      this.lastRun = this.now();
      fn();
      return;
    }
    this.pending = fn;
    if (this.timer === null) {
      const wait = Math.max(0, this.minIntervalMs - elapsed);
      this.timer = setTimeout(() => this.flush(), wait);
    }
  }

  private flush(): void {
    this.timer = null;
    const fn = this.pending;
    this.pending = null;
    if (fn !== null) {
      this.lastRun = this.now();
      fn();
    }
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }
}
