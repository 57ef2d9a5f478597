// Fixed-interval poller with a staleness flag: one failed round marks the
// data stale (views show a badge) but polling keeps going and recovers on
// the next success.

export class Poller<T> {
  stale = false;
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;

  constructor(
    private readonly fetchFn: () => Promise<T>,
    private readonly onData: (data: T) => void,
    private readonly onStateChange: (stale: boolean) => void = () => undefined,
    private readonly intervalMs: number = 3000,
  ) {}

  start(): void {
    if (this.timer !== null) return;
    void this.tick();
    this.timer = setInterval(() => void this.tick(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  async tick(): Promise<void> {
    if (this.inFlight) return;
    this.inFlight = true;
    try {
      const data = await this.fetchFn();
      this.setStale(false);
      this.onData(data);
    } catch {
      this.setStale(true);
    } finally {
      this.inFlight = false;
    }
  }

  private setStale(value: boolean): void {
    if (this.stale !== value) {
      this.stale = value;
      this.onStateChange(value);
    }
  }
}
