// Live preview pipeline: form values -> rate-limited /preview fetch ->
// chart. The server arrays are handed to the chart untouched, so what is
// plotted is exactly what the service computed.

import type { ApiClient } from './api.js';
import { ApiError } from './api.js';
import { DensityChart } from './chart.js';
import { RateLimiter } from './debounce.js';
import type { GridPayload, ParamsJson } from './types.js';

export const PREVIEW_COLOR = 'rgb(46, 102, 166)';
export const MAX_PREVIEW_RATE_MS = 100;

export class PreviewController {
  lastGrid: GridPayload | null = null;
  private sequence = 0;

  constructor(
    private readonly client: ApiClient,
    private readonly sessionId: string,
    private readonly questionId: string,
    private readonly chart: DensityChart,
    private readonly onError: (error: ApiError | null) => void = () => undefined,
    private readonly limiter: RateLimiter = new RateLimiter(MAX_PREVIEW_RATE_MS),
    private readonly nPoints = 257,
  ) {}

  // Call with null while the form is locally invalid; the stale curve is
  // cleared rather than left lying about the current inputs.
  update(params: ParamsJson | null): void {
    if (params === null) {
      this.limiter.cancel();
      this.lastGrid = null;
      this.chart.clear();
      return;
    }
    this.limiter.schedule(() => void this.fetch(params));
  }

  private async fetch(params: ParamsJson): Promise<void> {
    const ticket = ++this.sequence;
    try {
      const grid = await this.client.fetchPreview(
        this.sessionId,
        this.questionId,
        params,
        this.nPoints,
      );
      if (ticket !== this.sequence) return; // a newer drag position won
      this.lastGrid = grid;
      this.onError(null);
      this.chart.render([
        { x: grid.x, y: grid.density, color: PREVIEW_COLOR, lineWidth: 2, fill: true },
      ]);
    } catch (error) {
      if (ticket !== this.sequence) return;
      if (error instanceof ApiError) {
        this.onError(error);
      }
    }
  }
}
