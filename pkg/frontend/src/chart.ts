// Canvas density chart. Strictly presentational: the series arrays are
// rendered exactly as received from the server (only affine pixel mapping
// happens here), and the last rendered series stay inspectable so tests can
// assert the no-client-math contract.

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label?: string;
  lineWidth?: number;
  fill?: boolean;
}

const MARGIN = { left: 44, right: 12, top: 10, bottom: 26 };
const AXIS_COLOR = '#8a8a8a';
const GRID_COLOR = 'rgba(0, 0, 0, 0.08)';

export class DensityChart {
  lastSeries: Series[] = [];
  lastMarkers: number[] = [];

  constructor(private readonly canvas: HTMLCanvasElement) {}

  clear(): void {
    this.lastSeries = [];
    this.lastMarkers = [];
    const ctx = this.canvas.getContext('2d');
    if (ctx) ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
  }

  render(series: Series[], markers: number[] = []): void {
    this.lastSeries = series;
    this.lastMarkers = markers;
    const ctx = this.canvas.getContext('2d');
    if (!ctx) return;

    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    const plotW = width - MARGIN.left - MARGIN.right;
    const plotH = height - MARGIN.top - MARGIN.bottom;
    const points = series.filter((s) => s.x.length > 1);
    if (points.length === 0 || plotW <= 0 || plotH <= 0) return;

    let xMin = Infinity;
    let xMax = -Infinity;
    let yMax = 0;
    for (const s of points) {
      xMin = Math.min(xMin, s.x[0]!);
      xMax = Math.max(xMax, s.x[s.x.length - 1]!);
      for (const v of s.y) yMax = Math.max(yMax, v);
    }
    if (!(xMax > xMin)) return;
    if (yMax <= 0) yMax = 1;

    const toPx = (x: number): number => MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
    const toPy = (y: number): number => MARGIN.top + (1 - y / (yMax * 1.08)) * plotH;

    ctx.strokeStyle = GRID_COLOR;
    ctx.lineWidth = 1;
    for (let i = 1; i < 4; i++) {
      const gy = MARGIN.top + (plotH * i) / 4;
      ctx.beginPath();
      ctx.moveTo(MARGIN.left, gy);
      ctx.lineTo(width - MARGIN.right, gy);
      ctx.stroke();
    }

    ctx.strokeStyle = AXIS_COLOR;
    ctx.beginPath();
    ctx.moveTo(MARGIN.left, MARGIN.top);
    ctx.lineTo(MARGIN.left, height - MARGIN.bottom);
    ctx.lineTo(width - MARGIN.right, height - MARGIN.bottom);
    ctx.stroke();

    ctx.fillStyle = AXIS_COLOR;
    ctx.font = '11px system-ui, sans-serif';
    ctx.textAlign = 'center';
    ctx.fillText(formatTick(xMin), MARGIN.left, height - 8);
    ctx.fillText(formatTick(xMax), width - MARGIN.right, height - 8);
    ctx.textAlign = 'right';
    ctx.fillText(formatTick(yMax), MARGIN.left - 6, MARGIN.top + 10);
    ctx.fillText('0', MARGIN.left - 6, height - MARGIN.bottom);

    for (const marker of markers) {
      ctx.strokeStyle = 'rgba(200, 80, 40, 0.55)';
      ctx.setLineDash([4, 4]);
      ctx.beginPath();
      ctx.moveTo(toPx(marker), MARGIN.top);
      ctx.lineTo(toPx(marker), height - MARGIN.bottom);
      ctx.stroke();
      ctx.setLineDash([]);
    }

    for (const s of points) {
      ctx.strokeStyle = s.color;
      ctx.lineWidth = s.lineWidth ?? 1.8;
      ctx.beginPath();
      ctx.moveTo(toPx(s.x[0]!), toPy(s.y[0]!));
      for (let i = 1; i < s.x.length; i++) {
        ctx.lineTo(toPx(s.x[i]!), toPy(s.y[i]!));
      }
      ctx.stroke();
      if (s.fill) {
        ctx.lineTo(toPx(s.x[s.x.length - 1]!), toPy(0));
        ctx.lineTo(toPx(s.x[0]!), toPy(0));
        ctx.closePath();
        ctx.fillStyle = s.color.replace(')', ', 0.12)').replace('rgb', 'rgba');
        ctx.fill();
      }
    }
  }
}

function formatTick(value: number): string {
  if (value === 0) return '0';
  const magnitude = Math.abs(value);
  if (magnitude >= 100) return value.toFixed(0);
  if (magnitude >= 1) return String(Math.round(value * 100) / 100);
  return value.toPrecision(2);
}
