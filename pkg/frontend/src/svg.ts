/** Minimal SVG assembly: fixed viewport, log/linear axes, polylines. */

export interface Extent {
  min: number;
  max: number;
}

/** Map a value to pixel space; log10 scaling when `log` is set. */
export function scale(v: number, ext: Extent, pxMin: number, pxMax: number, log: boolean): number {
  const f = log
    ? (Math.log10(v) - Math.log10(ext.min)) / (Math.log10(ext.max) - Math.log10(ext.min))
    : (v - ext.min) / (ext.max - ext.min);
  return pxMin + f * (pxMax - pxMin);
}

/** Powers of ten covering the extent, for log-axis ticks. */
export function decadeTicks(ext: Extent): number[] {
  const ticks: number[] = [];
  const lo = Math.ceil(Math.log10(ext.min) - 1e-9);
  const hi = Math.floor(Math.log10(ext.max) + 1e-9);
  for (let d = lo; d <= hi; d++) ticks.push(Math.pow(10, d));
  return ticks;
}

/** Pad an extent multiplicatively (log) or additively (linear). */
export function padExtent(ext: Extent, log: boolean, frac = 0.08): Extent {
  if (log) {
    const span = Math.log10(ext.max) - Math.log10(ext.min) || 1;
    return {
      min: Math.pow(10, Math.log10(ext.min) - frac * span),
      max: Math.pow(10, Math.log10(ext.max) + frac * span),
    };
  }
  const span = ext.max - ext.min || 1;
  return { min: ext.min - frac * span, max: ext.max + frac * span };
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export class SvgDoc {
  private parts: string[] = [];
  constructor(readonly width: number, readonly height: number) {}

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, extra = ""): void {
    this.parts.push(
      `<line x1="${r2(x1)}" y1="${r2(y1)}" x2="${r2(x2)}" y2="${r2(y2)}" stroke="${stroke}" ${extra}/>`,
    );
  }

  polyline(pts: [number, number][], stroke: string, extra = ""): void {
    const s = pts.map(([x, y]) => `${r2(x)},${r2(y)}`).join(" ");
    this.parts.push(`<polyline points="${s}" fill="none" stroke="${stroke}" ${extra}/>`);
  }

  circle(x: number, y: number, rad: number, fill: string, extra = ""): void {
    this.parts.push(`<circle cx="${r2(x)}" cy="${r2(y)}" r="${rad}" fill="${fill}" ${extra}/>`);
  }

  cross(x: number, y: number, arm: number, stroke: string): void {
    this.line(x - arm, y - arm, x + arm, y + arm, stroke);
    this.line(x - arm, y + arm, x + arm, y - arm, stroke);
  }

  text(x: number, y: number, s: string, extra = ""): void {
    this.parts.push(`<text x="${r2(x)}" y="${r2(y)}" font-family="sans-serif" ${extra}>${esc(s)}</text>`);
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">`,
      `<rect width="${this.width}" height="${this.height}" fill="white"/>`,
      ...this.parts,
      "</svg>",
      "",
    ].join("\n");
  }
}

function r2(v: number): string {
  return (Math.round(v * 100) / 100).toString();
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
