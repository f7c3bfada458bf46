/**
 * Figure renderers.  Each returns the SVG text plus a plain-text dump of the
 * plotted series; the latter backs `--data-only` and the golden-file tests.
 */

import { OverheadRow, SweepRow } from "./table.js";
import { decadeTicks, Extent, padExtent, scale, seriesColor, SvgDoc } from "./svg.js";

export interface Rendered {
  svg: string;
  data: string;
}

const W = 640;
const H = 480;
const ML = 70;
const MR = 20;
const MT = 30;
const MB = 50;

/** The reference crash-rate line: (3/4) of the depolarization rate. */
export const REFERENCE_SLOPE = 0.75;

function fmt(v: number): string {
  return v.toExponential(6);
}

function seriesKey(scheme: string, checks: number): string {
  return checks === 4 ? scheme : `${scheme} checks=${checks}`;
}

function groupSweep(rows: SweepRow[]): Map<string, SweepRow[]> {
  const groups = new Map<string, SweepRow[]>();
  for (const r of rows) {
    const key = seriesKey(r.scheme, r.checks);
    const list = groups.get(key) ?? [];
    list.push(r);
    groups.set(key, list);
  }
  for (const list of groups.values()) list.sort((a, b) => a.gamma - b.gamma);
  return groups;
}

/** Crossing of a crash-rate curve with the reference line, in log-log space. */
export function crossing(rows: SweepRow[]): number | null {
  let prev: SweepRow | null = null;
  for (const r of rows) {
    if (r.gamma <= 0) continue;
    const above = r.crashes > 0 && r.crashRate > REFERENCE_SLOPE * r.gamma;
    if (above && prev !== null) {
      const f0 = Math.log(prev.crashRate > 0 ? prev.crashRate / (REFERENCE_SLOPE * prev.gamma) : 1e-12);
      const f1 = Math.log(r.crashRate / (REFERENCE_SLOPE * r.gamma));
      const t = -f0 / (f1 - f0);
      return Math.exp(Math.log(prev.gamma) + t * (Math.log(r.gamma) - Math.log(prev.gamma)));
    }
    if (!above) prev = r;
  }
  return null;
}

function drawLogAxes(doc: SvgDoc, xExt: Extent, yExt: Extent, xLabel: string, yLabel: string): void {
  doc.line(ML, H - MB, W - MR, H - MB, "black");
  doc.line(ML, MT, ML, H - MB, "black");
  for (const t of decadeTicks(xExt)) {
    const px = scale(t, xExt, ML, W - MR, true);
    doc.line(px, H - MB, px, H - MB + 5, "black");
    doc.text(px, H - MB + 20, `1e${Math.round(Math.log10(t))}`, 'text-anchor="middle" font-size="11"');
  }
  for (const t of decadeTicks(yExt)) {
    const py = scale(t, yExt, H - MB, MT, true);
    doc.line(ML - 5, py, ML, py, "black");
    doc.text(ML - 8, py + 4, `1e${Math.round(Math.log10(t))}`, 'text-anchor="end" font-size="11"');
  }
  doc.text((ML + W - MR) / 2, H - 12, xLabel, 'text-anchor="middle" font-size="13"');
  doc.text(14, (MT + H - MB) / 2, yLabel, `text-anchor="middle" font-size="13" transform="rotate(-90 14 ${(MT + H - MB) / 2})"`);
}

/** Log-log crash rate vs gamma, one curve per scheme, slope-3/4 reference. */
export function renderCrashPlot(rows: SweepRow[]): Rendered {
  const groups = groupSweep(rows);
  const pts = rows.filter((r) => r.gamma > 0 && r.crashRate > 0);
  if (pts.length === 0) throw new Error("no positive crash-rate points to plot");
  const gammas = rows.filter((r) => r.gamma > 0).map((r) => r.gamma);
  const xExt = padExtent({ min: Math.min(...gammas), max: Math.max(...gammas) }, true);
  const rates = pts.flatMap((r) => [r.crashRate, r.ciHigh, REFERENCE_SLOPE * r.gamma]).filter((v) => v > 0);
  const lows = pts.map((r) => (r.ciLow > 0 ? r.ciLow : r.crashRate));
  const yExt = padExtent({ min: Math.min(...lows), max: Math.max(...rates) }, true);

  const doc = new SvgDoc(W, H);
  drawLogAxes(doc, xExt, yExt, "gamma", "crash rate per round");
  const data: string[] = ["plot crash"];

  // reference line through the axis range; by construction it passes
  // through (1e-2, 7.5e-3)
  const refPts: [number, number][] = [xExt.min, xExt.max].map((g) => [
    scale(g, xExt, ML, W - MR, true),
    scale(REFERENCE_SLOPE * g, yExt, H - MB, MT, true),
  ]);
  doc.polyline(refPts, "#777", 'stroke-dasharray="6 4"');
  data.push("series reference slope-3/4");
  data.push(`${fmt(xExt.min)} ${fmt(REFERENCE_SLOPE * xExt.min)}`);
  data.push(`${fmt(xExt.max)} ${fmt(REFERENCE_SLOPE * xExt.max)}`);

  let si = 0;
  for (const [key, list] of groups) {
    const color = seriesColor(si++);
    const line: [number, number][] = [];
    data.push(`series ${key}`);
    for (const r of list) {
      if (r.gamma <= 0) continue;
      data.push(`${fmt(r.gamma)} ${fmt(r.crashRate)} ${fmt(r.ciLow)} ${fmt(r.ciHigh)}`);
      if (r.crashRate <= 0) continue;
      const px = scale(r.gamma, xExt, ML, W - MR, true);
      const py = scale(r.crashRate, yExt, H - MB, MT, true);
      line.push([px, py]);
      doc.circle(px, py, 3, color);
      if (r.ciLow > 0) {
        const yl = scale(r.ciLow, yExt, H - MB, MT, true);
        const yh = scale(r.ciHigh, yExt, H - MB, MT, true);
        doc.line(px, yl, px, yh, color);
      }
    }
    if (line.length > 1) doc.polyline(line, color);
    const gs = crossing(list);
    if (gs !== null) {
      data.push(`crossing ${key} ${fmt(gs)}`);
      const px = scale(gs, xExt, ML, W - MR, true);
      const py = scale(REFERENCE_SLOPE * gs, yExt, H - MB, MT, true);
      doc.cross(px, py, 5, color);
      doc.text(px + 8, py - 8, `${key}: ${gs.toExponential(2)}`, `font-size="11" fill="${color}"`);
    }
    doc.text(W - MR - 6, MT + 16 * si, key, `text-anchor="end" font-size="12" fill="${color}"`);
  }
  return { svg: doc.render(), data: data.join("\n") + "\n" };
}

/** Semi-log overhead vs gamma; budget-exceeded points drawn as crosses. */
export function renderOverheadPlot(rows: OverheadRow[]): Rendered {
  if (rows.length === 0) throw new Error("empty overhead table");
  const groups = new Map<string, OverheadRow[]>();
  for (const r of rows) {
    const key = seriesKey(r.scheme, r.checks);
    const list = groups.get(key) ?? [];
    list.push(r);
    groups.set(key, list);
  }
  for (const list of groups.values()) list.sort((a, b) => a.gamma - b.gamma);

  const xExt = padExtent(
    { min: Math.min(...rows.map((r) => r.gamma)), max: Math.max(...rows.map((r) => r.gamma)) },
    false,
  );
  const ovs = rows.filter((r) => r.overhead !== null).map((r) => r.overhead as number);
  if (ovs.length === 0) throw new Error("no finite overhead points to plot");
  const yExt = padExtent({ min: Math.min(...ovs, 1), max: Math.max(...ovs) }, true);

  const doc = new SvgDoc(W, H);
  doc.line(ML, H - MB, W - MR, H - MB, "black");
  doc.line(ML, MT, ML, H - MB, "black");
  for (let i = 0; i <= 4; i++) {
    const g = xExt.min + (i / 4) * (xExt.max - xExt.min);
    const px = scale(g, xExt, ML, W - MR, false);
    doc.line(px, H - MB, px, H - MB + 5, "black");
    doc.text(px, H - MB + 20, g.toPrecision(3), 'text-anchor="middle" font-size="11"');
  }
  for (const t of decadeTicks(yExt)) {
    const py = scale(t, yExt, H - MB, MT, true);
    doc.line(ML - 5, py, ML, py, "black");
    doc.text(ML - 8, py + 4, `1e${Math.round(Math.log10(t))}`, 'text-anchor="end" font-size="11"');
  }
  doc.text((ML + W - MR) / 2, H - 12, "gamma", 'text-anchor="middle" font-size="13"');
  doc.text(14, (MT + H - MB) / 2, "time units per ancilla", `text-anchor="middle" font-size="13" transform="rotate(-90 14 ${(MT + H - MB) / 2})"`);

  const data: string[] = ["plot overhead"];
  let si = 0;
  for (const [key, list] of groups) {
    const color = seriesColor(si++);
    const line: [number, number][] = [];
    data.push(`series ${key}`);
    for (const r of list) {
      data.push(`${fmt(r.gamma)} ${r.overhead === null ? "exceeded" : fmt(r.overhead)}`);
      const px = scale(r.gamma, xExt, ML, W - MR, false);
      if (r.overhead === null) {
        doc.cross(px, MT + 10, 5, color);
        continue;
      }
      const py = scale(r.overhead, yExt, H - MB, MT, true);
      line.push([px, py]);
      doc.circle(px, py, 3, color);
    }
    if (line.length > 1) doc.polyline(line, color);
    doc.text(W - MR - 6, MT + 16 * si, key, `text-anchor="end" font-size="12" fill="${color}"`);
  }
  return { svg: doc.render(), data: data.join("\n") + "\n" };
}

/** Two log-log panels: physical and logical delivered-ancilla error rates. */
export function renderAncillaPlot(rows: SweepRow[]): Rendered {
  const withStats = rows.filter((r) => r.hasAncilla);
  if (withStats.length === 0) {
    throw new Error('missing column "anc_delivered" (run crash-rate with --ancilla-stats)');
  }
  const groups = groupSweep(withStats);
  const pts = withStats.filter((r) => r.gamma > 0);
  if (pts.length === 0) throw new Error("no positive-gamma ancilla points");
  const xExt = padExtent({ min: Math.min(...pts.map((r) => r.gamma)), max: Math.max(...pts.map((r) => r.gamma)) }, true);
  const panelH = Math.floor(H / 2);
  const doc = new SvgDoc(W, H);
  const data: string[] = ["plot ancilla"];

  const panels: ["physical" | "logical", number][] = [["physical", 0], ["logical", 1]];
  for (const [kind, pi] of panels) {
    const top = MT + pi * panelH;
    const bot = top + panelH - MB;
    const vals = pts.map((r) => (kind === "physical" ? r.ancPhysRate : r.ancLogRate)).filter((v) => v > 0);
    const yExt = padExtent(
      { min: vals.length ? Math.min(...vals) : 1e-9, max: vals.length ? Math.max(...vals) : 1 },
      true,
    );
    doc.line(ML, bot, W - MR, bot, "black");
    doc.line(ML, top, ML, bot, "black");
    for (const t of decadeTicks(yExt)) {
      const py = scale(t, yExt, bot, top, true);
      doc.line(ML - 5, py, ML, py, "black");
      doc.text(ML - 8, py + 4, `1e${Math.round(Math.log10(t))}`, 'text-anchor="end" font-size="11"');
    }
    for (const t of decadeTicks(xExt)) {
      const px = scale(t, xExt, ML, W - MR, true);
      doc.line(px, bot, px, bot + 5, "black");
      doc.text(px, bot + 18, `1e${Math.round(Math.log10(t))}`, 'text-anchor="middle" font-size="11"');
    }
    doc.text(ML + 6, top + 14, `${kind} error rate per delivered ancilla`, 'font-size="12"');
    let si = 0;
    for (const [key, list] of groups) {
      const color = seriesColor(si++);
      const line: [number, number][] = [];
      data.push(`series ${key} ${kind}`);
      for (const r of list) {
        if (r.gamma <= 0) continue;
        const v = kind === "physical" ? r.ancPhysRate : r.ancLogRate;
        data.push(`${fmt(r.gamma)} ${fmt(v)}`);
        if (v <= 0) continue;
        const px = scale(r.gamma, xExt, ML, W - MR, true);
        const py = scale(v, yExt, bot, top, true);
        line.push([px, py]);
        doc.circle(px, py, 3, color);
      }
      if (line.length > 1) doc.polyline(line, color);
    }
  }
  doc.text((ML + W - MR) / 2, H - 12, "gamma", 'text-anchor="middle" font-size="13"');
  return { svg: doc.render(), data: data.join("\n") + "\n" };
}
