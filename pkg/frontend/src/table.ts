/**
 * CSV ingestion for the simulator's result tables.
 *
 * Two schemas are understood: sweep output (crash-rate / threshold / ideal
 * subcommands, optionally with the ancilla-stats columns appended) and
 * overhead output.  Rows sharing (gamma, scheme, checks) are merged by
 * count-weighted pooling so multiple runs can be fed to one plot.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export const SWEEP_COLUMNS = [
  "gamma", "scheme", "checks", "rounds", "crashes", "crash_rate",
  "ci_low", "ci_high", "mean_time_units", "rejections_l1", "rejections_l2",
  "aborts", "xz_correlation", "seed",
] as const;

export const ANCILLA_COLUMNS = [
  "anc_delivered", "anc_phys_rate", "anc_log_errors", "anc_log_rate",
] as const;

export const OVERHEAD_COLUMNS = [
  "gamma", "scheme", "checks", "delivered", "attempts", "mean_time_units",
  "overhead", "exceeds_budget", "seed",
] as const;

export interface SweepRow {
  gamma: number;
  scheme: string;
  checks: number;
  rounds: number;
  crashes: number;
  crashRate: number;
  ciLow: number;
  ciHigh: number;
  meanTimeUnits: number;
  ancDelivered: number;
  ancPhysRate: number;
  ancLogErrors: number;
  ancLogRate: number;
  hasAncilla: boolean;
}

export interface OverheadRow {
  gamma: number;
  scheme: string;
  checks: number;
  delivered: number;
  attempts: number;
  overhead: number | null;
  exceedsBudget: boolean;
}

export class SchemaError extends Error {}

function parseCsv(path: string): Record<string, string>[] {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`${path}: ${parsed.errors[0].message}`);
  }
  return parsed.data;
}

function requireColumns(path: string, row: Record<string, string>, cols: readonly string[]): void {
  for (const c of cols) {
    if (!(c in row)) {
      throw new SchemaError(`${path}: missing column "${c}"`);
    }
  }
}

function num(v: string): number {
  const x = Number(v);
  if (!Number.isFinite(x)) throw new SchemaError(`not a number: "${v}"`);
  return x;
}

/** Wilson 95% interval, matching the simulator's convention. */
export function wilson(k: number, n: number): [number, number] {
  if (n === 0) return [0, 1];
  const z = 1.959963984540054;
  const p = k / n;
  const z2 = (z * z) / n;
  const center = (p + z2 / 2) / (1 + z2);
  const half = (z * Math.sqrt(p * (1 - p) / n + z2 / (4 * n))) / (1 + z2);
  const lo = k === 0 ? 0 : Math.max(0, center - half);
  const hi = k === n ? 1 : Math.min(1, center + half);
  return [lo, hi];
}

function poolKey(gamma: number, scheme: string, checks: number): string {
  return `${gamma}|${scheme}|${checks}`;
}

/** Read one or more sweep CSVs and pool duplicate (gamma, scheme, checks) rows. */
export function loadSweep(paths: string[]): SweepRow[] {
  const pools = new Map<string, SweepRow>();
  for (const path of paths) {
    const rows = parseCsv(path);
    if (rows.length === 0) throw new SchemaError(`${path}: empty table`);
    requireColumns(path, rows[0], SWEEP_COLUMNS);
    const hasAncilla = ANCILLA_COLUMNS.every((c) => c in rows[0]);
    for (const r of rows) {
      const row: SweepRow = {
        gamma: num(r.gamma),
        scheme: r.scheme,
        checks: num(r.checks),
        rounds: num(r.rounds),
        crashes: num(r.crashes),
        crashRate: num(r.crash_rate),
        ciLow: num(r.ci_low),
        ciHigh: num(r.ci_high),
        meanTimeUnits: num(r.mean_time_units),
        ancDelivered: hasAncilla ? num(r.anc_delivered) : 0,
        ancPhysRate: hasAncilla ? num(r.anc_phys_rate) : 0,
        ancLogErrors: hasAncilla ? num(r.anc_log_errors) : 0,
        ancLogRate: hasAncilla ? num(r.anc_log_rate) : 0,
        hasAncilla,
      };
      const key = poolKey(row.gamma, row.scheme, row.checks);
      const prev = pools.get(key);
      pools.set(key, prev === undefined ? row : poolPair(prev, row));
    }
  }
  return [...pools.values()].sort(
    (a, b) => a.scheme.localeCompare(b.scheme) || a.checks - b.checks || a.gamma - b.gamma,
  );
}

function poolPair(a: SweepRow, b: SweepRow): SweepRow {
  const rounds = a.rounds + b.rounds;
  const crashes = a.crashes + b.crashes;
  const [lo, hi] = wilson(crashes, rounds);
  const wmean = rounds > 0
    ? (a.meanTimeUnits * a.rounds + b.meanTimeUnits * b.rounds) / rounds
    : 0;
  const delivered = a.ancDelivered + b.ancDelivered;
  const logErrors = a.ancLogErrors + b.ancLogErrors;
  const physRate = delivered > 0
    ? (a.ancPhysRate * a.ancDelivered + b.ancPhysRate * b.ancDelivered) / delivered
    : 0;
  return {
    ...a,
    rounds,
    crashes,
    crashRate: rounds > 0 ? crashes / rounds : 0,
    ciLow: lo,
    ciHigh: hi,
    meanTimeUnits: wmean,
    ancDelivered: delivered,
    ancPhysRate: physRate,
    ancLogErrors: logErrors,
    ancLogRate: delivered > 0 ? logErrors / delivered : 0,
    hasAncilla: a.hasAncilla && b.hasAncilla,
  };
}

/** Read one or more overhead CSVs and pool duplicate rows. */
export function loadOverhead(paths: string[]): OverheadRow[] {
  const pools = new Map<string, OverheadRow>();
  for (const path of paths) {
    const rows = parseCsv(path);
    if (rows.length === 0) throw new SchemaError(`${path}: empty table`);
    requireColumns(path, rows[0], OVERHEAD_COLUMNS);
    for (const r of rows) {
      const exceeds = r.exceeds_budget === "True" || r.exceeds_budget === "true" || r.exceeds_budget === "1";
      const row: OverheadRow = {
        gamma: num(r.gamma),
        scheme: r.scheme,
        checks: num(r.checks),
        delivered: num(r.delivered),
        attempts: num(r.attempts),
        overhead: exceeds ? null : num(r.overhead),
        exceedsBudget: exceeds,
      };
      const key = poolKey(row.gamma, row.scheme, row.checks);
      const prev = pools.get(key);
      if (prev === undefined) {
        pools.set(key, row);
      } else {
        const delivered = prev.delivered + row.delivered;
        const attempts = prev.attempts + row.attempts;
        const exceedsEither = prev.exceedsBudget || row.exceedsBudget;
        let overhead: number | null = null;
        if (!exceedsEither && prev.overhead !== null && row.overhead !== null && delivered > 0) {
          overhead = (prev.overhead * prev.delivered + row.overhead * row.delivered) / delivered;
        }
        pools.set(key, { ...prev, delivered, attempts, overhead, exceedsBudget: exceedsEither });
      }
    }
  }
  return [...pools.values()].sort(
    (a, b) => a.scheme.localeCompare(b.scheme) || a.checks - b.checks || a.gamma - b.gamma,
  );
}
