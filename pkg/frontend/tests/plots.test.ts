import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { describe, expect, it } from "vitest";
import { loadSweep, wilson, SchemaError, SWEEP_COLUMNS } from "../src/table.js";
import { crossing, renderCrashPlot, REFERENCE_SLOPE } from "../src/plots.js";
import { renderCommand, main } from "../src/cli.js";

const FIX = path.join(__dirname, "fixtures");
const GOLD = path.join(__dirname, "golden");

const sweepCsvs = [path.join(FIX, "steane.csv"), path.join(FIX, "reject.csv")];
const overheadCsvs = [path.join(FIX, "ov_steane.csv"), path.join(FIX, "ov_reject.csv")];

describe("golden series", () => {
  it("crash --data-only matches the stored golden file", () => {
    const out = renderCommand("crash", sweepCsvs, true);
    expect(out).toBe(readFileSync(path.join(GOLD, "crash.txt"), "utf-8"));
  });

  it("overhead --data-only matches the stored golden file", () => {
    const out = renderCommand("overhead", overheadCsvs, true);
    expect(out).toBe(readFileSync(path.join(GOLD, "overhead.txt"), "utf-8"));
  });

  it("ancilla --data-only matches the stored golden file", () => {
    const out = renderCommand("ancilla", sweepCsvs, true);
    expect(out).toBe(readFileSync(path.join(GOLD, "ancilla.txt"), "utf-8"));
  });

  it("SVG output is deterministic for the same input", () => {
    expect(renderCommand("crash", sweepCsvs, false)).toBe(renderCommand("crash", sweepCsvs, false));
  });
});

describe("reference line", () => {
  it("has slope 3/4 and passes through (1e-2, 7.5e-3)", () => {
    expect(REFERENCE_SLOPE * 1e-2).toBe(7.5e-3);
    const out = renderCommand("crash", sweepCsvs, true);
    const lines = out.split("\n");
    const i = lines.indexOf("series reference slope-3/4");
    expect(i).toBeGreaterThanOrEqual(0);
    const [x0, y0] = lines[i + 1].split(" ").map(Number);
    const [x1, y1] = lines[i + 2].split(" ").map(Number);
    expect(y0 / x0).toBeCloseTo(0.75, 6);
    expect(y1 / x1).toBeCloseTo(0.75, 6);
    // the drawn segment spans gamma = 1e-2, so it passes through the anchor
    expect(x0).toBeLessThan(1e-2);
    expect(x1).toBeGreaterThan(1e-2);
  });
});

describe("crossing estimate", () => {
  function row(gamma: number, rate: number) {
    return {
      gamma, scheme: "x", checks: 4, rounds: 1000000, crashes: Math.round(rate * 1000000),
      crashRate: rate, ciLow: rate, ciHigh: rate, meanTimeUnits: 0,
      ancDelivered: 0, ancPhysRate: 0, ancLogErrors: 0, ancLogRate: 0, hasAncilla: false,
    };
  }

  it("interpolates in log-log space", () => {
    // rate = gamma^2 / c crosses 0.75 gamma at gamma = 0.75 c
    const c = 0.01;
    const rows = [row(5e-3, 5e-3 ** 2 / c), row(1e-2, 1e-2 ** 2 / c)];
    expect(crossing(rows)).toBeCloseTo(0.75 * c, 8);
  });

  it("returns null when every point stays below the line", () => {
    expect(crossing([row(1e-3, 1e-5), row(3e-3, 1e-4)])).toBeNull();
  });
});

describe("pooling", () => {
  it("merges duplicate (gamma, scheme, checks) rows count-weighted", () => {
    const one = loadSweep([sweepCsvs[0]]);
    const twice = loadSweep([sweepCsvs[0], sweepCsvs[0]]);
    expect(twice.length).toBe(one.length);
    for (let i = 0; i < one.length; i++) {
      expect(twice[i].rounds).toBe(2 * one[i].rounds);
      expect(twice[i].crashes).toBe(2 * one[i].crashes);
      expect(twice[i].crashRate).toBeCloseTo(one[i].crashRate, 12);
    }
  });

  it("doubling the sample tightens the Wilson interval", () => {
    const one = loadSweep([sweepCsvs[0]]);
    const twice = loadSweep([sweepCsvs[0], sweepCsvs[0]]);
    const i = one.findIndex((r) => r.crashes > 0);
    expect(twice[i].ciHigh - twice[i].ciLow).toBeLessThan(one[i].ciHigh - one[i].ciLow);
  });
});

describe("wilson interval", () => {
  it("matches a reference value and clamps at zero counts", () => {
    const [lo, hi] = wilson(10, 100);
    expect(lo).toBeCloseTo(0.0552, 3);
    expect(hi).toBeCloseTo(0.1744, 3);
    expect(wilson(0, 50)[0]).toBe(0);
  });
});

describe("diagnostics", () => {
  it("a missing column is named in the error", () => {
    const dir = mkdtempSync(path.join(tmpdir(), "plotkit-"));
    const bad = path.join(dir, "bad.csv");
    const cols = SWEEP_COLUMNS.filter((c) => c !== "crash_rate");
    writeFileSync(bad, cols.join(",") + "\n" + cols.map(() => "0").join(",") + "\n");
    expect(() => loadSweep([bad])).toThrow(/crash_rate/);
  });

  it("an empty table is an error and writes no file", () => {
    const dir = mkdtempSync(path.join(tmpdir(), "plotkit-"));
    const empty = path.join(dir, "empty.csv");
    writeFileSync(empty, SWEEP_COLUMNS.join(",") + "\n");
    const out = path.join(dir, "out.svg");
    const code = main(["crash", empty, "-o", out]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("ancilla plot without --ancilla-stats columns names the column", () => {
    const dir = mkdtempSync(path.join(tmpdir(), "plotkit-"));
    const csv = path.join(dir, "plain.csv");
    writeFileSync(
      csv,
      SWEEP_COLUMNS.join(",") + "\n" +
        "0.003,reject,4,1000,1,0.001,0.0001,0.005,2.0,5,3,0,0.0,7\n",
    );
    expect(() => renderCommand("ancilla", [csv], true)).toThrow(/anc_delivered/);
  });
});

describe("svg structure", () => {
  it("two-scheme input draws two curves plus the reference line", () => {
    const svg = renderCommand("crash", sweepCsvs, false);
    const polylines = svg.match(/<polyline /g) ?? [];
    expect(polylines.length).toBeGreaterThanOrEqual(3);
    expect(svg).toContain("stroke-dasharray");
    expect(svg).toContain("steane");
    expect(svg).toContain("reject");
  });

  it("annotates the reject crossing", () => {
    const rows = loadSweep(sweepCsvs);
    const reject = rows.filter((r) => r.scheme === "reject");
    const gs = crossing(reject);
    expect(gs).not.toBeNull();
    const { svg } = renderCrashPlot(rows);
    expect(svg).toContain(`reject: ${(gs as number).toExponential(2)}`);
  });
});
