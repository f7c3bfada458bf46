#!/usr/bin/env node
/**
 * plot: render simulator CSVs to SVG.
 *
 * Usage: plot <crash|overhead|ancilla> <csv...> -o out.svg [--data-only]
 *
 * --data-only writes the plotted series as plain text instead of SVG, for
 * golden-file comparisons.
 */

import { writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { loadOverhead, loadSweep, SchemaError } from "./table.js";
import { renderAncillaPlot, renderCrashPlot, renderOverheadPlot, Rendered } from "./plots.js";

export function renderCommand(kind: string, csvs: string[], dataOnly: boolean): string {
  let out: Rendered;
  if (kind === "crash") {
    out = renderCrashPlot(loadSweep(csvs));
  } else if (kind === "overhead") {
    out = renderOverheadPlot(loadOverhead(csvs));
  } else if (kind === "ancilla") {
    out = renderAncillaPlot(loadSweep(csvs));
  } else {
    throw new SchemaError(`unknown plot kind "${kind}"`);
  }
  return dataOnly ? out.data : out.svg;
}

export function main(argv: string[]): number {
  const args = yargs(argv)
    .command("$0 <kind> <csv...>", "render a figure from simulator CSV output", (y) =>
      y
        .positional("kind", { choices: ["crash", "overhead", "ancilla"] as const, describe: "figure type" })
        .positional("csv", { array: true, type: "string", describe: "input CSV files" }),
    )
    .option("output", { alias: "o", type: "string", demandOption: true, describe: "output file" })
    .option("data-only", { type: "boolean", default: false, describe: "emit plotted series as text" })
    .strict()
    .exitProcess(false)
    .parseSync();

  try {
    const text = renderCommand(args.kind as string, args.csv as string[], args.dataOnly);
    writeFileSync(args.output, text);
    return 0;
  } catch (e) {
    console.error(e instanceof Error ? e.message : String(e));
    return 1;
  }
}

import { pathToFileURL } from "node:url";

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(hideBin(process.argv)));
}
