#!/usr/bin/env node
/** plot --spec <json>: render mean rate/secrecy curves from sweep CSVs. */

import { readFileSync } from "node:fs";
import { renderPlot } from "./render.js";
import { validateSpec } from "./types.js";

function usage(): never {
  console.error("usage: plot --spec <spec.json>");
  process.exit(2);
}

async function main(argv: string[]): Promise<number> {
  const args = argv.slice(2);
  if (args.length === 0 || args[0] === "--help") {
    usage();
  }
  // accept both "plot --spec x.json" and "--spec x.json"
  const rest = args[0] === "plot" ? args.slice(1) : args;
  const specIdx = rest.indexOf("--spec");
  if (specIdx === -1 || specIdx + 1 >= rest.length) {
    usage();
  }
  const specPath = rest[specIdx + 1];
  const spec = validateSpec(JSON.parse(readFileSync(specPath, "utf8")));
  await renderPlot(spec);
  console.log(`wrote ${spec.output_path}`);
  return 0;
}

main(process.argv)
  .then((code) => process.exit(code))
  .catch((err) => {
    console.error(String(err instanceof Error ? err.message : err));
    process.exit(1);
  });
