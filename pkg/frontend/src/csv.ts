import { readFileSync } from "node:fs";
import type { TrialRow } from "./types.js";

const EXPECTED_HEADER = [
  "snr_db",
  "trial_index",
  "rate_rx",
  "rate_e",
  "secrecy",
  "nd_selected",
  "inner_iters",
  "wall_time_s",
];

/** Parse one sweep CSV, enforcing the simulator's column schema. */
export function parseTrialCsv(text: string, source = "<csv>"): TrialRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new Error(`${source}: empty file`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (header.length !== EXPECTED_HEADER.length || !EXPECTED_HEADER.every((h, i) => h === header[i])) {
    throw new Error(
      `${source}: unexpected header [${header.join(", ")}]; ` +
        `expected [${EXPECTED_HEADER.join(", ")}]`,
    );
  }
  return lines.slice(1).map((line, idx) => {
    const parts = line.split(",");
    if (parts.length !== EXPECTED_HEADER.length) {
      throw new Error(`${source}: row ${idx + 2} has ${parts.length} columns`);
    }
    const nums = parts.map((p) => Number(p));
    if (nums.some((n) => Number.isNaN(n))) {
      throw new Error(`${source}: row ${idx + 2} contains a non-numeric field`);
    }
    return {
      snrDb: nums[0],
      trialIndex: nums[1],
      rateRx: nums[2],
      rateE: nums[3],
      secrecy: nums[4],
      ndSelected: nums[5],
      innerIters: nums[6],
      wallTimeS: nums[7],
    };
  });
}

export function readTrialCsv(path: string): TrialRow[] {
  return parseTrialCsv(readFileSync(path, "utf8"), path);
}
