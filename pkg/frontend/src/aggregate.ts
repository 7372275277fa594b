import type { TrialRow } from "./types.js";

export interface SeriesPoint {
  snrDb: number;
  value: number;
}

export interface Series {
  label: string;
  points: SeriesPoint[]; // sorted by snrDb ascending
}

function meanBySnr(rows: TrialRow[], pick: (row: TrialRow) => number): SeriesPoint[] {
  const sums = new Map<number, { total: number; count: number }>();
  for (const row of rows) {
    const entry = sums.get(row.snrDb) ?? { total: 0, count: 0 };
    entry.total += pick(row);
    entry.count += 1;
    sums.set(row.snrDb, entry);
  }
  return [...sums.entries()]
    .map(([snrDb, { total, count }]) => ({ snrDb, value: total / count }))
    .sort((a, b) => a.snrDb - b.snrDb);
}

/**
 * Mean curves for one sweep. "rates" mode yields the legitimate and
 * eavesdropping link rates as separate curves; "secrecy" mode yields the
 * clipped secrecy-rate curve only.
 */
export function buildSeries(rows: TrialRow[], label: string, yAxis: "rates" | "secrecy"): Series[] {
  if (rows.length === 0) {
    throw new Error(`no data rows for series "${label}"`);
  }
  if (yAxis === "secrecy") {
    return [{ label, points: meanBySnr(rows, (r) => r.secrecy) }];
  }
  return [
    { label: `${label} RX`, points: meanBySnr(rows, (r) => r.rateRx) },
    { label: `${label} E`, points: meanBySnr(rows, (r) => r.rateE) },
  ];
}
