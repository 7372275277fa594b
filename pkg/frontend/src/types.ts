/** Row schema of the simulator's trial-level CSV output. */
export interface TrialRow {
  snrDb: number;
  trialIndex: number;
  rateRx: number;
  rateE: number;
  secrecy: number;
  ndSelected: number;
  innerIters: number;
  wallTimeS: number;
}

/** Plot request: one or more sweep CSVs rendered as mean curves vs SNR. */
export interface PlotSpec {
  input_csvs: string[];
  series_labels: string[];
  output_path: string;
  y_axis: "rates" | "secrecy";
}

export function validateSpec(raw: unknown): PlotSpec {
  if (typeof raw !== "object" || raw === null) {
    throw new Error("plot spec must be a JSON object");
  }
  const spec = raw as Record<string, unknown>;
  const inputs = spec.input_csvs;
  const labels = spec.series_labels;
  if (!Array.isArray(inputs) || inputs.length === 0 || !inputs.every((p) => typeof p === "string")) {
    throw new Error("input_csvs must be a non-empty array of paths");
  }
  if (!Array.isArray(labels) || !labels.every((l) => typeof l === "string")) {
    throw new Error("series_labels must be an array of strings");
  }
  if (labels.length !== inputs.length) {
    throw new Error(`series_labels (${labels.length}) must match input_csvs (${inputs.length})`);
  }
  if (typeof spec.output_path !== "string" || spec.output_path.length === 0) {
    throw new Error("output_path must be a non-empty string");
  }
  if (spec.y_axis !== "rates" && spec.y_axis !== "secrecy") {
    throw new Error('y_axis must be "rates" or "secrecy"');
  }
  return {
    input_csvs: inputs as string[],
    series_labels: labels as string[],
    output_path: spec.output_path,
    y_axis: spec.y_axis,
  };
}
