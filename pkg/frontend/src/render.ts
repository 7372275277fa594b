import { writeFileSync } from "node:fs";
import sharp from "sharp";
import { buildSeries, type Series } from "./aggregate.js";
import { renderChartSvg } from "./chart.js";
import { readTrialCsv } from "./csv.js";
import type { PlotSpec } from "./types.js";

export function collectSeries(spec: PlotSpec): Series[] {
  return spec.input_csvs.flatMap((path, idx) =>
    buildSeries(readTrialCsv(path), spec.series_labels[idx], spec.y_axis),
  );
}

export function chartSvgForSpec(spec: PlotSpec): string {
  const yLabel = spec.y_axis === "secrecy" ? "Secrecy rate (bps/Hz)" : "Rate (bps/Hz)";
  return renderChartSvg(collectSeries(spec), yLabel);
}

/** Render the spec to a PNG (or an SVG when the output path ends in .svg). */
export async function renderPlot(spec: PlotSpec): Promise<void> {
  const svg = chartSvgForSpec(spec);
  if (spec.output_path.endsWith(".svg")) {
    writeFileSync(spec.output_path, svg);
    return;
  }
  const png = await sharp(Buffer.from(svg)).png().toBuffer();
  writeFileSync(spec.output_path, png);
}
