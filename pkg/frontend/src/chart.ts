import type { Series } from "./aggregate.js";

const WIDTH = 800;
const HEIGHT = 500;
const MARGIN = { top: 30, right: 30, bottom: 60, left: 70 };

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

const MARKERS = ["circle", "square", "diamond", "triangle"] as const;

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const rawStep = (hi - lo) / count;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => s >= rawStep) ?? rawStep;
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = first; t <= hi + 1e-9; t += step) {
    ticks.push(Number(t.toPrecision(10)));
  }
  return ticks;
}

function marker(shape: (typeof MARKERS)[number], x: number, y: number, color: string): string {
  const r = 4;
  switch (shape) {
    case "circle":
      return `<circle cx="${x}" cy="${y}" r="${r}" fill="${color}"/>`;
    case "square":
      return `<rect x="${x - r}" y="${y - r}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`;
    case "diamond":
      return `<path d="M${x} ${y - r} L${x + r} ${y} L${x} ${y + r} L${x - r} ${y} Z" fill="${color}"/>`;
    case "triangle":
      return `<path d="M${x} ${y - r} L${x + r} ${y + r} L${x - r} ${y + r} Z" fill="${color}"/>`;
  }
}

/** Deterministic SVG line chart: mean rate curves versus transmit SNR. */
export function renderChartSvg(series: Series[], yLabel: string): string {
  if (series.length === 0) {
    throw new Error("no series to plot");
  }
  const allX = series.flatMap((s) => s.points.map((p) => p.snrDb));
  const allY = series.flatMap((s) => s.points.map((p) => p.value));
  const xLo = Math.min(...allX);
  const xHi = Math.max(...allX);
  const yLo = Math.min(0, ...allY);
  const yHi = Math.max(...allY) * 1.05 || 1;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo || 1)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - yLo) / (yHi - yLo || 1)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  );

  for (const tick of niceTicks(xLo, xHi)) {
    const x = sx(tick);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#dddddd"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 20}" font-size="12" text-anchor="middle">${tick}</text>`,
    );
  }
  for (const tick of niceTicks(yLo, yHi)) {
    const y = sy(tick);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${y + 4}" font-size="12" text-anchor="end">${tick}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="black"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 15}" font-size="14" ` +
      `text-anchor="middle">Transmit SNR (dB)</text>`,
    `<text x="18" y="${MARGIN.top + plotH / 2}" font-size="14" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${yLabel}</text>`,
  );

  series.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const shape = MARKERS[idx % MARKERS.length];
    const path = s.points
      .map((p, i) => `${i === 0 ? "M" : "L"}${sx(p.snrDb).toFixed(2)} ${sy(p.value).toFixed(2)}`)
      .join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
    for (const p of s.points) {
      parts.push(marker(shape, Number(sx(p.snrDb).toFixed(2)), Number(sy(p.value).toFixed(2)), color));
    }
  });

  // legend in the top-left corner of the plot area
  series.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const y = MARGIN.top + 18 + idx * 20;
    parts.push(
      `<line x1="${MARGIN.left + 12}" y1="${y - 4}" x2="${MARGIN.left + 44}" y2="${y - 4}" ` +
        `stroke="${color}" stroke-width="2"/>`,
      marker(MARKERS[idx % MARKERS.length], MARGIN.left + 28, y - 4, color),
      `<text x="${MARGIN.left + 50}" y="${y}" font-size="12">${escapeXml(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
