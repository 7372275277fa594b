import { describe, expect, it } from "vitest";
import { renderChartSvg } from "../src/chart.js";
import type { Series } from "../src/aggregate.js";

function series(label: string, values: Array<[number, number]>): Series {
  return { label, points: values.map(([snrDb, value]) => ({ snrDb, value })) };
}

const SECRECY_PEAK_STYLE = [
  series("L=30, Lam=150", [
    [0, 0.3],
    [5, 0.9],
    [10, 1.8],
    [15, 2.5],
    [20, 2.1],
    [25, 1.4],
    [30, 0.8],
  ]),
];

describe("renderChartSvg", () => {
  it("labels both axes", () => {
    const svg = renderChartSvg(SECRECY_PEAK_STYLE, "Secrecy rate (bps/Hz)");
    expect(svg).toContain("Transmit SNR (dB)");
    expect(svg).toContain("Secrecy rate (bps/Hz)");
  });

  it("draws exactly one polyline per series", () => {
    const two = [series("a", [[0, 1], [10, 2]]), series("b", [[0, 2], [10, 1]])];
    const svg = renderChartSvg(two, "Rate (bps/Hz)");
    const polylines = svg.match(/<path d="M[^"]*" fill="none" stroke="#/g) ?? [];
    expect(polylines).toHaveLength(2);
    expect(svg).toContain(">a<");
    expect(svg).toContain(">b<");
  });

  it("produces a monotone x axis", () => {
    const svg = renderChartSvg(SECRECY_PEAK_STYLE, "Secrecy rate (bps/Hz)");
    const match = svg.match(/<path d="(M[^"]*)" fill="none"/);
    expect(match).not.toBeNull();
    const xs = [...match![1].matchAll(/[ML](\d+(?:\.\d+)?) /g)].map((m) => Number(m[1]));
    expect(xs.length).toBe(SECRECY_PEAK_STYLE[0].points.length);
    for (let i = 1; i < xs.length; i++) {
      expect(xs[i]).toBeGreaterThan(xs[i - 1]);
    }
  });

  it("is deterministic", () => {
    const a = renderChartSvg(SECRECY_PEAK_STYLE, "Secrecy rate (bps/Hz)");
    const b = renderChartSvg(SECRECY_PEAK_STYLE, "Secrecy rate (bps/Hz)");
    expect(a).toBe(b);
  });

  it("escapes markup in labels", () => {
    const svg = renderChartSvg([series("a<b>&c", [[0, 1], [5, 2]])], "Rate (bps/Hz)");
    expect(svg).toContain("a&lt;b&gt;&amp;c");
  });

  it("rejects an empty series list", () => {
    expect(() => renderChartSvg([], "Rate (bps/Hz)")).toThrow(/no series/);
  });
});
