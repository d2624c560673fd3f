import { describe, expect, it } from "vitest";

import { groupedBarChart, lineChart, stackedAreaChart } from "../src/charts.js";

const OPTS = { title: "t", xLabel: "x", yLabel: "y" };

describe("stackedAreaChart", () => {
  it("renders one polygon per layer and conserves stacking order", () => {
    const svg = stackedAreaChart(
      [
        { label: "a", values: [1, 2, 3], color: "#111" },
        { label: "b", values: [3, 2, 1], color: "#222" },
      ],
      OPTS,
    );
    expect(svg.match(/<polygon class="area"/g)?.length).toBe(2);
    expect(svg).toMatchSnapshot();
  });
});

describe("lineChart", () => {
  it("renders series, reference line, and legend", () => {
    const svg = lineChart(
      [{ label: "alpha", values: [0, 5, 2, 8], color: "#333" }],
      { ...OPTS, refLine: { value: 6, label: "limit 6" } },
    );
    expect(svg).toContain('class="ref"');
    expect(svg).toContain("limit 6");
    expect(svg).toContain("alpha");
    expect(svg).toMatchSnapshot();
  });

  it("respects an explicit shared y-max", () => {
    const a = lineChart([{ label: "s", values: [1, 2], color: "#000" }], { ...OPTS, yMax: 10 });
    const b = lineChart([{ label: "s", values: [1, 2], color: "#000" }], { ...OPTS, yMax: 100 });
    expect(a).not.toBe(b);
  });
});

describe("groupedBarChart", () => {
  it("tags every bar with its group, label, and raw value", () => {
    const svg = groupedBarChart(
      [
        { label: "k1", bars: [{ label: "s1", value: 4.5, color: "#123" }] },
        { label: "k2", bars: [{ label: "s1", value: 0.5, color: "#123" }] },
      ],
      { ...OPTS, refLine: { value: 1, label: "break-even" } },
    );
    expect(svg).toContain('data-group="k1"');
    expect(svg).toContain('data-value="4.5"');
    expect(svg).toContain("break-even");
    expect(svg).toMatchSnapshot();
  });

  it("clamps negative multiples to the axis floor instead of inverting bars", () => {
    const svg = groupedBarChart(
      [{ label: "k2", bars: [{ label: "s1", value: -0.5, color: "#123" }] }],
      OPTS,
    );
    expect(svg).toContain('data-value="-0.5"');
    expect(svg).toContain('height="0.00"');
  });
});
