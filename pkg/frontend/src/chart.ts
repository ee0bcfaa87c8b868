/** SVG line chart with tooltips, plus the mark rows above it.
 *
 * Feature marks follow the service's ranking: circles for points, bars for
 * trends, rank 1 drawn nearest the chart.  Matched features render green,
 * unmatched orange, darker shades for more prominent ranks.  Reference
 * marks sit above the feature rows in the four-color caption palette.
 * Hovering either a mark or a caption highlight emphasizes the linked
 * chart region.
 */

import type { ChartSpecJson, CheckResult, Feature } from "./api.js";
import type { HoverTarget, Store } from "./state.js";

export interface SeriesPoint {
  t: string; // ISO date
  y: number;
}

/** Parse `date,value` CSV into points (header required). */
export function parseCsv(text: string): SeriesPoint[] {
  const lines = text.trim().split(/\r?\n/);
  const out: SeriesPoint[] = [];
  for (const line of lines.slice(1)) {
    if (!line.trim()) continue;
    const comma = line.indexOf(",");
    const t = line.slice(0, comma).trim();
    const y = Number(line.slice(comma + 1).trim());
    if (!Number.isNaN(y)) out.push({ t, y });
  }
  return out;
}

/** Points inside the spec's x-range; feature indices refer to this list. */
export function visiblePoints(points: SeriesPoint[], spec: ChartSpecJson): SeriesPoint[] {
  const lo = Date.parse(spec.xRange[0]);
  const hi = Date.parse(spec.xRange[1]);
  return points.filter((p) => {
    const t = Date.parse(p.t);
    return t >= lo && t <= hi;
  });
}

const GREEN_SHADES = ["#1b7f3b", "#2f9a4f", "#4fb369", "#74c98a", "#9cdcab"];
const ORANGE_SHADES = ["#c05805", "#d3731f", "#e08d3f", "#ecab67", "#f5c995"];
export const REFERENCE_PALETTE = ["#4269d0", "#d03c3c", "#8a4fbe", "#8a5f3c"];

export function featureColor(feature: Feature): string {
  const shades = feature.matched ? GREEN_SHADES : ORANGE_SHADES;
  const idx = Math.min(feature.rank - 1, shades.length - 1);
  return shades[idx]!;
}

const SVG_NS = "http://www.w3.org/2000/svg";
const ROW_HEIGHT = 14;
const REF_GAP = 8;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

interface Scales {
  x: (t: string) => number;
  y: (v: number) => number;
}

function makeScales(spec: ChartSpecJson): Scales {
  const t0 = Date.parse(spec.xRange[0]);
  const t1 = Date.parse(spec.xRange[1]);
  const [y0, y1] = spec.yRange;
  return {
    x: (t) => ((Date.parse(t) - t0) / (t1 - t0 || 1)) * spec.plotWidth,
    y: (v) => spec.plotHeight - ((v - y0) / (y1 - y0 || 1)) * spec.plotHeight,
  };
}

export interface ChartView {
  root: HTMLElement;
  render(): void;
}

export function createChart(
  container: HTMLElement,
  points: SeriesPoint[],
  store: Store,
): ChartView {
  const root = document.createElement("div");
  root.className = "chart-area";
  const marksHost = document.createElement("div");
  marksHost.className = "marks";
  const chartHost = document.createElement("div");
  chartHost.className = "chart";
  const tooltip = document.createElement("div");
  tooltip.className = "chart-tooltip";
  tooltip.hidden = true;
  root.append(marksHost, chartHost, tooltip);
  container.append(root);

  function renderChartSvg(
    visible: SeriesPoint[],
    spec: ChartSpecJson,
    scales: Scales,
    hover: HoverTarget,
    result: CheckResult | null,
  ): void {
    chartHost.replaceChildren();
    if (visible.length < 2) {
      const empty = document.createElement("p");
      empty.className = "chart-empty";
      empty.textContent = "No data falls inside the selected time window.";
      chartHost.append(empty);
      return;
    }
    const svg = svgEl("svg", {
      width: String(spec.plotWidth),
      height: String(spec.plotHeight),
      viewBox: `0 0 ${spec.plotWidth} ${spec.plotHeight}`,
      class: "chart-svg",
    });

    // hover emphasis band behind the line
    const region = hoverRegion(hover, result, visible);
    if (region) {
      const [a, b] = region;
      const xa = scales.x(visible[a]!.t);
      const xb = scales.x(visible[b]!.t);
      svg.append(
        svgEl("rect", {
          x: String(Math.min(xa, xb) - (a === b ? 6 : 0)),
          y: "0",
          width: String(a === b ? 12 : Math.abs(xb - xa)),
          height: String(spec.plotHeight),
          class: "hover-region",
        }),
      );
    }

    const path = visible
      .map((p, i) => `${i === 0 ? "M" : "L"}${scales.x(p.t)},${scales.y(p.y)}`)
      .join("");
    svg.append(svgEl("path", { d: path, class: "series-line", fill: "none" }));

    svg.addEventListener("mousemove", (event) => {
      const rect = svg.getBoundingClientRect();
      const px = event.clientX - rect.left;
      let best = 0;
      let bestDist = Infinity;
      visible.forEach((p, i) => {
        const d = Math.abs(scales.x(p.t) - px);
        if (d < bestDist) {
          bestDist = d;
          best = i;
        }
      });
      const point = visible[best]!;
      tooltip.textContent = `${point.t}: ${point.y}`;
      tooltip.style.left = `${scales.x(point.t)}px`;
      tooltip.style.top = `${scales.y(point.y)}px`;
      tooltip.hidden = false;
    });
    svg.addEventListener("mouseleave", () => {
      tooltip.hidden = true;
    });
    chartHost.append(svg);
  }

  function hoverRegion(
    hover: HoverTarget,
    result: CheckResult | null,
    visible: SeriesPoint[],
  ): [number, number] | null {
    if (!hover || !result) return null;
    const clampIdx = (i: number): number =>
      Math.max(0, Math.min(i, visible.length - 1));
    if (hover.kind === "feature") {
      const feat = result.features.find((f) => f.rank === hover.rank);
      if (!feat) return null;
      return feat.kind === "point"
        ? [clampIdx(feat.index), clampIdx(feat.index)]
        : [clampIdx(feat.start), clampIdx(feat.end)];
    }
    const ref = result.references[hover.index];
    if (!ref) return null;
    return ref.target.kind === "point"
      ? [clampIdx(ref.target.index), clampIdx(ref.target.index)]
      : [clampIdx(ref.target.start), clampIdx(ref.target.end)];
  }

  function renderMarks(
    visible: SeriesPoint[],
    spec: ChartSpecJson,
    scales: Scales,
    result: CheckResult | null,
    emphasisOn: boolean,
  ): void {
    marksHost.replaceChildren();
    if (!result || !emphasisOn || visible.length < 2) {
      marksHost.hidden = true;
      return;
    }
    marksHost.hidden = false;
    const featureRows = result.features.length;
    const refRows = result.references.length > 0 ? 1 : 0;
    const height = featureRows * ROW_HEIGHT + refRows * (ROW_HEIGHT + REF_GAP);
    const svg = svgEl("svg", {
      width: String(spec.plotWidth),
      height: String(height),
      viewBox: `0 0 ${spec.plotWidth} ${height}`,
      class: "marks-svg",
    });

    const markY = (rank: number): number => height - rank * ROW_HEIGHT;
    const xAt = (i: number): number =>
      scales.x(visible[Math.max(0, Math.min(i, visible.length - 1))]!.t);

    for (const feat of result.features) {
      const y = markY(feat.rank);
      const color = featureColor(feat);
      const cls = feat.matched ? "feature-mark mark-matched" : "feature-mark mark-unmatched";
      let el: SVGElement;
      if (feat.kind === "point") {
        el = svgEl("circle", {
          cx: String(xAt(feat.index)),
          cy: String(y + ROW_HEIGHT / 2),
          r: "5",
          fill: color,
          class: cls,
          "data-rank": String(feat.rank),
        });
      } else {
        const xa = xAt(feat.start);
        const xb = xAt(feat.end);
        el = svgEl("rect", {
          x: String(Math.min(xa, xb)),
          y: String(y + 3),
          width: String(Math.max(2, Math.abs(xb - xa))),
          height: String(ROW_HEIGHT - 6),
          fill: color,
          class: cls,
          "data-rank": String(feat.rank),
        });
      }
      el.addEventListener("mouseenter", () => {
        store.update({ hoverTarget: { kind: "feature", rank: feat.rank } });
      });
      el.addEventListener("mouseleave", () => {
        store.update({ hoverTarget: null });
      });
      svg.append(el);
    }

    result.references.forEach((ref, index) => {
      const y = 0; // single reference row at the top
      const color = REFERENCE_PALETTE[ref.palette % REFERENCE_PALETTE.length]!;
      let el: SVGElement;
      if (ref.target.kind === "point") {
        el = svgEl("circle", {
          cx: String(xAt(ref.target.index)),
          cy: String(y + ROW_HEIGHT / 2),
          r: "4",
          fill: color,
          class: "reference-mark",
          "data-ref": String(index),
        });
      } else {
        const xa = xAt(ref.target.start);
        const xb = xAt(ref.target.end);
        el = svgEl("rect", {
          x: String(Math.min(xa, xb)),
          y: String(y + 4),
          width: String(Math.max(2, Math.abs(xb - xa))),
          height: String(ROW_HEIGHT - 8),
          fill: color,
          class: "reference-mark",
          "data-ref": String(index),
        });
      }
      el.addEventListener("mouseenter", () => {
        store.update({ hoverTarget: { kind: "reference", index } });
      });
      el.addEventListener("mouseleave", () => {
        store.update({ hoverTarget: null });
      });
      svg.append(el);
    });

    marksHost.append(svg);
  }

  function render(): void {
    const { spec, result, emphasisDisplayMode, hoverTarget } = store.get();
    if (!spec) return;
    const visible = visiblePoints(points, spec);
    const scales = makeScales(spec);
    renderChartSvg(visible, spec, scales, hoverTarget, result);
    renderMarks(visible, spec, scales, result, emphasisDisplayMode);
  }

  store.subscribe(render);
  return { root, render };
}
