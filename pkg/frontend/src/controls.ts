/** Chart-edit controls: range/size sliders and display-mode toggles.
 *
 * Sliders write straight into the ChartSpec draft; releasing a slider
 * commits the spec and runs one check round trip so features, matches,
 * and diagnostics reflect the new window.  The emphasis toggle only
 * flips presentation state — results are never mutated.
 */

import type { ChartSpecJson } from "./api.js";
import type { Store } from "./state.js";

const DAY_MS = 86_400_000;

function isoDate(ms: number): string {
  return new Date(ms).toISOString().slice(0, 10);
}

export interface Controls {
  root: HTMLElement;
}

interface SliderSpec {
  label: string;
  min: number;
  max: number;
  step: number;
  value: (spec: ChartSpecJson) => number;
  apply: (spec: ChartSpecJson, value: number) => ChartSpecJson;
  format: (value: number) => string;
}

export function createControls(
  container: HTMLElement,
  store: Store,
  runCheck: () => Promise<boolean>,
  dataBounds: { x: [string, string]; y: [number, number] },
): Controls {
  const root = document.createElement("div");
  root.className = "controls";

  const toggles = document.createElement("div");
  toggles.className = "toggle-row";

  const editToggle = document.createElement("label");
  const editBox = document.createElement("input");
  editBox.type = "checkbox";
  editBox.className = "toggle-edit";
  editToggle.append(editBox, document.createTextNode(" edit chart"));
  editBox.addEventListener("change", () => {
    store.update({ chartEditMode: editBox.checked });
  });

  const emphasisToggle = document.createElement("label");
  const emphasisBox = document.createElement("input");
  emphasisBox.type = "checkbox";
  emphasisBox.checked = true;
  emphasisBox.className = "toggle-emphasis";
  emphasisToggle.append(emphasisBox, document.createTextNode(" show emphasis"));
  emphasisBox.addEventListener("change", () => {
    store.update({ emphasisDisplayMode: emphasisBox.checked });
  });

  toggles.append(editToggle, emphasisToggle);

  const sliderPanel = document.createElement("div");
  sliderPanel.className = "slider-panel";
  root.append(toggles, sliderPanel);
  container.append(root);

  const xLo = Date.parse(dataBounds.x[0]);
  const xHi = Date.parse(dataBounds.x[1]);
  const ySpan = dataBounds.y[1] - dataBounds.y[0] || 1;

  const sliders: SliderSpec[] = [
    {
      label: "window start",
      min: xLo,
      max: xHi - DAY_MS,
      step: DAY_MS,
      value: (s) => Date.parse(s.xRange[0]),
      apply: (s, v) => ({
        ...s,
        xRange: [isoDate(Math.min(v, Date.parse(s.xRange[1]) - DAY_MS)), s.xRange[1]],
      }),
      format: isoDate,
    },
    {
      label: "window end",
      min: xLo + DAY_MS,
      max: xHi,
      step: DAY_MS,
      value: (s) => Date.parse(s.xRange[1]),
      apply: (s, v) => ({
        ...s,
        xRange: [s.xRange[0], isoDate(Math.max(v, Date.parse(s.xRange[0]) + DAY_MS))],
      }),
      format: isoDate,
    },
    {
      label: "y min",
      min: dataBounds.y[0] - ySpan,
      max: dataBounds.y[1],
      step: ySpan / 100,
      value: (s) => s.yRange[0],
      apply: (s, v) => ({ ...s, yRange: [Math.min(v, s.yRange[1] - ySpan / 100), s.yRange[1]] }),
      format: (v) => v.toFixed(2),
    },
    {
      label: "y max",
      min: dataBounds.y[0],
      max: dataBounds.y[1] + ySpan,
      step: ySpan / 100,
      value: (s) => s.yRange[1],
      apply: (s, v) => ({ ...s, yRange: [s.yRange[0], Math.max(v, s.yRange[0] + ySpan / 100)] }),
      format: (v) => v.toFixed(2),
    },
    {
      label: "width",
      min: 200,
      max: 1200,
      step: 10,
      value: (s) => s.plotWidth,
      apply: (s, v) => ({ ...s, plotWidth: v }),
      format: (v) => `${v}px`,
    },
    {
      label: "height",
      min: 120,
      max: 800,
      step: 10,
      value: (s) => s.plotHeight,
      apply: (s, v) => ({ ...s, plotHeight: v }),
      format: (v) => `${v}px`,
    },
  ];

  for (const def of sliders) {
    const row = document.createElement("label");
    row.className = "slider-row";
    const name = document.createElement("span");
    name.textContent = def.label;
    const input = document.createElement("input");
    input.type = "range";
    input.min = String(def.min);
    input.max = String(def.max);
    input.step = String(def.step);
    const readout = document.createElement("span");
    readout.className = "slider-readout";
    row.append(name, input, readout);
    sliderPanel.append(row);

    const sync = (): void => {
      const spec = store.get().spec;
      if (!spec) return;
      input.value = String(def.value(spec));
      readout.textContent = def.format(def.value(spec));
    };
    sync();
    store.subscribe(() => {
      if (document.activeElement !== input) sync();
    });

    // live preview while dragging: update the spec so the chart re-renders
    input.addEventListener("input", () => {
      const spec = store.get().spec;
      if (!spec) return;
      const next = def.apply(spec, Number(input.value));
      readout.textContent = def.format(def.value(next));
      store.update({ spec: next });
    });
    // on release, run one check so marks and diagnostics match the new spec
    input.addEventListener("change", () => {
      void runCheck();
    });
  }

  store.subscribe(() => {
    const { chartEditMode, emphasisDisplayMode } = store.get();
    sliderPanel.hidden = !chartEditMode;
    editBox.checked = chartEditMode;
    emphasisBox.checked = emphasisDisplayMode;
  });
  sliderPanel.hidden = true;

  return { root };
}
