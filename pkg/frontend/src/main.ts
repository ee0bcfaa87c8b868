/** Page bootstrap: upload the demo series, then wire chart, editor,
 * and controls around one shared Store.
 */

import { ServiceClient } from "./api.js";
import { createChart, parseCsv } from "./chart.js";
import { createControls } from "./controls.js";
import { DEMO_CSV, DEMO_SPEC, DEMO_TITLE } from "./demo.js";
import { createEditor } from "./editor.js";
import { Store } from "./state.js";

async function boot(): Promise<void> {
  const app = document.getElementById("app");
  if (!app) return;

  const store = new Store();
  const apiBase = document
    .querySelector('meta[name="api-base"]')
    ?.getAttribute("content");
  const client = new ServiceClient(apiBase ?? "");
  const points = parseCsv(DEMO_CSV);

  const heading = document.createElement("h1");
  heading.textContent = DEMO_TITLE;
  app.append(heading);

  const chartSlot = document.createElement("div");
  const editorSlot = document.createElement("div");
  const controlsSlot = document.createElement("div");
  app.append(chartSlot, editorSlot, controlsSlot);

  createChart(chartSlot, points, store);
  const editor = createEditor(editorSlot, store, client);
  const values = points.map((p) => p.y);
  createControls(controlsSlot, store, editor.runCheck, {
    x: [points[0]!.t, points[points.length - 1]!.t],
    y: [Math.min(...values), Math.max(...values)],
  });

  try {
    const info = await client.uploadSeries(DEMO_CSV);
    store.update({ sessionId: info.sessionId, spec: DEMO_SPEC });
    // populate the feature rows before any caption is typed
    await editor.runCheck();
  } catch (err) {
    const banner = document.createElement("p");
    banner.className = "error-banner";
    banner.textContent = `could not reach the caption service: ${
      err instanceof Error ? err.message : String(err)
    }`;
    app.prepend(banner);
  }
}

void boot();
