/** Explorer bootstrap: scatter of the embedding, click-to-query local
 * biplot axes, controls for mode, epsilon, axis pair, colouring and segment
 * scale.  All numbers come from the server; at most one /api/lb request is
 * in flight (newer view states abort older requests).
 */

import { ApiClient, ApiError, EmbeddingPayload, LbPayload, MetaPayload } from "./api.js";
import { clearOverlay, renderOverlay } from "./overlay.js";
import { renderScatter, ScatterView } from "./scatter.js";
import {
  defaultState,
  EPS_MODES,
  lbRequestFor,
  parseManualPoint,
  validateState,
  ViewState,
} from "./state.js";

export interface App {
  state: ViewState;
  meta: MetaPayload;
  embedding: EmbeddingPayload;
  lastLb: LbPayload | null;
  selectSample(id: string): Promise<void>;
  selectManualPoint(text: string): Promise<void>;
  setMode(mode: string): Promise<void>;
  setEpsilon(value: number | null): Promise<void>;
  setAxes(a: number, b: number): void;
  setScale(value: number): void;
  setColorBy(key: string | null): void;
  refresh(): Promise<void>;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}

function option(value: string, label?: string): HTMLOptionElement {
  const o = document.createElement("option");
  o.value = value;
  o.textContent = label ?? value;
  return o;
}

export async function startApp(root: HTMLElement, apiBase = ""): Promise<App> {
  const api = new ApiClient(apiBase);
  root.replaceChildren();

  const banner = el("div", "banner");
  banner.setAttribute("role", "alert");
  banner.hidden = true;
  root.appendChild(banner);

  const showError = (message: string) => {
    banner.hidden = false;
    banner.textContent = message;
  };
  const clearError = () => {
    banner.hidden = true;
    banner.textContent = "";
  };

  let meta: MetaPayload;
  let embedding: EmbeddingPayload;
  try {
    [meta, embedding] = await Promise.all([api.meta(), api.embedding()]);
    if (!embedding || !Array.isArray(embedding.coords) || !Array.isArray(embedding.ids)) {
      throw new ApiError("malformed embedding payload", 0);
    }
  } catch (err) {
    showError(`Failed to load analysis: ${err instanceof Error ? err.message : err}`);
    throw err;
  }

  const state = defaultState(meta.k, meta.modes);

  // ---- controls -------------------------------------------------------
  const controls = el("div", "controls");

  const axisASelect = el("select", "axis-a");
  const axisBSelect = el("select", "axis-b");
  for (let i = 0; i < meta.k; i++) {
    axisASelect.appendChild(option(String(i), `axis ${i + 1}`));
    axisBSelect.appendChild(option(String(i), `axis ${i + 1}`));
  }
  axisASelect.value = String(state.axisA);
  axisBSelect.value = String(state.axisB);
  const axisNote = el("span", "axis-note");
  if (meta.k === 1) {
    axisBSelect.disabled = true;
    axisNote.textContent = "second axis unavailable: the embedding is one-dimensional";
  }

  const modeSelect = el("select", "mode");
  for (const m of meta.modes) modeSelect.appendChild(option(m));
  modeSelect.value = state.mode;

  const epsilonInput = el("input", "epsilon");
  epsilonInput.type = "number";
  epsilonInput.step = "any";
  epsilonInput.min = "0";
  epsilonInput.value = state.epsilon === null ? "" : String(state.epsilon);
  epsilonInput.disabled = !EPS_MODES.includes(state.mode);

  const scaleInput = el("input", "axis-scale");
  scaleInput.type = "range";
  scaleInput.min = "-2";
  scaleInput.max = "2";
  scaleInput.step = "0.1";
  scaleInput.value = "0"; // log10 scale factor
  const scaleReadout = el("span", "scale-readout");
  scaleReadout.textContent = "segment scale: 1";

  const colorSelect = el("select", "color-by");
  colorSelect.appendChild(option("", "no colouring"));
  for (const key of Object.keys(meta.variable_groups ?? {})) {
    colorSelect.appendChild(option(key, `colour by ${key}`));
  }

  const manualInput = el("textarea", "manual-point");
  manualInput.rows = 2;
  manualInput.placeholder = `custom point: ${meta.p} comma-separated values`;
  const manualButton = el("button", "plot-point");
  manualButton.textContent = "Plot point";

  const labelled = (text: string, node: HTMLElement): HTMLElement => {
    const wrap = el("label", "control");
    const span = el("span");
    span.textContent = text;
    wrap.appendChild(span);
    wrap.appendChild(node);
    return wrap;
  };
  controls.appendChild(labelled("x", axisASelect));
  controls.appendChild(labelled("y", axisBSelect));
  controls.appendChild(axisNote);
  controls.appendChild(labelled("mode", modeSelect));
  controls.appendChild(labelled("epsilon", epsilonInput));
  controls.appendChild(labelled("scale", scaleInput));
  controls.appendChild(scaleReadout);
  controls.appendChild(labelled("colour", colorSelect));
  controls.appendChild(labelled("custom point", manualInput));
  controls.appendChild(manualButton);
  root.appendChild(controls);

  const status = el("div", "status");
  status.textContent = `${meta.n} samples, ${meta.p} variables, ${meta.distance.kind}`;
  root.appendChild(status);

  const plot = el("div", "plot");
  root.appendChild(plot);

  // ---- rendering ------------------------------------------------------
  let view: ScatterView | null = null;
  let lastLb: LbPayload | null = null;
  let inflight: AbortController | null = null;

  const effectiveAxisB = (): number | null => (meta.k > 1 ? state.axisB : null);

  const colorGroups = (): number[] | null =>
    state.colorBy ? meta.variable_groups[state.colorBy] ?? null : null;

  const redrawScatter = () => {
    view = renderScatter(
      plot,
      embedding,
      state.axisA,
      effectiveAxisB(),
      meta.sample_group,
      (id) => void app.selectSample(id),
    );
  };

  const redrawOverlay = () => {
    if (!view) return;
    if (!lastLb) {
      clearOverlay(view.svg);
      return;
    }
    renderOverlay(
      view.svg,
      lastLb,
      state.axisA,
      effectiveAxisB(),
      state.axisScale,
      view.scale,
      meta.columns,
      colorGroups(),
    );
  };

  const fetchLb = async () => {
    const request = lbRequestFor(state);
    if (!request) return;
    const problems = validateState(state, meta.k, meta.p);
    if (problems.length) {
      showError(problems.join("; "));
      return;
    }
    // A newer view state cancels the previous request; the overlay for the
    // old selection is stale the moment a new request starts.
    if (inflight) inflight.abort();
    const controller = new AbortController();
    inflight = controller;
    lastLb = null;
    if (view) clearOverlay(view.svg);
    clearError();
    try {
      const payload = await api.lb(request, controller.signal);
      if (inflight !== controller) return; // superseded while awaiting
      lastLb = payload;
      redrawOverlay();
    } catch (err) {
      if (controller.signal.aborted) return;
      showError(err instanceof ApiError ? err.message : `request failed: ${err}`);
    } finally {
      if (inflight === controller) inflight = null;
    }
  };

  const app: App = {
    state,
    meta,
    embedding,
    get lastLb() {
      return lastLb;
    },
    async selectSample(id: string) {
      state.selection = { kind: "sample", id };
      await fetchLb();
    },
    async selectManualPoint(text: string) {
      try {
        state.selection = { kind: "manual", point: parseManualPoint(text, meta.p) };
      } catch (err) {
        showError(err instanceof Error ? err.message : String(err));
        return;
      }
      await fetchLb();
    },
    async setMode(mode: string) {
      state.mode = mode;
      if (EPS_MODES.includes(mode) && !(state.epsilon && state.epsilon > 0)) {
        state.epsilon = 1;
        epsilonInput.value = "1";
      }
      epsilonInput.disabled = !EPS_MODES.includes(mode);
      await fetchLb();
    },
    async setEpsilon(value: number | null) {
      state.epsilon = value;
      if (EPS_MODES.includes(state.mode)) await fetchLb();
    },
    setAxes(a: number, b: number) {
      state.axisA = a;
      state.axisB = b;
      redrawScatter();
      redrawOverlay();
    },
    setScale(value: number) {
      state.axisScale = value;
      scaleReadout.textContent = `segment scale: ${value.toPrecision(3)}`;
      redrawOverlay();
    },
    setColorBy(key: string | null) {
      state.colorBy = key;
      redrawOverlay();
    },
    async refresh() {
      await fetchLb();
    },
  };

  axisASelect.addEventListener("change", () =>
    app.setAxes(Number(axisASelect.value), state.axisB),
  );
  axisBSelect.addEventListener("change", () =>
    app.setAxes(state.axisA, Number(axisBSelect.value)),
  );
  modeSelect.addEventListener("change", () => void app.setMode(modeSelect.value));
  epsilonInput.addEventListener("change", () => {
    const v = epsilonInput.value.trim();
    void app.setEpsilon(v === "" ? null : Number(v));
  });
  scaleInput.addEventListener("input", () => {
    app.setScale(Math.pow(10, Number(scaleInput.value)));
  });
  colorSelect.addEventListener("change", () =>
    app.setColorBy(colorSelect.value === "" ? null : colorSelect.value),
  );
  manualButton.addEventListener("click", () =>
    void app.selectManualPoint(manualInput.value),
  );

  redrawScatter();
  return app;
}

declare global {
  interface Window {
    localbiplotsApp?: Promise<App>;
  }
}

if (typeof document !== "undefined") {
  const mount = document.getElementById("app");
  if (mount) {
    window.localbiplotsApp = startApp(mount);
  }
}
