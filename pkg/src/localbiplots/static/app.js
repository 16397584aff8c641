"use strict";
(() => {
  // src/api.ts
  var ApiError = class extends Error {
    constructor(message, status) {
      super(message);
      this.status = status;
    }
  };
  async function parseJson(resp) {
    const text = await resp.text();
    let body;
    try {
      body = JSON.parse(text);
    } catch {
      throw new ApiError(`invalid JSON from server (status ${resp.status})`, resp.status);
    }
    if (!resp.ok) {
      const message = typeof body === "object" && body !== null && "error" in body ? String(body.error) : `HTTP ${resp.status}`;
      throw new ApiError(message, resp.status);
    }
    return body;
  }
  var ApiClient = class {
    constructor(base = "") {
      this.base = base;
    }
    async embedding() {
      const resp = await fetch(`${this.base}/api/embedding`);
      return await parseJson(resp);
    }
    async meta() {
      const resp = await fetch(`${this.base}/api/meta`);
      return await parseJson(resp);
    }
    async correlation() {
      const resp = await fetch(`${this.base}/api/correlation`);
      return await parseJson(resp);
    }
    async lb(request, signal) {
      const resp = await fetch(`${this.base}/api/lb`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(request),
        signal
      });
      return await parseJson(resp);
    }
  };

  // src/scale.ts
  function extentOf(values, padFraction = 0.08) {
    let min = Math.min(...values);
    let max = Math.max(...values);
    if (!Number.isFinite(min) || !Number.isFinite(max)) {
      min = -1;
      max = 1;
    }
    if (min === max) {
      min -= 1;
      max += 1;
    }
    const pad = (max - min) * padFraction;
    return { min: min - pad, max: max + pad };
  }
  function makeScale(xExtent, yExtent, width, height, margin) {
    const sx = (width - 2 * margin) / (xExtent.max - xExtent.min);
    const sy = (height - 2 * margin) / (yExtent.max - yExtent.min);
    return {
      x: (v) => margin + (v - xExtent.min) * sx,
      // SVG y grows downward; embedding y grows upward.
      y: (v) => height - margin - (v - yExtent.min) * sy
    };
  }

  // src/scatter.ts
  var SVG_NS = "http://www.w3.org/2000/svg";
  var PLOT_WIDTH = 640;
  var PLOT_HEIGHT = 480;
  var PLOT_MARGIN = 36;
  var GROUP_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];
  function svgEl(tag) {
    return document.createElementNS(SVG_NS, tag);
  }
  function renderScatter(container, embedding, axisA, axisB, sampleGroup, onSelect) {
    container.replaceChildren();
    if (!embedding.coords || embedding.coords.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "No samples to display.";
      container.appendChild(empty);
      return null;
    }
    const xs = embedding.coords.map((row) => row[axisA]);
    const ys = axisB === null ? embedding.coords.map(() => 0) : embedding.coords.map((row) => row[axisB]);
    const scale = makeScale(
      extentOf(xs),
      extentOf(ys),
      PLOT_WIDTH,
      PLOT_HEIGHT,
      PLOT_MARGIN
    );
    const svg = svgEl("svg");
    svg.setAttribute("viewBox", `0 0 ${PLOT_WIDTH} ${PLOT_HEIGHT}`);
    svg.setAttribute("width", String(PLOT_WIDTH));
    svg.setAttribute("height", String(PLOT_HEIGHT));
    svg.setAttribute("class", "scatter");
    drawAxes(svg, axisA, axisB);
    const overlayLayer = svgEl("g");
    overlayLayer.setAttribute("class", "lb-overlay");
    const markLayer = svgEl("g");
    markLayer.setAttribute("class", "marks");
    svg.appendChild(overlayLayer);
    svg.appendChild(markLayer);
    const marks = [];
    embedding.ids.forEach((id, i) => {
      const mark = svgEl("circle");
      mark.setAttribute("class", "sample");
      mark.setAttribute("data-sample", id);
      mark.setAttribute("cx", String(scale.x(xs[i])));
      mark.setAttribute("cy", String(scale.y(ys[i])));
      mark.setAttribute("r", "5");
      if (sampleGroup && sampleGroup.length === embedding.ids.length) {
        mark.setAttribute("fill", GROUP_COLORS[sampleGroup[i] % GROUP_COLORS.length]);
        mark.setAttribute("data-group", String(sampleGroup[i]));
      } else {
        mark.setAttribute("fill", GROUP_COLORS[0]);
      }
      const title = svgEl("title");
      title.textContent = id;
      mark.appendChild(title);
      mark.addEventListener("click", () => onSelect(id));
      markLayer.appendChild(mark);
      marks.push(mark);
    });
    container.appendChild(svg);
    return { svg, scale, marks };
  }
  function drawAxes(svg, axisA, axisB) {
    const frame = svgEl("rect");
    frame.setAttribute("x", String(PLOT_MARGIN));
    frame.setAttribute("y", String(PLOT_MARGIN));
    frame.setAttribute("width", String(PLOT_WIDTH - 2 * PLOT_MARGIN));
    frame.setAttribute("height", String(PLOT_HEIGHT - 2 * PLOT_MARGIN));
    frame.setAttribute("class", "frame");
    svg.appendChild(frame);
    const xLabel = svgEl("text");
    xLabel.setAttribute("x", String(PLOT_WIDTH / 2));
    xLabel.setAttribute("y", String(PLOT_HEIGHT - 8));
    xLabel.setAttribute("class", "axis-label");
    xLabel.textContent = `axis ${axisA + 1}`;
    svg.appendChild(xLabel);
    const yLabel = svgEl("text");
    yLabel.setAttribute("x", "12");
    yLabel.setAttribute("y", String(PLOT_HEIGHT / 2));
    yLabel.setAttribute("class", "axis-label");
    yLabel.setAttribute("transform", `rotate(-90 12 ${PLOT_HEIGHT / 2})`);
    yLabel.textContent = axisB === null ? "(1-D embedding)" : `axis ${axisB + 1}`;
    svg.appendChild(yLabel);
  }

  // src/overlay.ts
  var VARIABLE_COLORS = ["#444444", "#e69f00", "#56b4e9", "#009e73", "#cc79a7"];
  function clearOverlay(svg) {
    const layer = svg.querySelector("g.lb-overlay");
    if (layer) layer.replaceChildren();
  }
  function renderOverlay(svg, payload, axisA, axisB, axisScale, scale, columns, colorGroups) {
    const layer = svg.querySelector("g.lb-overlay");
    if (!layer) return;
    layer.replaceChildren();
    const fa = payload.f[axisA];
    const fb = axisB === null ? 0 : payload.f[axisB];
    const x0 = scale.x(fa);
    const y0 = scale.y(fb);
    payload.axes.forEach((row, j) => {
      const va = row[axisA];
      const vb = axisB === null ? 0 : row[axisB];
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "lb-axis");
      line.setAttribute("x1", String(x0));
      line.setAttribute("y1", String(y0));
      line.setAttribute("x2", String(scale.x(fa + axisScale * va)));
      line.setAttribute("y2", String(scale.y(fb + axisScale * vb)));
      line.setAttribute("data-variable", columns[j] ?? `v${j + 1}`);
      line.setAttribute("data-axis-a", String(va));
      line.setAttribute("data-axis-b", String(vb));
      if (colorGroups && colorGroups.length === payload.axes.length) {
        line.setAttribute(
          "stroke",
          VARIABLE_COLORS[(colorGroups[j] + 1) % VARIABLE_COLORS.length]
        );
        line.setAttribute("data-color-group", String(colorGroups[j]));
      } else {
        line.setAttribute("stroke", VARIABLE_COLORS[0]);
      }
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `${columns[j] ?? `v${j + 1}`}: (${va}, ${vb})`;
      line.appendChild(title);
      layer.appendChild(line);
    });
    const anchor = document.createElementNS(SVG_NS, "circle");
    anchor.setAttribute("class", "lb-anchor");
    anchor.setAttribute("cx", String(x0));
    anchor.setAttribute("cy", String(y0));
    anchor.setAttribute("r", "3.5");
    anchor.setAttribute("data-f-a", String(fa));
    anchor.setAttribute("data-f-b", String(fb));
    layer.appendChild(anchor);
  }

  // src/state.ts
  var EPS_MODES = ["eps-positive", "eps-negative"];
  function defaultState(k, modes) {
    const mode = modes.includes("analytic") ? "analytic" : modes[0];
    return {
      axisA: 0,
      axisB: k > 1 ? 1 : 0,
      mode,
      epsilon: EPS_MODES.includes(mode) ? 1 : null,
      colorBy: null,
      axisScale: 1,
      selection: null
    };
  }
  function validateState(state, k, p) {
    const problems = [];
    if (!Number.isInteger(state.axisA) || state.axisA < 0 || state.axisA >= k) {
      problems.push(`axis A must be an integer in [0, ${k})`);
    }
    if (!Number.isInteger(state.axisB) || state.axisB < 0 || state.axisB >= k) {
      problems.push(`axis B must be an integer in [0, ${k})`);
    }
    if (k > 1 && state.axisA === state.axisB) {
      problems.push("axis A and axis B must differ");
    }
    if (EPS_MODES.includes(state.mode) && !(state.epsilon !== null && state.epsilon > 0)) {
      problems.push(`mode ${state.mode} requires epsilon > 0`);
    }
    if (state.selection?.kind === "manual" && state.selection.point.length !== p) {
      problems.push(`manual point must have length ${p}`);
    }
    if (!(state.axisScale > 0)) {
      problems.push("axis scale must be positive");
    }
    return problems;
  }
  function lbRequestFor(state) {
    if (!state.selection) return null;
    const base = {
      mode: state.mode,
      epsilon: EPS_MODES.includes(state.mode) ? state.epsilon : null
    };
    return state.selection.kind === "sample" ? { sample: state.selection.id, ...base } : { point: state.selection.point, ...base };
  }
  function parseManualPoint(text, p) {
    const parts = text.split(/[\s,]+/).map((t) => t.trim()).filter((t) => t.length > 0);
    const values = parts.map((t) => Number(t));
    if (values.some((v) => !Number.isFinite(v))) {
      throw new Error("manual point entries must be numbers");
    }
    if (values.length !== p) {
      throw new Error(`manual point must have ${p} entries, got ${values.length}`);
    }
    return values;
  }

  // src/main.ts
  function el(tag, className) {
    const node = document.createElement(tag);
    if (className) node.className = className;
    return node;
  }
  function option(value, label) {
    const o = document.createElement("option");
    o.value = value;
    o.textContent = label ?? value;
    return o;
  }
  async function startApp(root, apiBase = "") {
    const api = new ApiClient(apiBase);
    root.replaceChildren();
    const banner = el("div", "banner");
    banner.setAttribute("role", "alert");
    banner.hidden = true;
    root.appendChild(banner);
    const showError = (message) => {
      banner.hidden = false;
      banner.textContent = message;
    };
    const clearError = () => {
      banner.hidden = true;
      banner.textContent = "";
    };
    let meta;
    let embedding;
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
    scaleInput.value = "0";
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
    const labelled = (text, node) => {
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
    let view = null;
    let lastLb = null;
    let inflight = null;
    const effectiveAxisB = () => meta.k > 1 ? state.axisB : null;
    const colorGroups = () => state.colorBy ? meta.variable_groups[state.colorBy] ?? null : null;
    const redrawScatter = () => {
      view = renderScatter(
        plot,
        embedding,
        state.axisA,
        effectiveAxisB(),
        meta.sample_group,
        (id) => void app.selectSample(id)
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
        colorGroups()
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
      if (inflight) inflight.abort();
      const controller = new AbortController();
      inflight = controller;
      lastLb = null;
      if (view) clearOverlay(view.svg);
      clearError();
      try {
        const payload = await api.lb(request, controller.signal);
        if (inflight !== controller) return;
        lastLb = payload;
        redrawOverlay();
      } catch (err) {
        if (controller.signal.aborted) return;
        showError(err instanceof ApiError ? err.message : `request failed: ${err}`);
      } finally {
        if (inflight === controller) inflight = null;
      }
    };
    const app = {
      state,
      meta,
      embedding,
      get lastLb() {
        return lastLb;
      },
      async selectSample(id) {
        state.selection = { kind: "sample", id };
        await fetchLb();
      },
      async selectManualPoint(text) {
        try {
          state.selection = { kind: "manual", point: parseManualPoint(text, meta.p) };
        } catch (err) {
          showError(err instanceof Error ? err.message : String(err));
          return;
        }
        await fetchLb();
      },
      async setMode(mode) {
        state.mode = mode;
        if (EPS_MODES.includes(mode) && !(state.epsilon && state.epsilon > 0)) {
          state.epsilon = 1;
          epsilonInput.value = "1";
        }
        epsilonInput.disabled = !EPS_MODES.includes(mode);
        await fetchLb();
      },
      async setEpsilon(value) {
        state.epsilon = value;
        if (EPS_MODES.includes(state.mode)) await fetchLb();
      },
      setAxes(a, b) {
        state.axisA = a;
        state.axisB = b;
        redrawScatter();
        redrawOverlay();
      },
      setScale(value) {
        state.axisScale = value;
        scaleReadout.textContent = `segment scale: ${value.toPrecision(3)}`;
        redrawOverlay();
      },
      setColorBy(key) {
        state.colorBy = key;
        redrawOverlay();
      },
      async refresh() {
        await fetchLb();
      }
    };
    axisASelect.addEventListener(
      "change",
      () => app.setAxes(Number(axisASelect.value), state.axisB)
    );
    axisBSelect.addEventListener(
      "change",
      () => app.setAxes(state.axisA, Number(axisBSelect.value))
    );
    modeSelect.addEventListener("change", () => void app.setMode(modeSelect.value));
    epsilonInput.addEventListener("change", () => {
      const v = epsilonInput.value.trim();
      void app.setEpsilon(v === "" ? null : Number(v));
    });
    scaleInput.addEventListener("input", () => {
      app.setScale(Math.pow(10, Number(scaleInput.value)));
    });
    colorSelect.addEventListener(
      "change",
      () => app.setColorBy(colorSelect.value === "" ? null : colorSelect.value)
    );
    manualButton.addEventListener(
      "click",
      () => void app.selectManualPoint(manualInput.value)
    );
    redrawScatter();
    return app;
  }
  if (typeof document !== "undefined") {
    const mount = document.getElementById("app");
    if (mount) {
      window.localbiplotsApp = startApp(mount);
    }
  }
})();
//# sourceMappingURL=app.js.map
