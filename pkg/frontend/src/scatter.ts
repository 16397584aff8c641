/** SVG scatter of the sample embedding: one mark per sample. */

import { EmbeddingPayload } from "./api.js";
import { Extent, extentOf, makeScale, PlotScale } from "./scale.js";

export const SVG_NS = "http://www.w3.org/2000/svg";
export const PLOT_WIDTH = 640;
export const PLOT_HEIGHT = 480;
export const PLOT_MARGIN = 36;

const GROUP_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

export interface ScatterView {
  svg: SVGSVGElement;
  scale: PlotScale;
  marks: SVGCircleElement[];
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

export function renderScatter(
  container: HTMLElement,
  embedding: EmbeddingPayload,
  axisA: number,
  axisB: number | null,
  sampleGroup: number[] | null,
  onSelect: (id: string) => void,
): ScatterView | null {
  container.replaceChildren();
  if (!embedding.coords || embedding.coords.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No samples to display.";
    container.appendChild(empty);
    return null;
  }

  const xs = embedding.coords.map((row) => row[axisA]);
  // A one-dimensional embedding is drawn along a flat line.
  const ys = axisB === null ? embedding.coords.map(() => 0) : embedding.coords.map((row) => row[axisB]);
  const scale = makeScale(
    extentOf(xs),
    extentOf(ys),
    PLOT_WIDTH,
    PLOT_HEIGHT,
    PLOT_MARGIN,
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

  const marks: SVGCircleElement[] = [];
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

function drawAxes(svg: SVGSVGElement, axisA: number, axisB: number | null): void {
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
