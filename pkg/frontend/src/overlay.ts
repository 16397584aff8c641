/** Local-biplot axis segments overlaid on the scatter.
 *
 * Each variable j becomes one segment from the query point's embedded
 * location f(z) to f(z) + scale * (axes[j][axisA], axes[j][axisB]).  The raw
 * server numbers are kept verbatim in data attributes so tests (and curious
 * analysts) can read exactly what the API returned.
 */

import { LbPayload } from "./api.js";
import { PlotScale } from "./scale.js";
import { SVG_NS } from "./scatter.js";

const VARIABLE_COLORS = ["#444444", "#e69f00", "#56b4e9", "#009e73", "#cc79a7"];

export function clearOverlay(svg: SVGSVGElement): void {
  const layer = svg.querySelector("g.lb-overlay");
  if (layer) layer.replaceChildren();
}

export function renderOverlay(
  svg: SVGSVGElement,
  payload: LbPayload,
  axisA: number,
  axisB: number | null,
  axisScale: number,
  scale: PlotScale,
  columns: string[],
  colorGroups: number[] | null,
): void {
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
        VARIABLE_COLORS[(colorGroups[j] + 1) % VARIABLE_COLORS.length],
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
