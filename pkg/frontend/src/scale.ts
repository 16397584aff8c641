/** Affine mapping from embedding coordinates to SVG pixels.
 *
 * This is the only arithmetic the UI performs on server numbers.
 */

export interface PlotScale {
  x(value: number): number;
  y(value: number): number;
}

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: number[], padFraction = 0.08): Extent {
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

export function makeScale(
  xExtent: Extent,
  yExtent: Extent,
  width: number,
  height: number,
  margin: number,
): PlotScale {
  const sx = (width - 2 * margin) / (xExtent.max - xExtent.min);
  const sy = (height - 2 * margin) / (yExtent.max - yExtent.min);
  return {
    x: (v) => margin + (v - xExtent.min) * sx,
    // SVG y grows downward; embedding y grows upward.
    y: (v) => height - margin - (v - yExtent.min) * sy,
  };
}
