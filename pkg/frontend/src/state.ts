/** View state: which axes, which query point, which mode, how to colour. */

export type QuerySelection =
  | { kind: "sample"; id: string }
  | { kind: "manual"; point: number[] };

export interface ViewState {
  axisA: number;
  axisB: number;
  mode: string;
  epsilon: number | null;
  colorBy: string | null;
  axisScale: number;
  selection: QuerySelection | null;
}

export const EPS_MODES = ["eps-positive", "eps-negative"];

export function defaultState(k: number, modes: string[]): ViewState {
  const mode = modes.includes("analytic") ? "analytic" : modes[0];
  return {
    axisA: 0,
    axisB: k > 1 ? 1 : 0,
    mode,
    epsilon: EPS_MODES.includes(mode) ? 1 : null,
    colorBy: null,
    axisScale: 1,
    selection: null,
  };
}

/** Problems with a proposed state; empty array means valid. */
export function validateState(state: ViewState, k: number, p: number): string[] {
  const problems: string[] = [];
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

/** The request an lb fetch would make for this state (null when nothing to fetch). */
export function lbRequestFor(state: ViewState): {
  sample?: string;
  point?: number[];
  mode: string;
  epsilon: number | null;
} | null {
  if (!state.selection) return null;
  const base = {
    mode: state.mode,
    epsilon: EPS_MODES.includes(state.mode) ? state.epsilon : null,
  };
  return state.selection.kind === "sample"
    ? { sample: state.selection.id, ...base }
    : { point: state.selection.point, ...base };
}

/** Parse a manual point entry: comma/space separated numbers. */
export function parseManualPoint(text: string, p: number): number[] {
  const parts = text
    .split(/[\s,]+/)
    .map((t) => t.trim())
    .filter((t) => t.length > 0);
  const values = parts.map((t) => Number(t));
  if (values.some((v) => !Number.isFinite(v))) {
    throw new Error("manual point entries must be numbers");
  }
  if (values.length !== p) {
    throw new Error(`manual point must have ${p} entries, got ${values.length}`);
  }
  return values;
}
