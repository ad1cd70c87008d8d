// View model derived from server state.  Pure functions from payloads to
// renderable structures; no allocation logic lives here, only ordering,
// grouping, and validation of what the server sent.

import { UNSET_ROW, checkGantt } from "./check.js";
import type {
  ConflictPayload,
  GanttPayload,
  GanttRow,
  SessionConfig,
  SessionState,
} from "./types.js";

export interface GanttBarView {
  activity: string;
  start: number;
  end: number;
  highlighted: boolean;
}

export interface GanttRowView {
  row: string;
  isUnset: boolean;
  bars: GanttBarView[];
}

export interface GanttView {
  rows: GanttRowView[];
  horizonEnd: number;
}

// Rows for display: the Unset row pinned on top when non-empty, hidden
// when empty; team rows keep the server's order.  Throws when the payload
// fails the client-side non-overlap check.
export function ganttView(
  gantt: GanttPayload,
  strictTouch = false,
): GanttView {
  const problems = checkGantt(gantt, strictTouch);
  if (problems.length > 0) {
    throw new Error(`refusing to render an inconsistent chart: ${problems[0]}`);
  }
  const highlight = new Set(gantt.conflict_highlight);
  const toView = (row: GanttRow): GanttRowView => ({
    row: row.row,
    isUnset: row.row === UNSET_ROW,
    bars: row.entries.map((e) => ({
      activity: e.activity,
      start: e.start,
      end: e.end,
      highlighted: highlight.has(e.activity),
    })),
  });
  const unset = gantt.rows.filter((r) => r.row === UNSET_ROW).map(toView);
  const teams = gantt.rows.filter((r) => r.row !== UNSET_ROW).map(toView);
  const rows = [...unset.filter((r) => r.bars.length > 0), ...teams];
  const horizonEnd = Math.max(
    60,
    ...rows.flatMap((r) => r.bars.map((b) => b.end)),
  );
  return { rows, horizonEnd };
}

export interface ConflictLabelView {
  label: string;
  text: string;
}

export interface WizardView {
  kind: "MUS" | "MCS";
  minimal: boolean;
  labels: ConflictLabelView[];
  involvedActivities: string[];
}

// The wizard lists exactly the served labels: relax buttons (MUS) and
// accept checkboxes (MCS) exist only for what the server proposed.
export function wizardView(conflict: ConflictPayload): WizardView {
  return {
    kind: conflict.kind,
    minimal: conflict.minimal,
    labels: conflict.labels.map((label) => ({
      label,
      text: conflict.text[label] ?? label,
    })),
    involvedActivities: conflict.involved_activities,
  };
}

export interface StatusView {
  mode: string;
  summary: string;
  relaxedLabels: string[];
}

export function statusView(state: SessionState): StatusView {
  const s = state.solution;
  let summary: string;
  if (s === null) {
    summary = "no allocation exists for the current constraints";
  } else if (s.kind === "optimal") {
    summary = `${Object.keys(s.allocation).length} tasks on ${s.objective} teams`
      + (s.proven_optimal ? " (proven optimal)" : " (not proven optimal)");
  } else {
    summary = `${Object.keys(s.allocation).length} tasks allocated, `
      + `${s.unallocated.length} unset (weight ${s.satisfied_weight})`;
  }
  return { mode: state.mode, summary, relaxedLabels: state.relaxed_labels };
}

export interface ParameterErrors {
  timeout?: string;
  weights?: string;
}

// Mirrors the server's 422 rules so bad submissions are blocked locally.
export function validateParameters(params: {
  timeout: number;
  config: Partial<SessionConfig>;
  weights?: Record<string, number>;
}): ParameterErrors {
  const errors: ParameterErrors = {};
  if (!(params.timeout > 0) || !Number.isFinite(params.timeout)) {
    errors.timeout = "budget must be a positive number";
  }
  for (const [activity, weight] of Object.entries(params.weights ?? {})) {
    if (!Number.isInteger(weight) || weight < 1) {
      errors.weights = `weight for ${activity} must be a positive integer`;
      break;
    }
  }
  return errors;
}
