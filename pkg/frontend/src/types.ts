// Payload shapes served by the session API.  The client renders these
// verbatim: it never computes allocations, conflicts, or objectives itself.

export interface InstanceDoc {
  horizon_hours: number;
  activities: { id: string; start: number; end: number; label?: string }[];
  teams: { id: string; label?: string }[];
  compat: Record<string, string[]>;
  same_pairs?: [string, string][];
}

export interface GanttEntry {
  activity: string;
  start: number;
  end: number;
}

export interface GanttRow {
  row: string;
  entries: GanttEntry[];
}

export interface GanttPayload {
  rows: GanttRow[];
  conflict_highlight: string[];
}

export interface OptimalSolutionPayload {
  kind: "optimal";
  allocation: Record<string, string>;
  used_teams: string[];
  objective: number;
  proven_optimal: boolean;
}

export interface RelaxedSolutionPayload {
  kind: "relaxed";
  allocation: Record<string, string>;
  unallocated: string[];
  satisfied_weight: number;
  proven_optimal: boolean;
}

export type SolutionPayload = OptimalSolutionPayload | RelaxedSolutionPayload;

export interface ConflictPayload {
  kind: "MUS" | "MCS";
  labels: string[];
  text: Record<string, string>;
  involved_activities: string[];
  involved_teams: string[];
  minimal: boolean;
}

export interface SessionConfig {
  clique: boolean;
  symmetry: boolean;
  soft_kinds: string[];
  strict_touch: boolean;
}

export type SessionMode =
  | "Idle"
  | "Feasible"
  | "Infeasible"
  | "LocalResolution"
  | "GlobalResolution"
  | "PriorityTuning";

export interface HistoryEvent {
  op: string;
  args: Record<string, unknown>;
}

export interface SessionState {
  session_id: string;
  mode: SessionMode;
  relaxed_labels: string[];
  overrides: { activity: string; team: string; mode: string }[];
  priorities: Record<string, number>;
  solution: SolutionPayload | null;
  conflict: ConflictPayload | null;
  history: HistoryEvent[];
  gantt: GanttPayload | null;
  config: SessionConfig;
}

export interface SessionRequest {
  instance_id: string;
  config?: Partial<SessionConfig>;
  budget?: number;
}
