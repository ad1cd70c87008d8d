// Client-side mirror of the server's Gantt checker.  Overlapping bars
// within a team row indicate a bug somewhere, so the view model refuses
// to render such a payload instead of drawing it.

import type { GanttPayload } from "./types.js";

export const UNSET_ROW = "Unset";

function conflictInTime(
  a: { start: number; end: number },
  b: { start: number; end: number },
  strictTouch: boolean,
): boolean {
  // symmetrized window conflict; without strictTouch, touching windows
  // (end of one equals start of the other) also conflict
  if (strictTouch) {
    return a.start < b.end && b.start < a.end;
  }
  return a.start <= b.end && b.start <= a.end;
}

export function checkGantt(
  gantt: GanttPayload,
  strictTouch = false,
): string[] {
  const problems: string[] = [];
  const seen = new Map<string, number>();
  for (const row of gantt.rows) {
    for (const entry of row.entries) {
      seen.set(entry.activity, (seen.get(entry.activity) ?? 0) + 1);
    }
    if (row.row === UNSET_ROW) {
      continue;
    }
    for (let i = 0; i < row.entries.length; i++) {
      for (let j = i + 1; j < row.entries.length; j++) {
        const a = row.entries[i]!;
        const b = row.entries[j]!;
        if (conflictInTime(a, b, strictTouch)) {
          problems.push(
            `row ${row.row}: ${a.activity} and ${b.activity} conflict in time`,
          );
        }
      }
    }
  }
  for (const [activity, count] of seen) {
    if (count !== 1) {
      problems.push(`activity ${activity} appears ${count} times`);
    }
  }
  return problems;
}
