// HTML renderers.  Pure string producers over the view model so the
// component tests can assert on output without a browser; main.ts mounts
// the strings and wires events by delegation.

import type {
  GanttView,
  ParameterErrors,
  StatusView,
  WizardView,
} from "./viewmodel.js";
import type { SessionConfig } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function minutesToClock(minutes: number): string {
  const h = Math.floor(minutes / 60);
  const m = minutes % 60;
  return `${String(h).padStart(2, "0")}:${String(m).padStart(2, "0")}`;
}

export function renderGantt(view: GanttView): string {
  if (view.rows.length === 0) {
    return `<div class="gantt gantt-empty">no activities</div>`;
  }
  const rows = view.rows.map((row) => {
    const bars = row.bars.map((bar) => {
      const left = (bar.start / view.horizonEnd) * 100;
      const width = ((bar.end - bar.start) / view.horizonEnd) * 100;
      const classes = bar.highlighted ? "bar conflict" : "bar";
      const title = `${bar.activity} ${minutesToClock(bar.start)}-${minutesToClock(bar.end)}`;
      return (
        `<div class="${classes}" draggable="true"` +
        ` data-activity="${escapeHtml(bar.activity)}"` +
        ` style="left:${left.toFixed(2)}%;width:${width.toFixed(2)}%"` +
        ` title="${escapeHtml(title)}">${escapeHtml(bar.activity)}</div>`
      );
    });
    const rowClass = row.isUnset ? "gantt-row unset-row" : "gantt-row";
    return (
      `<div class="${rowClass}" data-row="${escapeHtml(row.row)}">` +
      `<span class="row-label">${escapeHtml(row.row)}</span>` +
      `<div class="row-track">${bars.join("")}</div></div>`
    );
  });
  return `<div class="gantt">${rows.join("")}</div>`;
}

export function renderStatus(status: StatusView): string {
  const relaxed = status.relaxedLabels.length
    ? `<div class="relaxed">relaxed: ${status.relaxedLabels.map(escapeHtml).join(", ")}</div>`
    : "";
  return (
    `<div class="status mode-${status.mode.toLowerCase()}">` +
    `<span class="mode">${escapeHtml(status.mode)}</span>` +
    `<span class="summary">${escapeHtml(status.summary)}</span>${relaxed}</div>`
  );
}

// Local mode lists the served MUS labels with one relax button each;
// global mode lists the served MCS labels with accept checkboxes and a
// single submit.  No controls exist for labels the server did not serve.
export function renderWizard(view: WizardView): string {
  const note = view.minimal
    ? ""
    : `<p class="warning">budget exceeded: this conflict may not be minimal</p>`;
  if (view.kind === "MUS") {
    const items = view.labels.map(
      (l) =>
        `<li><span class="constraint">${escapeHtml(l.text)}</span>` +
        `<button class="relax" data-label="${escapeHtml(l.label)}">relax</button></li>`,
    );
    return (
      `<div class="wizard wizard-local">${note}` +
      `<p>these requirements cannot all hold; relax one to continue:</p>` +
      `<ul>${items.join("")}</ul></div>`
    );
  }
  const items = view.labels.map(
    (l) =>
      `<li><label><input type="checkbox" class="accept" ` +
      `data-label="${escapeHtml(l.label)}" checked>` +
      `${escapeHtml(l.text)}</label></li>`,
  );
  return (
    `<div class="wizard wizard-global">${note}` +
    `<p>relaxing these requirements restores feasibility:</p>` +
    `<ul>${items.join("")}</ul>` +
    `<button class="accept-selected">accept selected</button></div>`
  );
}

export function renderSuccessBanner(message: string): string {
  return `<div class="banner success">${escapeHtml(message)}</div>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="banner error">${escapeHtml(message)}</div>`;
}

export function renderParameters(
  config: SessionConfig,
  timeout: number,
  errors: ParameterErrors,
): string {
  const softKinds = ["TaskAllocated", "Overlap", "Compatibility", "SamePair"];
  const kinds = softKinds.map((kind) => {
    const checked = config.soft_kinds.includes(kind) ? " checked" : "";
    return (
      `<label><input type="checkbox" class="soft-kind" value="${kind}"${checked}>` +
      `${kind}</label>`
    );
  });
  const timeoutError = errors.timeout
    ? `<span class="field-error">${escapeHtml(errors.timeout)}</span>`
    : "";
  return (
    `<form class="parameters">` +
    `<label><input type="checkbox" class="clique"${config.clique ? " checked" : ""}>` +
    `clique constraints</label>` +
    `<label><input type="checkbox" class="symmetry"${config.symmetry ? " checked" : ""}>` +
    `symmetry breaking</label>` +
    `<fieldset class="soft-kinds">${kinds.join("")}</fieldset>` +
    `<label>budget (s) <input type="number" class="timeout" value="${timeout}" ` +
    `min="1" step="1">${timeoutError}</label>` +
    `<button type="submit"${errors.timeout ? " disabled" : ""}>apply</button>` +
    `</form>`
  );
}

export function renderPrioritySliders(
  activities: string[],
  weights: Record<string, number>,
): string {
  const sliders = activities.map((aid) => {
    const value = weights[aid] ?? 1;
    return (
      `<label class="priority">${escapeHtml(aid)}` +
      `<input type="range" class="weight" data-activity="${escapeHtml(aid)}" ` +
      `min="1" max="100" value="${value}"><span class="value">${value}</span></label>`
    );
  });
  return `<div class="priorities">${sliders.join("")}</div>`;
}
