// Application wiring: mounts the rendered views and forwards user actions
// to the session API.  One active session per tab; every action awaits the
// server round-trip before re-rendering.

import { ApiClient, ApiError } from "./api.js";
import {
  renderErrorBanner,
  renderGantt,
  renderParameters,
  renderPrioritySliders,
  renderStatus,
  renderSuccessBanner,
  renderWizard,
} from "./render.js";
import {
  ganttView,
  statusView,
  validateParameters,
  wizardView,
} from "./viewmodel.js";
import type { InstanceDoc, SessionConfig, SessionState } from "./types.js";

const api = new ApiClient();

interface AppState {
  instanceDoc: InstanceDoc | null;
  session: SessionState | null;
  timeout: number;
  banner: string;
  dragActivity: string | null;
}

const app: AppState = {
  instanceDoc: null,
  session: null,
  timeout: 30,
  banner: "",
  dragActivity: null,
};

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function render(): void {
  const s = app.session;
  el("banner").innerHTML = app.banner;
  if (s === null) {
    el("status").innerHTML = "";
    el("gantt").innerHTML = "";
    el("wizard").innerHTML = "";
    el("priorities").innerHTML = "";
    return;
  }
  el("status").innerHTML = renderStatus(statusView(s));
  el("gantt").innerHTML = s.gantt
    ? renderGantt(ganttView(s.gantt, s.config.strict_touch))
    : "";
  el("wizard").innerHTML = s.conflict ? renderWizard(wizardView(s.conflict)) : "";
  el("parameters").innerHTML = renderParameters(
    s.config,
    app.timeout,
    validateParameters({ timeout: app.timeout, config: s.config }),
  );
  if (app.instanceDoc && s.mode !== "Feasible") {
    el("priorities").innerHTML = renderPrioritySliders(
      app.instanceDoc.activities.map((a) => a.id),
      s.priorities,
    );
  } else {
    el("priorities").innerHTML = "";
  }
}

async function act(work: () => Promise<SessionState>): Promise<void> {
  try {
    app.session = await work();
    app.banner = "";
  } catch (err) {
    if (err instanceof ApiError) {
      if (err.partialState) {
        app.session = err.partialState;
      }
      app.banner = renderErrorBanner(err.detail);
    } else {
      app.banner = renderErrorBanner(String(err));
    }
  }
  render();
}

async function openSession(doc: InstanceDoc): Promise<void> {
  const form = document.querySelector<HTMLFormElement>("#parameters form");
  const config: Partial<SessionConfig> = {};
  if (form) {
    config.clique = form.querySelector<HTMLInputElement>(".clique")?.checked;
    config.symmetry = form.querySelector<HTMLInputElement>(".symmetry")?.checked;
    const kinds = [...form.querySelectorAll<HTMLInputElement>(".soft-kind")]
      .filter((box) => box.checked)
      .map((box) => box.value);
    if (kinds.length > 0) config.soft_kinds = kinds;
  }
  const errors = validateParameters({ timeout: app.timeout, config });
  if (errors.timeout) {
    app.banner = renderErrorBanner(errors.timeout);
    render();
    return;
  }
  await act(async () => {
    const { instance_id } = await api.uploadInstance(doc);
    return api.createSession({ instance_id, config, budget: app.timeout });
  });
}

function sessionId(): string {
  if (!app.session) throw new Error("no active session");
  return app.session.session_id;
}

export function wireEvents(root: HTMLElement): void {
  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.matches("button.relax")) {
      const label = target.dataset.label!;
      void act(() => api.resolveLocal(sessionId(), label));
    } else if (target.matches("button.accept-selected")) {
      const labels = [
        ...root.querySelectorAll<HTMLInputElement>("input.accept:checked"),
      ].map((box) => box.dataset.label!);
      void act(async () => {
        const state = await api.acceptCorrections(sessionId(), labels);
        if (state.mode === "Feasible") {
          app.banner = renderSuccessBanner("schedule repaired");
        }
        return state;
      });
    } else if (target.matches("#begin-local")) {
      void act(() => api.beginLocalResolution(sessionId()));
    } else if (target.matches("#begin-global")) {
      void act(() => api.beginGlobalResolution(sessionId()));
    } else if (target.matches("#solve")) {
      void act(() => api.solve(sessionId()));
    }
  });

  // drag a bar between rows to force it onto a team (button fallback:
  // the override form in index.html posts the same request)
  root.addEventListener("dragstart", (event) => {
    const target = event.target as HTMLElement;
    if (target.matches(".bar")) {
      app.dragActivity = target.dataset.activity ?? null;
    }
  });
  root.addEventListener("dragover", (event) => event.preventDefault());
  root.addEventListener("drop", (event) => {
    const row = (event.target as HTMLElement).closest<HTMLElement>(".gantt-row");
    const activity = app.dragActivity;
    app.dragActivity = null;
    if (!row || !activity) return;
    const team = row.dataset.row;
    if (!team || team === "Unset") return;
    void act(() => api.applyOverride(sessionId(), activity, team, "force"));
  });

  root.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement;
    if (target.matches("input.weight")) {
      const weights: Record<string, number> = {};
      for (const slider of root.querySelectorAll<HTMLInputElement>("input.weight")) {
        const value = Number(slider.value);
        if (value !== 1) weights[slider.dataset.activity!] = value;
      }
      void act(() => api.tunePriorities(sessionId(), weights));
    } else if (target.matches("input.timeout")) {
      app.timeout = Number(target.value);
      render();
    } else if (target.matches("input#instance-file")) {
      const file = target.files?.[0];
      if (!file) return;
      void file.text().then((text) => {
        app.instanceDoc = JSON.parse(text) as InstanceDoc;
        return openSession(app.instanceDoc);
      });
    }
  });
}

export function start(): void {
  wireEvents(document.body);
  render();
}

if (typeof document !== "undefined" && document.getElementById("gantt")) {
  start();
}
