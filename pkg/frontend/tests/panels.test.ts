// Status, parameters, and priority panels against recorded responses.

import { describe, expect, it } from "vitest";
import { ApiClient } from "../src/api.js";
import {
  renderParameters,
  renderPrioritySliders,
  renderStatus,
} from "../src/render.js";
import { statusView, validateParameters } from "../src/viewmodel.js";
import type { SessionState } from "../src/types.js";

import sessionFeasible from "./fixtures/session_feasible.json";
import sessionInfeasible from "./fixtures/session_infeasible.json";
import prioritiesDefault from "./fixtures/priorities_default.json";
import prioritiesBoosted from "./fixtures/priorities_boosted.json";

const feasible = sessionFeasible as unknown as SessionState;
const infeasible = sessionInfeasible as unknown as SessionState;
const prioDefault = prioritiesDefault as unknown as SessionState;
const prioBoosted = prioritiesBoosted as unknown as SessionState;

describe("status panel", () => {
  it("summarizes a proven optimal solution", () => {
    const status = statusView(feasible);
    expect(status.mode).toBe("Feasible");
    expect(status.summary).toContain("2 teams");
    expect(status.summary).toContain("proven optimal");
    expect(renderStatus(status)).toContain("mode-feasible");
  });

  it("reports infeasibility without inventing an allocation", () => {
    const status = statusView(infeasible);
    expect(status.mode).toBe("Infeasible");
    expect(status.summary).toContain("no allocation");
  });

  it("summarizes a relaxed proposal with its unset count", () => {
    const status = statusView(prioDefault);
    expect(status.summary).toMatch(/1 unset/);
  });
});

describe("parameters panel", () => {
  it("mirrors the config echoed by the server", () => {
    const html = renderParameters(feasible.config, 30, {});
    expect(html).toContain('class="clique" checked');
    expect(html).toContain('class="symmetry" checked');
    expect(html).toContain('value="TaskAllocated" checked');
    expect(html).toContain('value="Overlap"');
    expect(html).not.toContain('value="Overlap" checked');
  });

  it("blocks a zero timeout client-side", () => {
    const errors = validateParameters({ timeout: 0, config: {} });
    expect(errors.timeout).toBeDefined();
    const html = renderParameters(feasible.config, 0, errors);
    expect(html).toContain("field-error");
    expect(html).toContain("disabled");
  });

  it("accepts a positive timeout", () => {
    expect(validateParameters({ timeout: 30, config: {} })).toEqual({});
    const html = renderParameters(feasible.config, 30, {});
    expect(html).not.toContain("disabled");
  });

  it("rejects non-integer or non-positive weights like the server does", () => {
    expect(
      validateParameters({ timeout: 30, config: {}, weights: { a1: 0 } }).weights,
    ).toBeDefined();
    expect(
      validateParameters({ timeout: 30, config: {}, weights: { a1: 1.5 } })
        .weights,
    ).toBeDefined();
    expect(
      validateParameters({ timeout: 30, config: {}, weights: { a1: 5 } }),
    ).toEqual({});
  });
});

describe("priority sliders", () => {
  it("renders one slider per activity with the session's weights", () => {
    const html = renderPrioritySliders(["a1", "a2", "a3"], prioBoosted.priorities);
    expect([...html.matchAll(/type="range"/g)]).toHaveLength(3);
    const boosted = Object.entries(prioBoosted.priorities)[0]!;
    expect(html).toContain(`data-activity="${boosted[0]}"`);
    expect(html).toContain(`value="${boosted[1]}"`);
  });

  it("a raised weight flips the unset task in the server's proposal", () => {
    const before = prioDefault.solution!;
    const after = prioBoosted.solution!;
    expect(before.kind).toBe("relaxed");
    expect(after.kind).toBe("relaxed");
    if (before.kind !== "relaxed" || after.kind !== "relaxed") return;
    const target = Object.keys(prioBoosted.priorities)[0]!;
    expect(before.unallocated).toContain(target);
    expect(after.unallocated).not.toContain(target);
    expect(Object.keys(after.allocation)).toContain(target);
  });

  it("submits weights as integers keyed by activity", async () => {
    const requests: { url: string; body: unknown }[] = [];
    const api = new ApiClient("", async (url, init) => {
      requests.push({ url, body: JSON.parse(init!.body as string) });
      return new Response(JSON.stringify(prioBoosted), { status: 200 });
    });
    await api.tunePriorities("s3", { a3: 5 });
    expect(requests[0]!.url).toBe("/sessions/s3/priorities");
    expect(requests[0]!.body).toEqual({ weights: { a3: 5 } });
  });
});
