// Resolution wizard contract: relax buttons exist only for served MUS
// labels, MCS acceptance subsets are submitted verbatim, and server
// errors surface as inline messages.

import { describe, expect, it } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import { renderErrorBanner, renderWizard } from "../src/render.js";
import { wizardView } from "../src/viewmodel.js";
import type { SessionState } from "../src/types.js";

import localBegin from "./fixtures/local_begin.json";
import localResolved from "./fixtures/local_resolved.json";
import globalBegin from "./fixtures/global_begin.json";
import globalPartial from "./fixtures/global_partial_accept.json";
import globalFinal from "./fixtures/global_final_accept.json";
import error409 from "./fixtures/error_409_wrong_mode.json";
import error422 from "./fixtures/error_422_bad_override.json";

const mus = (localBegin as unknown as SessionState).conflict!;
const musNext = (localResolved as unknown as SessionState).conflict;
const mcs = (globalBegin as unknown as SessionState).conflict!;

// replays recorded responses and captures what the client sent
function recordedFetch(
  responses: { status: number; body: unknown }[],
  requests: { url: string; body: unknown }[],
) {
  let call = 0;
  return async (url: string, init?: RequestInit) => {
    requests.push({
      url,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    const next = responses[Math.min(call++, responses.length - 1)]!;
    return new Response(JSON.stringify(next.body), { status: next.status });
  };
}

describe("local resolution wizard", () => {
  it("renders one relax button per served MUS label and nothing else", () => {
    const html = renderWizard(wizardView(mus));
    const buttons = [...html.matchAll(/data-label="([^"]+)"/g)].map((m) => m[1]);
    expect(buttons).toEqual(mus.labels);
    expect(html).toContain("wizard-local");
    expect(html).not.toContain("checkbox");
  });

  it("shows the per-constraint text served with each label", () => {
    const html = renderWizard(wizardView(mus));
    for (const label of mus.labels) {
      expect(html).toContain(mus.text[label]!.replace(/</g, "&lt;"));
    }
  });

  it("after a relax the next served conflict replaces the list", () => {
    expect(musNext).not.toBeNull();
    const html = renderWizard(wizardView(musNext!));
    const buttons = [...html.matchAll(/data-label="([^"]+)"/g)].map((m) => m[1]);
    expect(buttons).toEqual(musNext!.labels);
    for (const old of mus.labels) {
      if (!musNext!.labels.includes(old)) {
        expect(buttons).not.toContain(old);
      }
    }
  });

  it("submits exactly the chosen label", async () => {
    const requests: { url: string; body: unknown }[] = [];
    const api = new ApiClient(
      "",
      recordedFetch([{ status: 200, body: localResolved }], requests),
    );
    await api.resolveLocal("s1", mus.labels[0]!);
    expect(requests).toHaveLength(1);
    expect(requests[0]!.url).toBe("/sessions/s1/resolution/local/resolve");
    expect(requests[0]!.body).toEqual({ label: mus.labels[0] });
  });
});

describe("global resolution wizard", () => {
  it("renders one accept checkbox per served MCS label", () => {
    const html = renderWizard(wizardView(mcs));
    const boxes = [...html.matchAll(/data-label="([^"]+)"/g)].map((m) => m[1]);
    expect(boxes).toEqual(mcs.labels);
    expect(html).toContain("wizard-global");
    expect(html).toContain("accept-selected");
  });

  it("submits the accepted subset verbatim", async () => {
    const requests: { url: string; body: unknown }[] = [];
    const api = new ApiClient(
      "",
      recordedFetch([{ status: 200, body: globalPartial }], requests),
    );
    const subset = [mcs.labels[0]!];
    await api.acceptCorrections("s1", subset);
    expect(requests[0]!.body).toEqual({ labels: subset });
  });

  it("a strict subset yields a recomputed proposal, the rest finishes", async () => {
    const requests: { url: string; body: unknown }[] = [];
    const api = new ApiClient(
      "",
      recordedFetch(
        [
          { status: 200, body: globalPartial },
          { status: 200, body: globalFinal },
        ],
        requests,
      ),
    );
    const afterPartial = await api.acceptCorrections("s1", [mcs.labels[0]!]);
    expect(afterPartial.conflict).not.toBeNull();
    expect(afterPartial.mode).toBe("GlobalResolution");
    const remainder = afterPartial.conflict!.labels;
    const done = await api.acceptCorrections("s1", remainder);
    expect(requests[1]!.body).toEqual({ labels: remainder });
    expect(done.mode).toBe("Feasible");
    expect(done.conflict).toBeNull();
    expect(done.solution).not.toBeNull();
  });

  it("flags a non-minimal proposal instead of presenting it as exact", () => {
    const nonMinimal = { ...mcs, minimal: false };
    const html = renderWizard(wizardView(nonMinimal));
    expect(html).toContain("may not be minimal");
  });
});

describe("error surfacing", () => {
  it("maps 409 responses to an inline message", async () => {
    const api = new ApiClient(
      "",
      recordedFetch([{ status: 409, body: (error409 as any).body }], []),
    );
    const err = await api.beginLocalResolution("s1").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    const banner = renderErrorBanner(err.detail);
    expect(banner).toContain("banner error");
    expect(banner).toContain(err.detail.replace(/</g, "&lt;"));
  });

  it("maps 422 responses to an inline message", async () => {
    const api = new ApiClient(
      "",
      recordedFetch([{ status: 422, body: (error422 as any).body }], []),
    );
    const err = await api
      .applyOverride("s1", "zz", "t1", "force")
      .catch((e) => e);
    expect(err.status).toBe(422);
    expect(typeof err.detail).toBe("string");
  });

  it("keeps the partial state from a 408 response", async () => {
    const api = new ApiClient(
      "",
      recordedFetch([{ status: 408, body: localBegin }], []),
    );
    const err = await api.beginLocalResolution("s1").catch((e) => e);
    expect(err.status).toBe(408);
    expect(err.partialState?.session_id).toBe(
      (localBegin as unknown as SessionState).session_id,
    );
  });
});
