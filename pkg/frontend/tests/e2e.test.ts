// End-to-end session flow: the real HTTP client and controller running
// against an in-process stand-in that implements the backend contract
// (randomized per-session clip order, idempotent submissions, resume).

import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { HttpSurveyApi } from "../src/api.js";
import { SessionController } from "../src/controller.js";

interface StoredResponse {
  clip_id: string;
  heard_meaning: boolean;
  transcription: string;
  listen_count: number;
}

class MockBackend {
  clips: string[];
  sessions = new Map<string, { order: string[]; responses: Map<string, StoredResponse> }>();
  private counter = 0;

  constructor(nExperiment = 12) {
    this.clips = [
      ...Array.from({ length: nExperiment }, (_, i) => `exp-${String(i).padStart(2, "0")}`),
      "attention-1",
      "attention-2",
    ];
  }

  private shuffle(seed: number): string[] {
    // deterministic LCG shuffle so the test can assert randomization
    const order = [...this.clips];
    let state = seed;
    for (let i = order.length - 1; i > 0; i--) {
      state = (state * 1103515245 + 12345) % 2147483648;
      const j = state % (i + 1);
      [order[i], order[j]] = [order[j], order[i]];
    }
    return order;
  }

  fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");

    if (method === "POST" && path === "/api/sessions") {
      this.counter += 1;
      const id = `s${this.counter}`;
      this.sessions.set(id, { order: this.shuffle(this.counter * 977), responses: new Map() });
      return json({ session_id: id, clips: this.sessions.get(id)!.order });
    }

    let m = path.match(/^\/api\/sessions\/([^/]+)$/);
    if (method === "GET" && m) {
      const session = this.sessions.get(m[1]);
      if (!session) return json({ detail: "unknown session" }, 404);
      return json({
        session_id: m[1],
        clips: session.order,
        answered: [...session.responses.keys()].sort(),
        complete: session.responses.size === session.order.length,
      });
    }

    m = path.match(/^\/api\/sessions\/([^/]+)\/responses$/);
    if (method === "POST" && m) {
      const session = this.sessions.get(m[1]);
      if (!session) return json({ detail: "unknown session" }, 404);
      const body = JSON.parse(String(init?.body)) as StoredResponse;
      if (body.heard_meaning && body.transcription.trim() === "") {
        return json({ detail: "heard_meaning requires a transcription" }, 422);
      }
      if (!session.order.includes(body.clip_id)) {
        return json({ detail: "unknown clip" }, 404);
      }
      const existing = session.responses.get(body.clip_id);
      if (existing) return json({ stored: existing, duplicate: true });
      session.responses.set(body.clip_id, body);
      return json({ stored: body, duplicate: false });
    }

    return json({ detail: "not found" }, 404);
  };
}

function json(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

let backend: MockBackend;
const realFetch = globalThis.fetch;

beforeEach(() => {
  backend = new MockBackend();
  globalThis.fetch = backend.fetch as typeof fetch;
});

afterEach(() => {
  globalThis.fetch = realFetch;
});

describe("survey session end to end", () => {
  it("completes a 14-clip session in the served random order", async () => {
    const controller = new SessionController(new HttpSurveyApi());
    await controller.start();
    expect(controller.phase).toBe("active");
    const served = backend.sessions.get(controller.sessionId)!.order;
    expect(served).toHaveLength(14);
    expect([...served].sort()).toEqual([...backend.clips].sort());
    expect(served).not.toEqual(backend.clips); // randomized, not as declared

    const seen: string[] = [];
    while (controller.phase === "active") {
      const view = controller.current!;
      seen.push(view.clipId);
      controller.markPlayed();
      if (view.index % 3 === 0) {
        controller.setHeardMeaning(true);
        controller.setTranscription("hurn glights grew");
      }
      await controller.submit();
    }
    expect(controller.phase).toBe("complete");
    expect(seen).toEqual(served);

    const responses = backend.sessions.get(controller.sessionId)!.responses;
    expect(responses.size).toBe(14);
    for (const clipId of served) {
      expect(responses.has(clipId)).toBe(true);
    }
  });

  it("submissions are idempotent at the wire level", async () => {
    const api = new HttpSurveyApi();
    const controller = new SessionController(api);
    await controller.start();
    const clipId = controller.current!.clipId;
    controller.markPlayed();
    await controller.submit();

    // a retry of the same clip (e.g. a lost ACK) is a no-op
    const retry = await api.submitResponse(controller.sessionId, {
      clipId,
      heardMeaning: true,
      transcription: "late revision",
      listenCount: 9,
    });
    expect(retry.duplicate).toBe(true);
    const stored = backend.sessions.get(controller.sessionId)!.responses.get(clipId)!;
    expect(stored.heard_meaning).toBe(false); // the first submission stands
  });

  it("two parallel sessions get different orders and isolated state", async () => {
    const a = new SessionController(new HttpSurveyApi());
    const b = new SessionController(new HttpSurveyApi());
    await a.start();
    await b.start();
    const orderA = backend.sessions.get(a.sessionId)!.order;
    const orderB = backend.sessions.get(b.sessionId)!.order;
    expect(a.sessionId).not.toBe(b.sessionId);
    expect(orderA).not.toEqual(orderB);

    a.markPlayed();
    await a.submit();
    expect(backend.sessions.get(a.sessionId)!.responses.size).toBe(1);
    expect(backend.sessions.get(b.sessionId)!.responses.size).toBe(0);
  });

  it("resumes an interrupted session at the first unanswered clip", async () => {
    const first = new SessionController(new HttpSurveyApi());
    await first.start();
    const sid = first.sessionId;
    for (let i = 0; i < 5; i++) {
      first.markPlayed();
      await first.submit();
    }

    const resumed = new SessionController(new HttpSurveyApi());
    await resumed.start(sid);
    expect(resumed.sessionId).toBe(sid);
    const order = backend.sessions.get(sid)!.order;
    expect(resumed.current?.clipId).toBe(order[5]);
    while (resumed.phase === "active") {
      resumed.markPlayed();
      await resumed.submit();
    }
    expect(backend.sessions.get(sid)!.responses.size).toBe(14);
  });

  it("server-side validation errors surface as exceptions, nothing stored", async () => {
    const api = new HttpSurveyApi();
    const controller = new SessionController(api);
    await controller.start();
    await expect(
      api.submitResponse(controller.sessionId, {
        clipId: controller.current!.clipId,
        heardMeaning: true,
        transcription: "",
        listenCount: 1,
      }),
    ).rejects.toThrow(/422/);
    expect(backend.sessions.get(controller.sessionId)!.responses.size).toBe(0);
  });
});
