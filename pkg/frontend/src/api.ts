// Thin client for the survey backend. Subjects only ever see opaque clip
// ids; no experiment metadata crosses this boundary.

export interface SessionInfo {
  sessionId: string;
  clips: string[];
  answered: string[];
}

export interface ResponseDraft {
  clipId: string;
  heardMeaning: boolean;
  transcription: string;
  listenCount: number;
}

export interface SubmitResult {
  duplicate: boolean;
}

export interface SurveyApi {
  createSession(): Promise<SessionInfo>;
  getSession(sessionId: string): Promise<SessionInfo>;
  clipUrl(clipId: string): string;
  submitResponse(sessionId: string, draft: ResponseDraft): Promise<SubmitResult>;
}

export class BackendUnreachable extends Error {}

async function request(url: string, init?: RequestInit): Promise<unknown> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new BackendUnreachable(String(err));
  }
  if (!response.ok) {
    throw new Error(`${url} -> ${response.status}`);
  }
  return response.json();
}

export class HttpSurveyApi implements SurveyApi {
  constructor(private base: string = "/api") {}

  async createSession(): Promise<SessionInfo> {
    const body = (await request(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: "{}",
    })) as { session_id: string; clips: string[] };
    return { sessionId: body.session_id, clips: body.clips, answered: [] };
  }

  async getSession(sessionId: string): Promise<SessionInfo> {
    const body = (await request(`${this.base}/sessions/${sessionId}`)) as {
      session_id: string;
      clips: string[];
      answered: string[];
    };
    return { sessionId: body.session_id, clips: body.clips, answered: body.answered };
  }

  clipUrl(clipId: string): string {
    return `${this.base}/clips/${encodeURIComponent(clipId)}`;
  }

  async submitResponse(sessionId: string, draft: ResponseDraft): Promise<SubmitResult> {
    const body = (await request(`${this.base}/sessions/${sessionId}/responses`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        clip_id: draft.clipId,
        heard_meaning: draft.heardMeaning,
        transcription: draft.transcription,
        listen_count: draft.listenCount,
      }),
    })) as { duplicate: boolean };
    return { duplicate: body.duplicate };
  }
}
