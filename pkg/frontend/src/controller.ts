// Session state machine. One clip at a time, in the exact order the
// backend served; answering is blocked until the clip has been played;
// a non-empty transcription is required whenever meaning was heard;
// answered clips can never be revisited.

import { BackendUnreachable, ResponseDraft, SurveyApi } from "./api.js";

export type Phase = "idle" | "loading" | "active" | "complete" | "error";

export interface ClipView {
  clipId: string;
  index: number; // 0-based position in the session order
  total: number;
  played: boolean;
  listenCount: number;
  heardMeaning: boolean;
  transcription: string;
}

export class SessionController {
  phase: Phase = "idle";
  errorMessage = "";
  sessionId = "";
  private order: string[] = [];
  private cursor = 0;
  private played = new Set<string>();
  private listens = new Map<string, number>();
  private heard = false;
  private text = "";
  private submitting = false;

  constructor(private api: SurveyApi) {}

  async start(resumeSessionId?: string): Promise<void> {
    this.phase = "loading";
    this.errorMessage = "";
    try {
      const info = resumeSessionId
        ? await this.api.getSession(resumeSessionId)
        : await this.api.createSession();
      this.sessionId = info.sessionId;
      this.order = [...info.clips]; // never re-sorted client-side
      const answered = new Set(info.answered);
      this.cursor = 0;
      while (this.cursor < this.order.length && answered.has(this.order[this.cursor])) {
        this.cursor += 1; // resume at the first unanswered clip
      }
      this.resetDraft();
      this.phase = this.cursor >= this.order.length ? "complete" : "active";
    } catch (err) {
      this.phase = "error";
      this.errorMessage =
        err instanceof BackendUnreachable
          ? "The survey server is unreachable. Check your connection and retry."
          : `Could not start the session: ${err}`;
    }
  }

  get current(): ClipView | null {
    if (this.phase !== "active") {
      return null;
    }
    const clipId = this.order[this.cursor];
    return {
      clipId,
      index: this.cursor,
      total: this.order.length,
      played: this.played.has(clipId),
      listenCount: this.listens.get(clipId) ?? 0,
      heardMeaning: this.heard,
      transcription: this.text,
    };
  }

  clipUrl(): string {
    const view = this.current;
    return view ? this.api.clipUrl(view.clipId) : "";
  }

  markPlayed(): void {
    const view = this.current;
    if (!view) return;
    this.played.add(view.clipId);
    this.listens.set(view.clipId, (this.listens.get(view.clipId) ?? 0) + 1);
  }

  setHeardMeaning(value: boolean): void {
    this.heard = value;
    if (!value) this.text = "";
  }

  setTranscription(value: string): void {
    this.text = value;
  }

  /** Why submission is currently blocked, or null when it may proceed. */
  validationError(): string | null {
    const view = this.current;
    if (!view) return "no active clip";
    if (!view.played) return "Play the clip at least once before answering.";
    if (this.heard && this.text.trim() === "") {
      return "Please write down what you heard.";
    }
    return null;
  }

  canSubmit(): boolean {
    return this.phase === "active" && !this.submitting && this.validationError() === null;
  }

  async submit(): Promise<void> {
    const view = this.current;
    const problem = this.validationError();
    if (!view || problem !== null || this.submitting) {
      throw new Error(problem ?? "nothing to submit");
    }
    const draft: ResponseDraft = {
      clipId: view.clipId,
      heardMeaning: this.heard,
      transcription: this.heard ? this.text.trim() : "",
      listenCount: this.listens.get(view.clipId) ?? 1,
    };
    this.submitting = true; // single-flight: double clicks cannot double-post
    try {
      await this.api.submitResponse(this.sessionId, draft);
    } finally {
      this.submitting = false;
    }
    this.cursor += 1; // forward only; answered clips are unreachable
    this.resetDraft();
    if (this.cursor >= this.order.length) {
      this.phase = "complete";
    }
  }

  private resetDraft(): void {
    this.heard = false;
    this.text = "";
  }
}
