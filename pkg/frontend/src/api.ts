import { readSse } from "./sse.js";
import type { ConsoleStore } from "./store.js";
import type { Condition, SessionEvent } from "./types.js";

export interface SessionOptions {
  sourceLang: string;
  targetLang: string;
  condition: Condition;
  captionStyle?: "generic" | "attribute";
  ttsEnabled?: boolean;
}

/** Thin client for the interpreting service. The console talks only to the
 * service; no provider credentials ever reach the browser. */
export class ServiceClient {
  private stopped = false;

  constructor(
    private readonly baseUrl: string,
    private readonly store: ConsoleStore,
  ) {}

  async createSession(options: SessionOptions): Promise<string> {
    const resp = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        source_lang: options.sourceLang,
        target_lang: options.targetLang,
        condition: options.condition,
        caption_style: options.captionStyle ?? "generic",
        tts_enabled: options.ttsEnabled ?? false,
      }),
    });
    if (!resp.ok) {
      throw new Error(`create session failed: HTTP ${resp.status}`);
    }
    const body = (await resp.json()) as { session_id: string };
    this.store.sessionStarted(body.session_id, options.condition);
    return body.session_id;
  }

  /** PATCH the condition; the store only flips once the service confirms,
   * and a rejection reverts with a visible notice. One retry on network
   * failure, then surface the error. */
  async switchCondition(sessionId: string, condition: Condition): Promise<boolean> {
    for (let attempt = 0; attempt < 2; attempt++) {
      let resp: Response;
      try {
        resp = await fetch(`${this.baseUrl}/sessions/${sessionId}`, {
          method: "PATCH",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify({ condition }),
        });
      } catch (err) {
        if (attempt === 0) continue;
        this.store.conditionRejected(condition, String(err));
        return false;
      }
      if (resp.ok) {
        const body = (await resp.json()) as { condition: Condition };
        this.store.conditionAcknowledged(body.condition);
        return true;
      }
      const detail = await resp.text();
      this.store.conditionRejected(condition, `HTTP ${resp.status} ${detail}`);
      return false;
    }
    return false;
  }

  async pushFrame(sessionId: string, jpeg: Blob | Uint8Array): Promise<void> {
    const body = jpeg instanceof Uint8Array ? new Blob([jpeg as BlobPart]) : jpeg;
    await fetch(`${this.baseUrl}/sessions/${sessionId}/frames`, {
      method: "POST",
      headers: { "Content-Type": "image/jpeg" },
      body,
    });
  }

  async pushAudio(
    sessionId: string,
    chunk: Uint8Array,
    utteranceEnd = false,
  ): Promise<void> {
    await fetch(`${this.baseUrl}/sessions/${sessionId}/audio`, {
      method: "POST",
      headers: {
        "Content-Type": "application/octet-stream",
        ...(utteranceEnd ? { "X-Utterance-End": "1" } : {}),
      },
      body: new Blob([chunk as BlobPart]),
    });
  }

  async endSession(sessionId: string): Promise<void> {
    this.stopped = true;
    await fetch(`${this.baseUrl}/sessions/${sessionId}`, { method: "DELETE" });
  }

  /** Consume the event stream, resuming after the last rendered seq on
   * every reconnect so nothing is rendered twice. Resolves when the
   * session closes or `endSession` was called. */
  async streamEvents(sessionId: string): Promise<void> {
    this.stopped = false;
    let backoffMs = 250;
    while (!this.stopped) {
      this.store.setConnection(this.store.lastEventSeq > 0 ? "reconnecting" : "connecting");
      try {
        const url = `${this.baseUrl}/sessions/${sessionId}/events?after=${this.store.lastEventSeq}`;
        this.store.setConnection("open");
        for await (const message of readSse(url)) {
          const event = JSON.parse(message.data) as SessionEvent;
          this.store.applyEvent(event);
          backoffMs = 250;
        }
        // Clean end of stream means the session closed.
        this.store.setConnection("closed");
        return;
      } catch (err) {
        if (this.stopped) break;
        this.store.notice(`event stream dropped, retrying: ${String(err)}`);
        await new Promise((r) => setTimeout(r, backoffMs));
        backoffMs = Math.min(backoffMs * 2, 5000);
      }
    }
    this.store.setConnection("closed");
  }
}
