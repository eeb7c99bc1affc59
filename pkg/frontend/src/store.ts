import type {
  Condition,
  ConnectionStatus,
  ConsoleSnapshot,
  SessionEvent,
  TranslationEntry,
} from "./types.js";

const EVENT_LOG_CAPACITY = 200;
const NOTICE_CAPACITY = 10;

/** Single source of truth for the console UI.
 *
 * All mutations flow through one place; events are applied strictly in seq
 * order and replays after a reconnect are dropped, so every event renders
 * exactly once. */
export class ConsoleStore {
  private sessionId: string | null = null;
  private connection: ConnectionStatus = "idle";
  private condition: Condition = "C1";
  private conditionPending = false;
  private latestCaption: { text: string; seq: number } | null = null;
  private latestTranscript: { text: string; seq: number; isFinal: boolean } | null = null;
  private latestTranslation: TranslationEntry | null = null;
  private metrics: { translations: number; lastLatencyMs: number } | null = null;
  private notices: string[] = [];
  private speechOnlyForced = false;
  private eventLog: SessionEvent[] = [];
  private lastSeq = 0;
  private listeners: Array<() => void> = [];

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  get lastEventSeq(): number {
    return this.lastSeq;
  }

  get events(): readonly SessionEvent[] {
    return this.eventLog;
  }

  snapshot(): ConsoleSnapshot {
    return {
      sessionId: this.sessionId,
      connection: this.connection,
      condition: this.condition,
      conditionPending: this.conditionPending,
      latestCaption: this.latestCaption,
      latestTranscript: this.latestTranscript,
      latestTranslation: this.latestTranslation,
      metrics: this.metrics,
      notices: [...this.notices],
      speechOnlyForced: this.speechOnlyForced,
    };
  }

  sessionStarted(sessionId: string, condition: Condition): void {
    this.sessionId = sessionId;
    this.condition = condition;
    this.conditionPending = false;
    this.lastSeq = 0;
    this.eventLog = [];
    this.latestCaption = null;
    this.latestTranscript = null;
    this.latestTranslation = null;
    this.metrics = null;
    this.emit();
  }

  setConnection(status: ConnectionStatus): void {
    this.connection = status;
    this.emit();
  }

  /** The rendered condition changes only on an acknowledged PATCH; it then
   * stays "pending" until the next translation event carries it. */
  conditionAcknowledged(condition: Condition): void {
    this.condition = condition;
    this.conditionPending = true;
    this.emit();
  }

  conditionRejected(requested: Condition, detail: string): void {
    this.notice(`condition ${requested} rejected: ${detail}`);
  }

  /** Camera denied: the session continues speech-only under C1. */
  forceSpeechOnly(reason: string): void {
    this.speechOnlyForced = true;
    this.condition = "C1";
    this.conditionPending = false;
    this.notice(`camera unavailable (${reason}); continuing speech-only under C1`);
  }

  notice(text: string): void {
    this.pushNotice(text);
    this.emit();
  }

  private pushNotice(text: string): void {
    this.notices.push(text);
    if (this.notices.length > NOTICE_CAPACITY) {
      this.notices = this.notices.slice(-NOTICE_CAPACITY);
    }
  }

  /** Apply one session event; returns false for duplicates (seq already
   * rendered), which makes reconnect replays idempotent. */
  applyEvent(event: SessionEvent): boolean {
    if (event.seq <= this.lastSeq) {
      return false;
    }
    this.lastSeq = event.seq;
    this.eventLog.push(event);
    if (this.eventLog.length > EVENT_LOG_CAPACITY) {
      this.eventLog = this.eventLog.slice(-EVENT_LOG_CAPACITY);
    }

    const p = event.payload as Record<string, any>;
    switch (event.type) {
      case "caption_updated":
        this.latestCaption = { text: String(p.caption ?? ""), seq: event.seq };
        break;
      case "transcript":
        this.latestTranscript = {
          text: String(p.text ?? ""),
          seq: event.seq,
          isFinal: Boolean(p.is_final),
        };
        break;
      case "translation": {
        this.latestTranslation = {
          seq: event.seq,
          text: String(p.text ?? ""),
          condition: String(p.condition ?? ""),
          caption: p.caption == null ? null : String(p.caption),
          transcriptSeq: p.transcript_seq == null ? null : Number(p.transcript_seq),
          latencyMs: Number(p.latency_ms ?? 0),
        };
        if (this.conditionPending && this.latestTranslation.condition === this.condition) {
          this.conditionPending = false;
        }
        break;
      }
      case "metrics":
        if (typeof p.translations === "number") {
          this.metrics = {
            translations: p.translations,
            lastLatencyMs: Number(p.last_latency_ms ?? 0),
          };
        }
        break;
      case "error":
        this.pushNotice(`service error (${String(p.stage ?? "unknown")}): ${String(p.detail ?? "")}`);
        break;
      case "frame_sampled":
      case "audio_ready":
        break;
    }
    this.emit();
    return true;
  }
}
