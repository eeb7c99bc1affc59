export type Condition = "C1" | "C2" | "C3";

export type EventType =
  | "transcript"
  | "frame_sampled"
  | "caption_updated"
  | "translation"
  | "audio_ready"
  | "metrics"
  | "error";

export interface SessionEvent {
  session_id: string;
  seq: number;
  type: EventType;
  payload: Record<string, unknown>;
}

export type ConnectionStatus = "idle" | "connecting" | "open" | "reconnecting" | "closed";

export interface TranslationEntry {
  seq: number;
  text: string;
  condition: string;
  caption: string | null;
  transcriptSeq: number | null;
  latencyMs: number;
}

export interface ConsoleSnapshot {
  sessionId: string | null;
  connection: ConnectionStatus;
  /** Last condition acknowledged by the service. */
  condition: Condition;
  /** True between a PATCH ack and the first translation carrying it. */
  conditionPending: boolean;
  latestCaption: { text: string; seq: number } | null;
  latestTranscript: { text: string; seq: number; isFinal: boolean } | null;
  latestTranslation: TranslationEntry | null;
  metrics: { translations: number; lastLatencyMs: number } | null;
  notices: string[];
  speechOnlyForced: boolean;
}
