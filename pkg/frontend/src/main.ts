import { ServiceClient } from "./api.js";
import { requestCamera, requestMicrophone, startAudioPusher, startFramePusher } from "./capture.js";
import { ConsoleStore } from "./store.js";
import type { Condition } from "./types.js";

const store = new ConsoleStore();
const client = new ServiceClient("", store); // same-origin service

let sessionId: string | null = null;
let stopFrames: (() => void) | null = null;
let stopAudio: (() => void) | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function render(): void {
  const s = store.snapshot();
  el("status").textContent = `${s.connection}${s.sessionId ? ` · ${s.sessionId}` : ""}`;
  el("condition").textContent = s.conditionPending ? `${s.condition} (pending)` : s.condition;
  el("caption").textContent = s.latestCaption?.text ?? "—";
  el("transcript").textContent = s.latestTranscript?.text ?? "—";
  const t = s.latestTranslation;
  el("translation").textContent = t ? `[${t.condition}] ${t.text}` : "—";
  el("translation-caption").textContent = t?.caption ? `used caption: ${t.caption}` : "";
  el("metrics").textContent = s.metrics
    ? `${s.metrics.translations} translations · last ${s.metrics.lastLatencyMs} ms`
    : "—";
  el("notices").textContent = s.notices.slice(-3).join("\n");
  const log = store.events
    .slice(-12)
    .map((e) => `#${e.seq} ${e.type}`)
    .join("\n");
  el("log").textContent = log || "—";
}

store.subscribe(render);

async function start(): Promise<void> {
  const condition = (el<HTMLSelectElement>("condition-select").value || "C1") as Condition;
  sessionId = await client.createSession({
    sourceLang: el<HTMLInputElement>("source-lang").value || "it",
    targetLang: el<HTMLInputElement>("target-lang").value || "en",
    condition,
  });
  void client.streamEvents(sessionId);

  try {
    const camera = await requestCamera();
    stopFrames = startFramePusher(camera, (jpeg) => client.pushFrame(sessionId!, jpeg));
  } catch (err) {
    // No camera: keep interpreting speech-only under C1.
    store.forceSpeechOnly(String(err));
    if (condition !== "C1") {
      void client.switchCondition(sessionId, "C1");
    }
  }

  try {
    const mic = await requestMicrophone();
    stopAudio = startAudioPusher(mic, (chunk, end) => client.pushAudio(sessionId!, chunk, end));
  } catch (err) {
    store.notice(`microphone unavailable: ${String(err)}`);
  }
}

async function stop(): Promise<void> {
  stopFrames?.();
  stopAudio?.();
  stopFrames = stopAudio = null;
  if (sessionId) {
    await client.endSession(sessionId);
    sessionId = null;
  }
}

el("start").addEventListener("click", () => void start());
el("stop").addEventListener("click", () => void stop());
el("condition-select").addEventListener("change", () => {
  const condition = el<HTMLSelectElement>("condition-select").value as Condition;
  if (sessionId) void client.switchCondition(sessionId, condition);
});

render();
