/** Live loop smoke test against the mock-backed interpreting service:
 * start a session, push one frame and one scripted utterance, toggle
 * C1 -> C2, and observe the next translation labeled C2 with its caption.
 *
 * Requires the python package to be installed (`pip install -e .` in the
 * repo root); the service is spawned as a child process.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { ConsoleStore } from "../src/store.js";

const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

// 8x6 PNG, enough for the sampler and the mock captioner.
const FRAME_PNG = Buffer.from(
  "iVBORw0KGgoAAAANSUhEUgAAAAgAAAAGCAIAAABxZ0isAAAAFElEQVR4nGOMqjjBgA0wYRWlkwQA8LQBplKnCpkAAAAASUVORK5CYII=",
  "base64",
);

let service: ChildProcess;

async function waitForHealth(timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/health`);
      if (resp.ok) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error(`service did not come up: ${String(lastError)}`);
}

async function waitFor(predicate: () => boolean, what: string, timeoutMs = 10_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await new Promise((r) => setTimeout(r, 50));
  }
  throw new Error(`timed out waiting for ${what}`);
}

beforeAll(async () => {
  service = spawn(
    "python3",
    ["-m", "vgi.cli", "serve", "--port", String(PORT), "--provider", "mock"],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  service.stderr?.on("data", () => {});
  await waitForHealth();
}, 30_000);

afterAll(() => {
  service?.kill("SIGTERM");
});

describe("live loop against the mock-backed service", () => {
  it("toggles C1 -> C2 and the next translation carries C2 with its caption", async () => {
    const store = new ConsoleStore();
    const client = new ServiceClient(BASE, store);

    const sessionId = await client.createSession({
      sourceLang: "it",
      targetLang: "en",
      condition: "C1",
    });
    const streaming = client.streamEvents(sessionId);

    // One frame: sampled and captioned by the mock provider.
    await client.pushFrame(sessionId, new Uint8Array(FRAME_PNG));
    await waitFor(() => store.snapshot().latestCaption !== null, "caption pane");
    const caption = store.snapshot().latestCaption!.text;
    expect(caption.length).toBeGreaterThan(0);

    // One scripted utterance under C1.
    await client.pushAudio(sessionId, new Uint8Array([1, 2, 3]), true);
    await waitFor(() => store.snapshot().latestTranslation !== null, "first translation");
    expect(store.snapshot().latestTranslation!.condition).toBe("C1");
    expect(store.snapshot().latestTranslation!.caption).toBeNull();

    // Toggle to C2: pending until a translation carries it.
    const acked = await client.switchCondition(sessionId, "C2");
    expect(acked).toBe(true);
    expect(store.snapshot().condition).toBe("C2");
    expect(store.snapshot().conditionPending).toBe(true);

    await client.pushAudio(sessionId, new Uint8Array([4, 5, 6]), true);
    await waitFor(
      () => store.snapshot().latestTranslation?.condition === "C2",
      "C2-labeled translation",
    );
    const translation = store.snapshot().latestTranslation!;
    expect(translation.condition).toBe("C2");
    expect(translation.caption).toBe(caption); // the caption it used is displayed
    expect(store.snapshot().conditionPending).toBe(false);

    // Events arrived in order and nothing rendered twice.
    const seqs = store.events.map((e) => e.seq);
    expect(seqs).toEqual([...seqs].sort((a, b) => a - b));
    expect(new Set(seqs).size).toBe(seqs.length);

    await client.endSession(sessionId);
    await streaming;
    expect(store.snapshot().connection).toBe("closed");
  }, 30_000);
});
