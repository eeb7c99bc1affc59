#!/usr/bin/env python3
"""Drive a scripted live interpreting session end to end, in process:
start a session, push a frame (sampled -> captioned), push an utterance
(transcribed -> translated under C2), toggle to C1, and read the event
stream back."""

import json

from fastapi.testclient import TestClient

import vgi
from vgi.gateway import MockScript, mock_provider
from vgi.prompting import Condition, build_prompt
from vgi.service import create_app
from vgi.vision import encode_image

corpus = vgi.load_corpus(vgi.reference_corpus_path())
item = corpus.by_id("lex-001-chiave")
frame_bytes = item.image_file.read_bytes()

utterance = item.source_text
caption = item.caption_gold
model = "mock-model"

script = MockScript(
    translations={
        build_prompt(utterance, Condition.C2_CAPTION, caption=caption,
                     langs=("it", "en"), model_id=model).digest: "Give me the wrench.",
        build_prompt(utterance, Condition.C1_SPEECH_ONLY,
                     langs=("it", "en"), model_id=model).digest: "Give me the key.",
    },
    captions={"*": caption},
    transcripts=[
        [{"text": utterance, "start_ms": 0, "end_ms": 1200, "is_final": True}],
        [{"text": utterance, "start_ms": 0, "end_ms": 1100, "is_final": True}],
    ],
)

client = TestClient(create_app(mock_provider(script)))
sid = client.post("/sessions", json={"source_lang": "it", "target_lang": "en", "condition": "C2"}).json()["session_id"]
print(f"session {sid} started under C2\n")

resp = client.post(f"/sessions/{sid}/frames", content=frame_bytes).json()
print(f"frame pushed: sampled={resp['sampled']}, caption={resp['caption']!r}")

client.post(f"/sessions/{sid}/audio", content=b"<pcm-bytes>", headers={"X-Utterance-End": "1"})
print(f"utterance sent: {utterance!r}")

client.patch(f"/sessions/{sid}", json={"condition": "C1"})
client.post(f"/sessions/{sid}/audio", content=b"<pcm-bytes>", headers={"X-Utterance-End": "1"})
print("toggled to C1 and sent the same utterance again\n")

client.delete(f"/sessions/{sid}")
print("event stream replay:")
with client.stream("GET", f"/sessions/{sid}/events") as stream:
    for line in stream.iter_lines():
        if line.startswith("data: "):
            event = json.loads(line[len("data: "):])
            payload = event["payload"]
            summary = {
                "frame_sampled": lambda: f"delta={payload['delta_score']:.3f} ({payload['reason']})",
                "caption_updated": lambda: repr(payload["caption"]),
                "transcript": lambda: repr(payload["text"]),
                "translation": lambda: f"[{payload['condition']}] {payload['text']!r}",
                "metrics": lambda: json.dumps(payload),
                "error": lambda: payload["detail"],
            }.get(event["type"], lambda: "")()
            print(f"  #{event['seq']:<3} {event['type']:<16} {summary}")

print("\nnote how the second translation is labeled C1 and ignores the caption.")
