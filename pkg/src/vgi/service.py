"""Live interpreting service: per-session speech/frame ingestion, condition
switching, and a server-sent event stream.

Each session runs the cascaded pipeline: audio chunks are transcribed; the
last finalized utterance is translated under the session's current
condition, using the most recent scene caption (C2) or sampled frame (C3);
every stage emits a strictly ordered SessionEvent.
"""

from __future__ import annotations

import asyncio
import base64
import json
import threading
import time
import uuid
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import HTMLResponse, StreamingResponse
from pydantic import BaseModel

from .gateway import Gateway, GatewayError
from .prompting import Condition, DecodingParams, ImageAttachment, build_prompt
from .vision import (
    DEFAULT_MIN_INTERVAL_MS,
    DEFAULT_THRESHOLD,
    Frame,
    FrameError,
    SamplerState,
    caption_scene,
    encode_image,
)

# Utterances finalize on an explicit end marker or after this much silence.
FORCED_FINALIZE_MS = 5000

_LIVE_CONDITIONS = {Condition.C1_SPEECH_ONLY, Condition.C2_CAPTION, Condition.C3_MULTIMODAL}


class SessionConfig(BaseModel):
    source_lang: str = "it"
    target_lang: str = "en"
    condition: str = "C1"
    caption_style: str = "generic"
    sampler_threshold: float = DEFAULT_THRESHOLD
    sampler_min_interval_ms: int = DEFAULT_MIN_INTERVAL_MS
    tts_enabled: bool = False


class SessionPatch(BaseModel):
    condition: str | None = None
    caption_style: str | None = None


@dataclass(frozen=True)
class SessionEvent:
    session_id: str
    seq: int
    type: str  # transcript | frame_sampled | caption_updated | translation | audio_ready | metrics | error
    payload: dict

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "seq": self.seq,
            "type": self.type,
            "payload": self.payload,
        }


@dataclass
class _Session:
    id: str
    source_lang: str
    target_lang: str
    condition: Condition
    caption_style: str
    tts_enabled: bool
    sampler: SamplerState
    seq: int = 0
    events: list[SessionEvent] = dc_field(default_factory=list)
    latest_caption_text: str | None = None
    latest_caption_seq: int | None = None
    latest_image: bytes | None = None
    latest_image_media: str = "image/jpeg"
    audio_chunks: list[bytes] = dc_field(default_factory=list)
    audio_started_ms: int | None = None
    translations: int = 0
    condition_log: list[tuple[int, str]] = dc_field(default_factory=list)
    closed: bool = False
    lock: threading.RLock = dc_field(default_factory=threading.RLock)

    def emit(self, type_: str, payload: dict) -> SessionEvent:
        with self.lock:
            self.seq += 1
            event = SessionEvent(session_id=self.id, seq=self.seq, type=type_, payload=payload)
            self.events.append(event)
            return event


def create_app(
    gateway: Gateway,
    now_ms=None,
    console_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service around one provider gateway.

    ``now_ms`` is the monotonic millisecond clock used for frame timestamps
    and utterance finalization; injectable for tests.
    """
    clock = now_ms or (lambda: int(time.monotonic() * 1000))
    app = FastAPI(title="vgi live interpreting service")
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()

    def get_session(session_id: str, allow_closed: bool = False) -> _Session:
        with registry_lock:
            sess = sessions.get(session_id)
        if sess is None or (sess.closed and not allow_closed):
            raise HTTPException(status_code=404, detail=f"no session {session_id}")
        return sess

    def parse_condition(value: str) -> Condition:
        try:
            cond = Condition(value)
        except ValueError:
            raise HTTPException(status_code=422, detail=f"unknown condition {value!r}")
        if cond not in _LIVE_CONDITIONS:
            raise HTTPException(
                status_code=422,
                detail="C4 needs an adversarial pairing over a corpus; it is a batch-only condition",
            )
        return cond

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(config: SessionConfig) -> dict:
        cond = parse_condition(config.condition)
        if config.caption_style not in ("generic", "attribute"):
            raise HTTPException(status_code=422, detail=f"unknown caption style {config.caption_style!r}")
        session_id = uuid.uuid4().hex[:12]
        sess = _Session(
            id=session_id,
            source_lang=config.source_lang,
            target_lang=config.target_lang,
            condition=cond,
            caption_style=config.caption_style,
            tts_enabled=config.tts_enabled,
            sampler=SamplerState(
                threshold=config.sampler_threshold,
                min_interval_ms=config.sampler_min_interval_ms,
            ),
        )
        sess.condition_log.append((clock(), cond.value))
        with registry_lock:
            sessions[session_id] = sess
        return {"session_id": session_id}

    @app.patch("/sessions/{session_id}")
    def patch_session(session_id: str, patch: SessionPatch) -> dict:
        sess = get_session(session_id)
        with sess.lock:
            if patch.condition is not None:
                cond = parse_condition(patch.condition)
                sess.condition = cond
                sess.condition_log.append((clock(), cond.value))
                sess.emit("metrics", {"kind": "condition_changed", "condition": cond.value})
            if patch.caption_style is not None:
                if patch.caption_style not in ("generic", "attribute"):
                    raise HTTPException(
                        status_code=422, detail=f"unknown caption style {patch.caption_style!r}"
                    )
                sess.caption_style = patch.caption_style
                sess.emit("metrics", {"kind": "caption_style_changed", "style": patch.caption_style})
            return {"condition": sess.condition.value, "caption_style": sess.caption_style}

    @app.post("/sessions/{session_id}/frames")
    async def push_frame(session_id: str, request: Request, force: bool = False) -> dict:
        sess = get_session(session_id)
        data = await request.body()
        if not data:
            raise HTTPException(status_code=422, detail="empty frame body")
        ts = clock()
        with sess.lock:
            try:
                frame = Frame.from_image_bytes(data, timestamp_ms=ts)
                sampled, sess.sampler, sample = should_sample_locked(sess, frame, force)
            except FrameError as e:
                raise HTTPException(status_code=422, detail=str(e))
            if not sampled:
                return {"sampled": False, "delta": None}
            frame_event = sess.emit(
                "frame_sampled",
                {"delta_score": sample.delta_score, "reason": sample.reason.value},
            )
            encoded, media = encode_image(data)
            sess.latest_image = encoded
            sess.latest_image_media = media
            style = sess.caption_style

        # Captioning happens outside the lock: it is the slow provider call.
        try:
            caption = caption_scene(encoded, style, gateway, source_id=sess.id)
        except (GatewayError, ValueError) as e:
            sess.emit("error", {"stage": "caption", "detail": str(e)})
            return {"sampled": True, "delta": sample.delta_score, "caption": None}
        with sess.lock:
            event = sess.emit(
                "caption_updated",
                {"caption": caption.text, "style": caption.style, "frame_seq": frame_event.seq},
            )
            sess.latest_caption_text = caption.text
            sess.latest_caption_seq = event.seq
        return {"sampled": True, "delta": sample.delta_score, "caption": caption.text}

    def should_sample_locked(sess: _Session, frame: Frame, force: bool):
        from .vision import should_sample

        return should_sample(sess.sampler, frame, force=force)

    def finalize_utterance(sess: _Session) -> None:
        with sess.lock:
            chunks = sess.audio_chunks
            sess.audio_chunks = []
            sess.audio_started_ms = None
        if not chunks:
            return
        try:
            segments = list(gateway.transcribe(chunks))
        except GatewayError as e:
            sess.emit("error", {"stage": "transcribe", "detail": str(e), "kind": e.kind})
            return
        for seg in segments:
            event = sess.emit(
                "transcript",
                {
                    "text": seg.text,
                    "start_ms": seg.start_ms,
                    "end_ms": seg.end_ms,
                    "is_final": seg.is_final,
                },
            )
            if seg.is_final and seg.text.strip():
                translate_utterance(sess, seg.text, event.seq)

    def translate_utterance(sess: _Session, text: str, transcript_seq: int) -> None:
        with sess.lock:
            cond = sess.condition
            caption_text = sess.latest_caption_text
            caption_seq = sess.latest_caption_seq
            image = sess.latest_image
            media = sess.latest_image_media
            langs = (sess.source_lang, sess.target_lang)

        try:
            if cond is Condition.C1_SPEECH_ONLY:
                bundle = build_prompt(
                    text, cond, langs=langs, model_id=gateway.config.model_id,
                    decoding=DecodingParams(),
                )
                used_caption_seq = None
            elif cond is Condition.C2_CAPTION:
                if caption_text is None:
                    sess.emit(
                        "error",
                        {"stage": "translate", "detail": "C2 needs a scene caption; none sampled yet"},
                    )
                    return
                bundle = build_prompt(
                    text, cond, caption=caption_text, langs=langs,
                    model_id=gateway.config.model_id, decoding=DecodingParams(),
                )
                used_caption_seq = caption_seq
            else:  # C3
                if image is None:
                    sess.emit(
                        "error",
                        {"stage": "translate", "detail": "C3 needs a sampled frame; none pushed yet"},
                    )
                    return
                bundle = build_prompt(
                    text, cond, image=ImageAttachment(media_type=media, data=image),
                    langs=langs, model_id=gateway.config.model_id, decoding=DecodingParams(),
                )
                used_caption_seq = None
            result = gateway.translate(bundle)
        except (GatewayError, ValueError) as e:
            sess.emit("error", {"stage": "translate", "detail": str(e)})
            return

        event = sess.emit(
            "translation",
            {
                "text": result.text,
                "condition": cond.value,
                "transcript_seq": transcript_seq,
                "caption_seq": used_caption_seq,
                "caption": caption_text if cond is Condition.C2_CAPTION else None,
                "latency_ms": result.latency_ms,
            },
        )
        with sess.lock:
            sess.translations += 1
            count = sess.translations
        sess.emit("metrics", {"translations": count, "last_latency_ms": result.latency_ms})

        if sess.tts_enabled:
            try:
                audio, media_type = gateway.synthesize(result.text)
            except (GatewayError, ValueError) as e:
                sess.emit("error", {"stage": "synthesize", "detail": str(e)})
                return
            sess.emit(
                "audio_ready",
                {
                    "media_type": media_type,
                    "data_b64": base64.b64encode(audio).decode("ascii"),
                    "translation_seq": event.seq,
                },
            )

    @app.post("/sessions/{session_id}/audio")
    async def push_audio(session_id: str, request: Request) -> dict:
        sess = get_session(session_id)
        data = await request.body()
        end_marker = request.headers.get("x-utterance-end", "") in ("1", "true")
        now = clock()
        with sess.lock:
            stale = (
                sess.audio_chunks
                and sess.audio_started_ms is not None
                and now - sess.audio_started_ms >= FORCED_FINALIZE_MS
            )
        if stale:
            finalize_utterance(sess)
        with sess.lock:
            if data:
                if not sess.audio_chunks:
                    sess.audio_started_ms = now
                sess.audio_chunks.append(data)
            buffered = sum(len(c) for c in sess.audio_chunks)
        if end_marker:
            finalize_utterance(sess)
        return {"buffered_bytes": 0 if end_marker else buffered, "finalized": end_marker or stale}

    @app.get("/sessions/{session_id}/events")
    async def events(session_id: str, request: Request, after: int = 0) -> StreamingResponse:
        # Closed sessions remain replayable: their stream drains and ends.
        sess = get_session(session_id, allow_closed=True)
        last_id = request.headers.get("last-event-id")
        start_after = int(last_id) if last_id and last_id.isdigit() else after

        async def stream():
            sent = start_after
            while True:
                with sess.lock:
                    pending = [e for e in sess.events if e.seq > sent]
                    closed = sess.closed
                for event in pending:
                    sent = event.seq
                    data = json.dumps(event.to_dict(), ensure_ascii=False, sort_keys=True)
                    yield f"id: {event.seq}\ndata: {data}\n\n"
                if closed:
                    return
                if await request.is_disconnected():
                    return
                await asyncio.sleep(0.05)

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str) -> Response:
        # The session stays in the registry, closed, so that event streams
        # can still drain its log.
        sess = get_session(session_id)
        with sess.lock:
            sess.closed = True
        return Response(status_code=204)

    console_path = Path(console_dir) if console_dir else None

    @app.get("/console")
    def console() -> HTMLResponse:
        if console_path and (console_path / "index.html").is_file():
            return HTMLResponse((console_path / "index.html").read_text(encoding="utf-8"))
        return HTMLResponse(
            "<!doctype html><title>vgi console</title>"
            "<p>Console assets not built. Run <code>npm run build</code> in frontend/ "
            "and restart with --console-dir.</p>"
        )

    if console_path and console_path.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/console-assets", StaticFiles(directory=str(console_path)), name="console-assets")

    return app


def serve(
    gateway: Gateway,
    host: str = "127.0.0.1",
    port: int = 8791,
    console_dir: str | Path | None = None,
) -> None:
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    app = create_app(gateway, console_dir=console_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
