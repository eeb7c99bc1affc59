"""Provider gateway: translation, captioning, speech recognition, and
speech synthesis behind one retrying, caching, concurrency-bounded client.

One OpenAI-compatible wire dialect (JSON over HTTPS) serves both caption
generation and direct multimodal ingestion; a fully scripted mock transport
stands in for the provider in every test and demo.
"""

from __future__ import annotations

import base64
import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .prompting import PromptBundle

ENV_BASE_URL = "VGI_BASE_URL"
ENV_API_KEY = "VGI_API_KEY"
ENV_MODEL = "VGI_MODEL"
ENV_ASR_MODEL = "VGI_ASR_MODEL"
ENV_TTS_MODEL = "VGI_TTS_MODEL"

_RETRYABLE_KINDS = {"timeout", "rate_limited", "network"}
_BACKOFF_BASE_S = 0.25
_BACKOFF_CAP_S = 8.0


class GatewayError(Exception):
    """Provider failure with a retry classification.

    ``kind`` is one of timeout | rate_limited | provider_rejected |
    network | malformed_response. Timeouts and rate limits are always
    retryable; provider rejections never are.
    """

    def __init__(self, kind: str, detail: str = "", retryable: bool | None = None):
        self.kind = kind
        self.detail = detail
        self.retryable = retryable if retryable is not None else kind in _RETRYABLE_KINDS
        if kind in ("timeout", "rate_limited"):
            self.retryable = True
        if kind == "provider_rejected":
            self.retryable = False
        self.attempts = 1  # filled in by the retry loop
        super().__init__(f"{kind}: {detail}" if detail else kind)


@dataclass
class ProviderConfig:
    base_url: str = ""
    api_key: str = field(default="", repr=False)
    model_id: str = "gpt-4o"
    asr_model_id: str = "whisper-1"
    tts_model_id: str = "tts-1"
    timeout_ms: int = 60_000
    max_retries: int = 3
    max_inflight: int = 4

    def __post_init__(self):
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.max_inflight < 1:
            raise ValueError("max_inflight must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "ProviderConfig":
        values = dict(
            base_url=os.environ.get(ENV_BASE_URL, "https://api.openai.com/v1"),
            api_key=os.environ.get(ENV_API_KEY, ""),
            model_id=os.environ.get(ENV_MODEL, "gpt-4o"),
            asr_model_id=os.environ.get(ENV_ASR_MODEL, "whisper-1"),
            tts_model_id=os.environ.get(ENV_TTS_MODEL, "tts-1"),
        )
        values.update(overrides)
        return cls(**values)

    def to_public_dict(self) -> dict:
        """Loggable snapshot; the API key is deliberately absent."""
        return {
            "base_url": self.base_url,
            "model_id": self.model_id,
            "asr_model_id": self.asr_model_id,
            "tts_model_id": self.tts_model_id,
            "timeout_ms": self.timeout_ms,
            "max_retries": self.max_retries,
            "max_inflight": self.max_inflight,
        }


@dataclass(frozen=True)
class TranslationResult:
    text: str
    model_id: str
    latency_ms: int
    prompt_digest: str
    finish_reason: str = "stop"


@dataclass(frozen=True)
class TranscriptSegment:
    text: str
    start_ms: int
    end_ms: int
    is_final: bool

    def __post_init__(self):
        if self.start_ms > self.end_ms:
            raise ValueError(f"segment start {self.start_ms} > end {self.end_ms}")


def chat_payload(bundle: PromptBundle) -> dict:
    """OpenAI-compatible chat request for a prompt bundle. C3 carries the
    image as exactly one multimodal message part."""
    if bundle.image_attachment is not None:
        b64 = base64.b64encode(bundle.image_attachment.data).decode("ascii")
        content: object = [
            {"type": "text", "text": bundle.user_text},
            {
                "type": "image_url",
                "image_url": {"url": f"data:{bundle.image_attachment.media_type};base64,{b64}"},
            },
        ]
    else:
        content = bundle.user_text
    return {
        "model": bundle.model_id,
        "temperature": bundle.decoding.temperature,
        "messages": [
            {"role": "system", "content": bundle.system_instruction},
            {"role": "user", "content": content},
        ],
    }


def caption_payload(image_bytes: bytes, instruction: str, model_id: str) -> dict:
    b64 = base64.b64encode(image_bytes).decode("ascii")
    return {
        "model": model_id,
        "temperature": 0.0,
        "messages": [
            {
                "role": "user",
                "content": [
                    {"type": "text", "text": instruction},
                    {"type": "image_url", "image_url": {"url": f"data:image/jpeg;base64,{b64}"}},
                ],
            }
        ],
    }


def caption_digest(image_bytes: bytes, instruction: str, model_id: str) -> str:
    h = hashlib.sha256()
    for part in (b"vgi-caption", instruction.encode(), image_bytes, model_id.encode()):
        h.update(str(len(part)).encode())
        h.update(b":")
        h.update(part)
    return h.hexdigest()


# --------------------------------------------------------------------------
# Transports


@dataclass
class MockScript:
    """Canned provider behavior.

    ``translations`` maps prompt digests to reply texts; ``captions`` maps
    sha256 hex of image bytes (or the wildcard "*") to caption texts;
    ``transcripts`` is a queue of utterance scripts, one per transcribe
    call. ``faults`` injects an error kind at 1-based call indices, counted
    across all calls.
    """

    translations: dict[str, str] = field(default_factory=dict)
    captions: dict[str, str] = field(default_factory=dict)
    transcripts: list[list[dict]] = field(default_factory=list)
    faults: dict[int, str] = field(default_factory=dict)
    latency_ms: int = 0
    call_delay_s: float = 0.0  # real sleep, for concurrency tests only
    # Live-demo fallbacks: reused once scripted transcripts run out, and for
    # digests no table entry covers. Unset means strict scripted behavior.
    default_transcript: list[dict] | None = None
    fallback_translation_prefix: str | None = None


class MockTransport:
    """Deterministic in-process provider with fault injection and a wire
    log for assertions."""

    def __init__(self, script: MockScript | None = None):
        self.script = script or MockScript()
        self.calls: list[dict] = []
        self._counter = 0
        self._transcript_idx = 0
        self._lock = threading.Lock()

    @property
    def call_count(self) -> int:
        return self._counter

    def _begin(self, kind: str, payload: dict | None) -> dict:
        with self._lock:
            self._counter += 1
            index = self._counter
            entry = {
                "index": index,
                "kind": kind,
                "payload": payload,
                "start_s": time.monotonic(),
                "end_s": None,
            }
            self.calls.append(entry)
        if self.script.call_delay_s:
            time.sleep(self.script.call_delay_s)
        fault = self.script.faults.get(index)
        if fault:
            entry["end_s"] = time.monotonic()
            entry["fault"] = fault
            raise GatewayError(fault, detail=f"scripted fault at call {index}")
        return entry

    def chat(self, payload: dict, digest: str) -> dict:
        entry = self._begin("chat", payload)
        entry["digest"] = digest
        reply = self.script.translations.get(digest)
        if reply is None:
            reply = self._caption_reply(payload)
        if reply is None and self.script.fallback_translation_prefix is not None:
            reply = f"{self.script.fallback_translation_prefix}{digest[:8]}"
        entry["end_s"] = time.monotonic()
        if reply is None:
            raise GatewayError("provider_rejected", detail=f"unscripted digest {digest[:12]}")
        return {
            "choices": [{"message": {"role": "assistant", "content": reply}, "finish_reason": "stop"}],
            "model": payload.get("model", ""),
        }

    def _caption_reply(self, payload: dict) -> str | None:
        for msg in payload.get("messages", []):
            content = msg.get("content")
            if not isinstance(content, list):
                continue
            for part in content:
                if part.get("type") == "image_url":
                    url = part["image_url"]["url"]
                    b64 = url.split("base64,", 1)[-1]
                    sha = hashlib.sha256(base64.b64decode(b64)).hexdigest()
                    if sha in self.script.captions:
                        return self.script.captions[sha]
                    return self.script.captions.get("*")
        return None

    def transcribe(self, audio: bytes, model: str) -> list[dict]:
        entry = self._begin("transcribe", {"bytes": len(audio), "model": model})
        entry["end_s"] = time.monotonic()
        if self._transcript_idx >= len(self.script.transcripts):
            return self.script.default_transcript or []
        segments = self.script.transcripts[self._transcript_idx]
        self._transcript_idx += 1
        return segments

    def speech(self, text: str, model: str) -> tuple[bytes, str]:
        entry = self._begin("speech", {"chars": len(text), "model": model})
        entry["end_s"] = time.monotonic()
        return f"TONE:{len(text)}".encode("ascii"), "audio/wav"

    def latency_ms(self) -> int:
        return self.script.latency_ms


class HttpTransport:
    """OpenAI-compatible HTTP transport (chat, transcription, speech)."""

    def __init__(self, config: ProviderConfig):
        import httpx

        self.config = config
        self._client = httpx.Client(
            base_url=config.base_url.rstrip("/"),
            headers={"Authorization": f"Bearer {config.api_key}"},
            timeout=config.timeout_ms / 1000.0,
        )

    def _post(self, path: str, **kwargs) -> "object":
        import httpx

        try:
            resp = self._client.post(path, **kwargs)
        except httpx.TimeoutException as e:
            raise GatewayError("timeout", detail=str(e)) from e
        except httpx.HTTPError as e:
            raise GatewayError("network", detail=str(e)) from e
        if resp.status_code == 429:
            raise GatewayError("rate_limited", detail="HTTP 429")
        if 500 <= resp.status_code < 600:
            raise GatewayError("network", detail=f"HTTP {resp.status_code}")
        if resp.status_code >= 400:
            raise GatewayError(
                "provider_rejected", detail=f"HTTP {resp.status_code}: {resp.text[:200]}"
            )
        return resp

    def chat(self, payload: dict, digest: str) -> dict:
        resp = self._post("/chat/completions", json=payload)
        try:
            return resp.json()
        except ValueError as e:
            raise GatewayError("malformed_response", detail=str(e)) from e

    def transcribe(self, audio: bytes, model: str) -> list[dict]:
        resp = self._post(
            "/audio/transcriptions",
            files={"file": ("audio.wav", audio, "audio/wav")},
            data={"model": model},
        )
        try:
            data = resp.json()
        except ValueError as e:
            raise GatewayError("malformed_response", detail=str(e)) from e
        text = data.get("text", "")
        duration_ms = int(float(data.get("duration", 0.0)) * 1000)
        return [{"text": text, "start_ms": 0, "end_ms": duration_ms, "is_final": True}]

    def speech(self, text: str, model: str) -> tuple[bytes, str]:
        resp = self._post("/audio/speech", json={"model": model, "input": text, "voice": "alloy"})
        media = resp.headers.get("content-type", "audio/mpeg").split(";")[0]
        return resp.content, media

    def latency_ms(self) -> int | None:
        return None  # measured per call


# --------------------------------------------------------------------------
# Gateway


class Gateway:
    """Retrying, caching front door to one provider transport.

    In-flight requests are bounded by ``config.max_inflight``; retryable
    failures back off exponentially (delays non-decreasing) up to
    ``config.max_retries`` retries. Raw responses are cached per prompt
    digest so interrupted runs resume without re-billing.
    """

    def __init__(
        self,
        config: ProviderConfig,
        transport=None,
        cache_dir: str | Path | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        self.transport = transport if transport is not None else HttpTransport(config)
        self.cache_dir = Path(cache_dir) if cache_dir else None
        if self.cache_dir:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
        self._sleep = sleep
        self._inflight = threading.Semaphore(config.max_inflight)

    # -- retry plumbing

    def _with_retry(self, fn: Callable[[], object]) -> object:
        delay = _BACKOFF_BASE_S
        attempts = 0
        while True:
            attempts += 1
            try:
                with self._inflight:
                    return fn()
            except GatewayError as e:
                e.attempts = attempts
                if not e.retryable or attempts > self.config.max_retries:
                    raise
                self._sleep(delay)
                delay = min(delay * 2, _BACKOFF_CAP_S)

    # -- caching

    def _cache_path(self, digest: str) -> Path | None:
        return self.cache_dir / f"{digest}.json" if self.cache_dir else None

    def _cache_get(self, digest: str) -> dict | None:
        path = self._cache_path(digest)
        if path and path.is_file():
            return json.loads(path.read_text(encoding="utf-8"))
        return None

    def _cache_put(self, digest: str, envelope: dict) -> None:
        path = self._cache_path(digest)
        if path:
            path.write_text(
                json.dumps(envelope, ensure_ascii=False, sort_keys=True), encoding="utf-8"
            )

    def _cached_chat(self, payload: dict, digest: str) -> tuple[dict, int]:
        cached = self._cache_get(digest)
        if cached is not None:
            return cached["response"], int(cached["latency_ms"])
        start = time.monotonic()
        raw = self._with_retry(lambda: self.transport.chat(payload, digest))
        scripted = getattr(self.transport, "latency_ms", lambda: None)()
        latency = scripted if scripted is not None else int((time.monotonic() - start) * 1000)
        self._cache_put(digest, {"response": raw, "latency_ms": latency})
        return raw, latency

    @staticmethod
    def _reply_text(raw: dict) -> tuple[str, str]:
        try:
            choice = raw["choices"][0]
            return choice["message"]["content"], choice.get("finish_reason", "stop")
        except (KeyError, IndexError, TypeError) as e:
            raise GatewayError("malformed_response", detail=f"bad chat response: {e}") from e

    # -- operations

    def translate(self, bundle: PromptBundle) -> TranslationResult:
        """Translate one prompt bundle; decoding stays greedy."""
        if bundle.decoding.temperature != 0:
            raise ValueError("evaluation runs require temperature 0")
        raw, latency = self._cached_chat(chat_payload(bundle), bundle.digest)
        text, finish = self._reply_text(raw)
        if not text:
            raise GatewayError("malformed_response", detail="empty translation text")
        return TranslationResult(
            text=text,
            model_id=self.config.model_id,
            latency_ms=latency,
            prompt_digest=bundle.digest,
            finish_reason=finish,
        )

    def caption(self, image_bytes: bytes, instruction: str) -> str:
        digest = caption_digest(image_bytes, instruction, self.config.model_id)
        payload = caption_payload(image_bytes, instruction, self.config.model_id)
        raw, _ = self._cached_chat(payload, digest)
        text, _ = self._reply_text(raw)
        return text

    def transcribe(self, chunks: Iterable[bytes]) -> Iterator[TranscriptSegment]:
        """Transcribe an utterance's audio chunks into ordered segments;
        exactly one final segment closes each non-empty utterance."""
        audio = b"".join(chunks)
        if not audio:
            return
        segments = self._with_retry(
            lambda: self.transport.transcribe(audio, self.config.asr_model_id)
        )
        segments = list(segments)
        for i, seg in enumerate(segments):
            is_final = bool(seg.get("is_final", i == len(segments) - 1))
            if i == len(segments) - 1:
                is_final = True
            yield TranscriptSegment(
                text=seg["text"],
                start_ms=int(seg.get("start_ms", 0)),
                end_ms=int(seg.get("end_ms", 0)),
                is_final=is_final,
            )

    def synthesize(self, text: str) -> tuple[bytes, str]:
        if not text or not text.strip():
            raise ValueError("synthesize requires non-empty text")
        return self._with_retry(lambda: self.transport.speech(text, self.config.tts_model_id))


def mock_provider(
    script: MockScript | None = None,
    config: ProviderConfig | None = None,
    cache_dir: str | Path | None = None,
) -> Gateway:
    """Gateway backed by a deterministic scripted transport; no sleeping
    between retries so fault plans resolve instantly in tests."""
    cfg = config or ProviderConfig(base_url="mock://", api_key="", model_id="mock-model")
    return Gateway(cfg, transport=MockTransport(script), cache_dir=cache_dir, sleep=lambda s: None)
