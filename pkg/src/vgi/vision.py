"""Scene-change frame sampling and image preparation.

Webcam frames arrive continuously; only frames that differ enough from the
last sampled one (and respect a debounce interval) are promoted to samples
and sent on for captioning or multimodal ingestion.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np
from PIL import Image

# Sampler defaults: enough change to matter, and no sub-second chatter.
DEFAULT_THRESHOLD = 0.08
DEFAULT_MIN_INTERVAL_MS = 2000

# Frames are reduced to at most this many pixels per edge before comparison.
_DELTA_MAX_EDGE = 64


class SampleReason(str, Enum):
    FIRST_FRAME = "first_frame"
    SCENE_CHANGE = "scene_change"
    FORCED = "forced"


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class Frame:
    """A grayscale frame: intensities in [0, 1], row-major, with a
    monotonic timestamp in milliseconds."""

    width: int
    height: int
    pixels: np.ndarray
    timestamp_ms: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise FrameError(f"frame dimensions must be positive, got {self.width}x{self.height}")
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.size != self.width * self.height:
            raise FrameError(
                f"pixel count {px.size} != width*height {self.width * self.height}"
            )
        px = px.reshape(self.height, self.width)
        if px.size and (px.min() < 0.0 or px.max() > 1.0):
            raise FrameError("pixel intensities must lie in [0, 1]")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_image_bytes(cls, data: bytes, timestamp_ms: int) -> "Frame":
        try:
            img = Image.open(io.BytesIO(data)).convert("L")
        except Exception as e:
            raise FrameError(f"cannot decode image: {e}") from e
        arr = np.asarray(img, dtype=np.float64) / 255.0
        return cls(width=img.width, height=img.height, pixels=arr, timestamp_ms=timestamp_ms)


@dataclass(frozen=True)
class SamplerState:
    """Sampler memory: the last sampled frame and when it was taken."""

    threshold: float = DEFAULT_THRESHOLD
    min_interval_ms: int = DEFAULT_MIN_INTERVAL_MS
    last_sampled: Frame | None = None
    last_sample_time_ms: int | None = None
    last_seen_time_ms: int | None = None

    def __post_init__(self):
        if not (0.0 < self.threshold <= 1.0):
            raise FrameError(f"threshold must be in (0, 1], got {self.threshold}")
        if self.min_interval_ms < 0:
            raise FrameError("min_interval_ms must be >= 0")


@dataclass(frozen=True)
class FrameSample:
    frame: Frame
    delta_score: float
    reason: SampleReason


@dataclass(frozen=True)
class SceneCaption:
    """A concise textual description of the current scene."""

    text: str
    source_id: str
    model_id: str
    style: str  # generic | attribute

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("empty caption")
        if self.style not in ("generic", "attribute"):
            raise ValueError(f"unknown caption style {self.style!r}")


def _reduce(px: np.ndarray) -> np.ndarray:
    # Stride-downsample so comparisons never touch more than 64x64 pixels.
    h, w = px.shape
    step = max(1, math.ceil(max(h, w) / _DELTA_MAX_EDGE))
    return px[::step, ::step]


def frame_delta(a: Frame, b: Frame) -> float:
    """Mean absolute pixel difference in [0, 1] between two frames.

    Frames larger than 64 pixels per edge are stride-downsampled first;
    both frames must share dimensions.
    """
    if (a.width, a.height) != (b.width, b.height):
        raise FrameError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    return float(np.mean(np.abs(_reduce(a.pixels) - _reduce(b.pixels))))


def should_sample(
    state: SamplerState, frame: Frame, force: bool = False
) -> tuple[bool, SamplerState, FrameSample | None]:
    """Decide whether a frame becomes a sample; returns the updated state.

    The first frame always samples. Afterwards a frame samples iff its
    delta from the last sampled frame reaches the threshold AND at least
    ``min_interval_ms`` has passed since the last sample. ``force``
    bypasses both checks (used when a caller explicitly wants a caption
    refresh). Timestamps must be monotone.
    """
    if state.last_seen_time_ms is not None and frame.timestamp_ms < state.last_seen_time_ms:
        raise FrameError(
            f"non-monotone timestamp: {frame.timestamp_ms} < {state.last_seen_time_ms}"
        )

    if state.last_sampled is None:
        sample = FrameSample(frame=frame, delta_score=0.0, reason=SampleReason.FIRST_FRAME)
        new_state = replace(
            state,
            last_sampled=frame,
            last_sample_time_ms=frame.timestamp_ms,
            last_seen_time_ms=frame.timestamp_ms,
        )
        return True, new_state, sample

    delta = frame_delta(state.last_sampled, frame)
    if force:
        sample = FrameSample(frame=frame, delta_score=delta, reason=SampleReason.FORCED)
        new_state = replace(
            state,
            last_sampled=frame,
            last_sample_time_ms=frame.timestamp_ms,
            last_seen_time_ms=frame.timestamp_ms,
        )
        return True, new_state, sample

    elapsed = frame.timestamp_ms - (state.last_sample_time_ms or 0)
    if delta >= state.threshold and elapsed >= state.min_interval_ms:
        sample = FrameSample(frame=frame, delta_score=delta, reason=SampleReason.SCENE_CHANGE)
        new_state = replace(
            state,
            last_sampled=frame,
            last_sample_time_ms=frame.timestamp_ms,
            last_seen_time_ms=frame.timestamp_ms,
        )
        return True, new_state, sample

    return False, replace(state, last_seen_time_ms=frame.timestamp_ms), None


def encode_image(
    source: Frame | str | Path | bytes,
    max_edge: int = 768,
    quality: int = 80,
) -> tuple[bytes, str]:
    """Encode a frame or stored image as JPEG bytes plus a media type.

    The longest edge is scaled down to ``max_edge`` (never up); encoding is
    deterministic for fixed inputs and settings.
    """
    if isinstance(source, Frame):
        arr = (np.asarray(source.pixels) * 255.0).round().astype(np.uint8)
        img = Image.fromarray(arr, mode="L")
    elif isinstance(source, bytes):
        try:
            img = Image.open(io.BytesIO(source))
            img.load()
        except Exception as e:
            raise FrameError(f"cannot decode image bytes: {e}") from e
    else:
        path = Path(source)
        try:
            img = Image.open(path)
            img.load()
        except Exception as e:
            raise FrameError(f"cannot decode image {path}: {e}") from e

    if img.width == 0 or img.height == 0:
        raise FrameError("zero-dimension image")
    if img.mode not in ("RGB", "L"):
        img = img.convert("RGB")

    longest = max(img.width, img.height)
    if longest > max_edge:
        scale = max_edge / longest
        new_size = (max(1, round(img.width * scale)), max(1, round(img.height * scale)))
        img = img.resize(new_size, Image.LANCZOS)

    buf = io.BytesIO()
    img.save(buf, format="JPEG", quality=quality)
    return buf.getvalue(), "image/jpeg"


def caption_scene(image_bytes: bytes, style: str, gateway, source_id: str = "") -> SceneCaption:
    """Generate a scene caption through the configured vision-language
    gateway; raises on an empty provider reply."""
    instruction = _caption_instruction(style)
    text = gateway.caption(image_bytes, instruction)
    if not text or not text.strip():
        raise ValueError("empty caption")
    return SceneCaption(
        text=text.strip(),
        source_id=source_id,
        model_id=gateway.config.model_id,
        style=style,
    )


def _caption_instruction(style: str) -> str:
    from .prompting import caption_instruction

    return caption_instruction(style)
