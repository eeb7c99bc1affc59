"""Prompt construction for the four grounding conditions.

The translation request is a structured concatenation: the source utterance
alone for the speech-only baseline, a scene caption prepended for the
caption conditions, or the raw image attached for the direct multimodal
condition. Instruction texts are versioned golden fixtures so that a run
manifest pins the exact wording used.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .corpus import AdversarialPairing, CorpusItem

PROMPT_FIXTURE_VERSION = "v1"
_FIXTURE_ROOT = Path(__file__).parent / "fixtures" / "prompts"

# Display names for the primary subtags used by the shipped corpus; unknown
# tags pass through verbatim.
_LANG_NAMES = {
    "it": "Italian",
    "en": "English",
    "de": "German",
    "fr": "French",
    "es": "Spanish",
    "pt": "Portuguese",
    "nl": "Dutch",
    "zh": "Chinese",
    "ja": "Japanese",
    "ar": "Arabic",
}


class Condition(str, Enum):
    """Experimental grounding conditions."""

    C1_SPEECH_ONLY = "C1"
    C2_CAPTION = "C2"
    C3_MULTIMODAL = "C3"
    C4_ADVERSARIAL = "C4"


class PromptError(ValueError):
    """A condition received the wrong kind of visual context."""


@dataclass(frozen=True)
class DecodingParams:
    """Decoding settings pinned into the prompt digest.

    Evaluation runs decode greedily (temperature 0) so that repeated runs
    and the response cache stay coherent.
    """

    temperature: float = 0.0

    def canonical(self) -> str:
        return f"temperature={self.temperature!r}"


@dataclass(frozen=True)
class ImageAttachment:
    media_type: str
    data: bytes


@dataclass(frozen=True)
class PromptBundle:
    """A fully realized translation request.

    ``digest`` covers the instruction, the user text, the attached image
    bytes, the model id, and the decoding parameters; it keys the response
    cache and ties trial records back to the exact request.
    """

    condition: Condition
    system_instruction: str
    user_text: str
    image_attachment: ImageAttachment | None
    model_id: str
    decoding: DecodingParams
    digest: str

    def __post_init__(self):
        has_image = self.image_attachment is not None
        if has_image != (self.condition is Condition.C3_MULTIMODAL):
            raise PromptError(
                f"{self.condition.value}: image attachment present iff condition is C3"
            )


def language_name(tag: str) -> str:
    primary = tag.split("-")[0].lower()
    return _LANG_NAMES.get(primary, tag)


def _fixture(name: str, version: str = PROMPT_FIXTURE_VERSION) -> str:
    path = _FIXTURE_ROOT / version / f"{name}.txt"
    return path.read_text(encoding="utf-8").strip()


def system_instruction(condition: Condition, langs: tuple[str, str]) -> str:
    """Instruction text for a condition and a (source, target) language pair.

    C1 and C3 use the naive instruction; C2 and C4 add one sentence telling
    the model to use the image description to resolve ambiguity. C4
    deliberately mimics C2: the adversarialness lives in the caption, not
    the instruction.
    """
    source, target = langs
    name = (
        "translate_grounded"
        if condition in (Condition.C2_CAPTION, Condition.C4_ADVERSARIAL)
        else "translate_naive"
    )
    return _fixture(name).format(
        source_lang=language_name(source), target_lang=language_name(target)
    )


def caption_instruction(style: str) -> str:
    """Captioning request text; ``style`` is 'generic' or 'attribute'."""
    if style not in ("generic", "attribute"):
        raise ValueError(f"unknown caption style {style!r}")
    return _fixture(f"caption_{style}")


def prompt_digest(
    condition: Condition,
    system_text: str,
    user_text: str,
    image_bytes: bytes | None,
    model_id: str,
    decoding: DecodingParams,
) -> str:
    h = hashlib.sha256()
    parts = [
        b"vgi-prompt-" + PROMPT_FIXTURE_VERSION.encode(),
        condition.value.encode(),
        system_text.encode("utf-8"),
        user_text.encode("utf-8"),
        image_bytes or b"",
        model_id.encode("utf-8"),
        decoding.canonical().encode(),
    ]
    for part in parts:
        h.update(str(len(part)).encode())
        h.update(b":")
        h.update(part)
    return h.hexdigest()


def build_prompt(
    source_text: str,
    condition: Condition,
    caption: str | None = None,
    image: ImageAttachment | None = None,
    langs: tuple[str, str] = ("it", "en"),
    model_id: str = "",
    decoding: DecodingParams = DecodingParams(),
) -> PromptBundle:
    """Realize the prompt for one utterance under one condition.

    C1 forbids both caption and image; C2/C4 require a caption; C3 requires
    an image and no caption.
    """
    if condition is Condition.C1_SPEECH_ONLY:
        if caption is not None or image is not None:
            raise PromptError("C1 is speech-only: no caption or image allowed")
        user_text = f"[Source speech: {source_text}]"
    elif condition in (Condition.C2_CAPTION, Condition.C4_ADVERSARIAL):
        if caption is None:
            raise PromptError(f"{condition.value} requires a caption")
        if image is not None:
            raise PromptError(f"{condition.value} takes a caption, not an image")
        user_text = f"[Image: {caption}] [Source speech: {source_text}]"
    elif condition is Condition.C3_MULTIMODAL:
        if caption is not None:
            raise PromptError("C3 takes an image, not a caption")
        if image is None:
            raise PromptError("C3 requires an image attachment")
        user_text = f"[Source speech: {source_text}]"
    else:  # pragma: no cover
        raise PromptError(f"unknown condition {condition!r}")

    system_text = system_instruction(condition, langs)
    attachment = image if condition is Condition.C3_MULTIMODAL else None
    digest = prompt_digest(
        condition,
        system_text,
        user_text,
        attachment.data if attachment else None,
        model_id,
        decoding,
    )
    return PromptBundle(
        condition=condition,
        system_instruction=system_text,
        user_text=user_text,
        image_attachment=attachment,
        model_id=model_id,
        decoding=decoding,
        digest=digest,
    )


@dataclass
class CaptionRecord:
    item_id: str
    caption: str
    model_id: str
    created_at: str


class CaptionStore:
    """Frozen per-item captions, persisted as JSONL.

    Batch runs caption each image once and reuse the stored text so the
    caption conditions stay reproducible across runs.
    """

    def __init__(self, records: dict[str, CaptionRecord] | None = None):
        self._records: dict[str, CaptionRecord] = records or {}

    def __contains__(self, item_id: str) -> bool:
        return item_id in self._records

    def __len__(self) -> int:
        return len(self._records)

    def get(self, item_id: str) -> str:
        try:
            return self._records[item_id].caption
        except KeyError:
            raise KeyError(f"no caption stored for item {item_id!r}") from None

    def put(self, item_id: str, caption: str, model_id: str = "") -> None:
        self._records[item_id] = CaptionRecord(
            item_id=item_id,
            caption=caption,
            model_id=model_id,
            created_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        )

    @classmethod
    def load(cls, path: str | Path) -> "CaptionStore":
        records: dict[str, CaptionRecord] = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            d = json.loads(line)
            records[d["item_id"]] = CaptionRecord(
                item_id=d["item_id"],
                caption=d["caption"],
                model_id=d.get("model_id", ""),
                created_at=d.get("created_at", ""),
            )
        return cls(records)

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        lines = [
            json.dumps(
                {
                    "item_id": r.item_id,
                    "caption": r.caption,
                    "model_id": r.model_id,
                    "created_at": r.created_at,
                },
                ensure_ascii=False,
                sort_keys=True,
            )
            for r in sorted(self._records.values(), key=lambda r: r.item_id)
        ]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path


def route_condition(
    item: CorpusItem,
    condition: Condition,
    pairing: AdversarialPairing | None = None,
    captions: CaptionStore | None = None,
    model_id: str = "",
    decoding: DecodingParams = DecodingParams(),
    encode_image=None,
) -> PromptBundle:
    """Build the prompt for a corpus item under a condition, pulling the
    right context source: nothing (C1), the item's own caption (C2), the
    item's own image (C3), or the donor's caption (C4).

    ``encode_image`` is the encoder used for C3 (defaults to
    ``vision.encode_image``); injected to keep this module free of image
    dependencies.
    """
    langs = (item.source_lang, item.target_lang)
    if condition is Condition.C1_SPEECH_ONLY:
        return build_prompt(
            item.source_text, condition, langs=langs, model_id=model_id, decoding=decoding
        )

    if condition is Condition.C2_CAPTION:
        if captions is None or item.id not in captions:
            raise PromptError(f"C2: no caption available for item {item.id!r}")
        return build_prompt(
            item.source_text,
            condition,
            caption=captions.get(item.id),
            langs=langs,
            model_id=model_id,
            decoding=decoding,
        )

    if condition is Condition.C3_MULTIMODAL:
        if item.image_file is None:
            raise PromptError(f"C3: item {item.id!r} has no resolved image file")
        if encode_image is None:
            from .vision import encode_image as encode_image_default

            encode_image = encode_image_default
        data, media_type = encode_image(item.image_file)
        return build_prompt(
            item.source_text,
            condition,
            image=ImageAttachment(media_type=media_type, data=data),
            langs=langs,
            model_id=model_id,
            decoding=decoding,
        )

    # C4: borrow the donor's caption.
    if pairing is None:
        raise PromptError(f"C4: no adversarial pairing provided (item {item.id!r})")
    try:
        donor_id = pairing.donor_for(item.id)
    except KeyError:
        raise PromptError(f"C4: pairing has no entry for item {item.id!r}") from None
    if captions is None or donor_id not in captions:
        raise PromptError(
            f"C4: no caption available for donor {donor_id!r} of item {item.id!r}"
        )
    return build_prompt(
        item.source_text,
        condition,
        caption=captions.get(donor_id),
        langs=langs,
        model_id=model_id,
        decoding=decoding,
    )
