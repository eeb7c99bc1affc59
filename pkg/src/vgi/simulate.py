"""Corpus-driven provider simulation.

Builds a fully scripted mock provider whose replies mimic the grounding
effect: with a matching caption the translation lands on the intended
sense (with a small deterministic miss rate), without context it falls to
chance, and with a mismatched caption it falls back to chance too. Used by
`vgi run --provider mock` and the demos; everything is a pure function of
the corpus bytes and the prompt digests.
"""

from __future__ import annotations

import hashlib

from .corpus import AdversarialPairing, Corpus, generate_adversarial
from .gateway import MockScript
from .prompting import CaptionStore, Condition, DecodingParams, route_condition

# Reply choice per condition: pick the intended sense unless the digest
# hashes into the miss bucket. Denominator 2 is a fair coin (chance).
_MISS_DENOMINATOR = {
    Condition.C1_SPEECH_ONLY: 2,
    Condition.C2_CAPTION: 8,
    Condition.C3_MULTIMODAL: 4,
    Condition.C4_ADVERSARIAL: 2,
}


def _bucket(digest: str, denominator: int) -> int:
    return int(hashlib.sha256(digest.encode()).hexdigest()[:8], 16) % denominator


def gold_caption_store(corpus: Corpus) -> CaptionStore:
    store = CaptionStore()
    for item in corpus.items:
        if item.caption_gold:
            store.put(item.id, item.caption_gold, model_id="gold")
    return store


def live_demo_script(model_id: str = "mock-model") -> MockScript:
    """Script for a mock-backed live service: every pushed frame captions
    as one demo scene, every utterance transcribes as the demo sentence,
    and the C1/C2/C3 translations of that sentence are pinned. Anything
    else falls back to a deterministic placeholder translation."""
    from .prompting import build_prompt

    utterance = "Passami la chiave"
    caption = "A mechanic's workshop with tools on a bench."
    langs = ("it", "en")
    translations = {
        build_prompt(utterance, Condition.C1_SPEECH_ONLY, langs=langs, model_id=model_id).digest:
            "Give me the key.",
        build_prompt(utterance, Condition.C2_CAPTION, caption=caption, langs=langs, model_id=model_id).digest:
            "Give me the wrench.",
    }
    return MockScript(
        translations=translations,
        captions={"*": caption},
        default_transcript=[
            {"text": utterance, "start_ms": 0, "end_ms": 1200, "is_final": True}
        ],
        fallback_translation_prefix="[mock translation ",
    )


def build_script(
    corpus: Corpus,
    conditions: list[Condition],
    adversarial_seed: int | None = None,
    model_id: str = "mock-model",
    pairing: AdversarialPairing | None = None,
) -> MockScript:
    """Scripted translations for every item x condition, plus image-keyed
    captions so caption requests resolve to the items' gold captions."""
    if Condition.C4_ADVERSARIAL in conditions and pairing is None:
        if adversarial_seed is None:
            raise ValueError("C4 simulation needs an adversarial seed or pairing")
        pairing = generate_adversarial(corpus, adversarial_seed)

    captions = gold_caption_store(corpus)
    decoding = DecodingParams(temperature=0.0)
    translations: dict[str, str] = {}
    caption_map: dict[str, str] = {}

    for item in corpus.items:
        if item.caption_gold and item.image_file is not None:
            from .vision import encode_image

            data, _ = encode_image(item.image_file)
            caption_map[hashlib.sha256(data).hexdigest()] = item.caption_gold

        for cond in conditions:
            bundle = route_condition(
                item,
                cond,
                pairing=pairing,
                captions=captions,
                model_id=model_id,
                decoding=decoding,
            )
            if _bucket(bundle.digest, _MISS_DENOMINATOR[cond]) == 0:
                reply = item.competing[0].gold_reference
            else:
                reply = item.intended.gold_reference
            translations[bundle.digest] = reply

    return MockScript(translations=translations, captions=caption_map)
