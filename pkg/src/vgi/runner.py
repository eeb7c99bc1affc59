"""Batch evaluation runner: every corpus item under every requested
condition, cache-aware and resumable, with deterministic output files.

Trial ordering is fixed by (item_id, condition) regardless of completion
order, so repeated runs against the same inputs produce byte-identical
trials and reports.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import AdversarialPairing, Corpus, generate_adversarial, load_corpus
from .evalstats import Judgement, TrialRecord, judge, load_overrides, write_trials
from .gateway import Gateway, GatewayError, ProviderConfig
from .prompting import (
    PROMPT_FIXTURE_VERSION,
    CaptionStore,
    Condition,
    DecodingParams,
    route_condition,
)
from .vision import caption_scene, encode_image


class ConfigError(ValueError):
    """A run configuration problem caught before any provider call."""


@dataclass
class RunConfig:
    corpus_path: Path
    output_dir: Path
    conditions: list[Condition] = field(
        default_factory=lambda: [
            Condition.C1_SPEECH_ONLY,
            Condition.C2_CAPTION,
            Condition.C3_MULTIMODAL,
            Condition.C4_ADVERSARIAL,
        ]
    )
    adversarial_seed: int | None = None
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    caption_style: str = "generic"
    max_inflight: int = 4
    resume: bool = False
    overrides_path: Path | None = None

    def validate(self) -> None:
        if not self.conditions:
            raise ConfigError("no conditions requested")
        if Condition.C4_ADVERSARIAL in self.conditions and self.adversarial_seed is None:
            raise ConfigError("condition C4 requires an adversarial seed")
        if self.caption_style not in ("generic", "attribute"):
            raise ConfigError(f"unknown caption style {self.caption_style!r}")
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            probe = self.output_dir / ".write-probe"
            probe.write_text("")
            probe.unlink()
        except OSError as e:
            raise ConfigError(f"output directory not writable: {e}") from e

    def public_dict(self) -> dict:
        return {
            "corpus_path": str(self.corpus_path),
            "output_dir": str(self.output_dir),
            "conditions": [c.value for c in self.conditions],
            "adversarial_seed": self.adversarial_seed,
            "provider": self.provider.to_public_dict(),
            "caption_style": self.caption_style,
            "max_inflight": self.max_inflight,
            "resume": self.resume,
        }


@dataclass
class RunManifest:
    """Everything needed to re-execute a run byte-identically against the
    response cache (wall-clock times aside)."""

    run_id: str
    config: dict
    corpus_digest: str
    prompt_fixture_version: str
    model_id: str
    started_at: str
    finished_at: str = ""
    trial_count: int = 0
    error_count: int = 0

    def to_json(self) -> str:
        return json.dumps(self.__dict__, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


@dataclass
class RunResult:
    trials_path: Path
    manifest: RunManifest
    trials: list[TrialRecord]
    errors: list[dict]


def _corpus_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _run_id(config: RunConfig, corpus_digest: str) -> str:
    h = hashlib.sha256()
    key = {
        "corpus": corpus_digest,
        "conditions": [c.value for c in sorted(config.conditions, key=lambda c: c.value)],
        "seed": config.adversarial_seed,
        "model": config.provider.model_id,
        "caption_style": config.caption_style,
        "fixtures": PROMPT_FIXTURE_VERSION,
    }
    h.update(json.dumps(key, sort_keys=True).encode())
    return h.hexdigest()[:16]


def _ensure_captions(
    corpus: Corpus, store: CaptionStore, gateway: Gateway, style: str
) -> None:
    """Fill the caption store for every item, preferring pre-generated
    gold captions and captioning the rest once through the gateway."""
    for item in corpus.items:
        if item.id in store:
            continue
        if item.caption_gold:
            store.put(item.id, item.caption_gold, model_id="gold")
            continue
        data, _ = encode_image(item.image_file)
        caption = caption_scene(data, style, gateway, source_id=item.id)
        store.put(item.id, caption.text, model_id=caption.model_id)


def run_batch(config: RunConfig, gateway: Gateway | None = None) -> RunResult:
    """Execute item x condition trials and write trials.jsonl, manifest.json
    and (when applicable) pairing.jsonl and captions.jsonl.

    Per-trial failures are aggregated into errors.json; only corpus or
    configuration problems abort the run.
    """
    config.validate()
    corpus = load_corpus(config.corpus_path)
    started_at = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())

    if gateway is None:
        gateway = Gateway(config.provider, cache_dir=config.output_dir / "cache")

    corpus_digest = _corpus_digest(Path(config.corpus_path))
    run_id = _run_id(config, corpus_digest)

    pairing: AdversarialPairing | None = None
    if Condition.C4_ADVERSARIAL in config.conditions:
        pairing = generate_adversarial(corpus, config.adversarial_seed)
        (config.output_dir / "pairing.jsonl").write_text(
            pairing.to_jsonl(), encoding="utf-8"
        )

    captions = CaptionStore()
    needs_captions = bool(
        {Condition.C2_CAPTION, Condition.C4_ADVERSARIAL} & set(config.conditions)
    )
    captions_path = config.output_dir / "captions.jsonl"
    if needs_captions:
        if captions_path.is_file():
            captions = CaptionStore.load(captions_path)
        _ensure_captions(corpus, captions, gateway, config.caption_style)
        captions.save(captions_path)

    overrides: dict[tuple[str, str], Judgement] = {}
    if config.overrides_path is not None:
        overrides = load_overrides(config.overrides_path)

    trials_path = config.output_dir / "trials.jsonl"
    existing: dict[tuple[str, str], TrialRecord] = {}
    if config.resume and trials_path.is_file():
        from .evalstats import read_trials

        for rec in read_trials(trials_path):
            existing[(rec.item_id, rec.condition.value)] = rec

    decoding = DecodingParams(temperature=0.0)
    model_id = config.provider.model_id
    jobs: list[tuple] = [
        (item, cond)
        for item in sorted(corpus.items, key=lambda it: it.id)
        for cond in sorted(config.conditions, key=lambda c: c.value)
    ]

    errors: list[dict] = []
    records: list[TrialRecord] = []

    def run_one(item, cond) -> TrialRecord:
        bundle = route_condition(
            item,
            cond,
            pairing=pairing,
            captions=captions if needs_captions else None,
            model_id=model_id,
            decoding=decoding,
        )
        reused = existing.get((item.id, cond.value))
        if reused is not None and reused.prompt_digest == bundle.digest:
            return reused
        result = gateway.translate(bundle)
        judgement = overrides.get((item.id, cond.value)) or judge(result.text, item)
        donor = pairing.donor_for(item.id) if cond is Condition.C4_ADVERSARIAL else None
        caption_used = None
        if cond is Condition.C2_CAPTION:
            caption_used = captions.get(item.id)
        elif cond is Condition.C4_ADVERSARIAL:
            caption_used = captions.get(donor)
        return TrialRecord(
            run_id=run_id,
            item_id=item.id,
            trigger=item.trigger,
            condition=cond,
            prompt_digest=bundle.digest,
            model_id=result.model_id,
            translation_text=result.text,
            judgement=judgement,
            caption_used=caption_used,
            donor_item_id=donor,
            latency_ms=result.latency_ms,
            seed=config.adversarial_seed,
        )

    with concurrent.futures.ThreadPoolExecutor(max_workers=config.max_inflight) as pool:
        futures = {pool.submit(run_one, item, cond): (item, cond) for item, cond in jobs}
        for fut in concurrent.futures.as_completed(futures):
            item, cond = futures[fut]
            try:
                records.append(fut.result())
            except (GatewayError, ValueError, KeyError, OSError) as e:
                errors.append(
                    {
                        "item_id": item.id,
                        "condition": cond.value,
                        "kind": getattr(e, "kind", type(e).__name__),
                        "detail": str(e),
                    }
                )

    records.sort(key=lambda r: (r.item_id, r.condition.value))
    for i, rec in enumerate(records):
        rec.seq = i
    write_trials(records, trials_path)

    errors.sort(key=lambda e: (e["item_id"], e["condition"]))
    errors_path = config.output_dir / "errors.json"
    if errors:
        errors_path.write_text(
            json.dumps(errors, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
    elif errors_path.is_file():
        errors_path.unlink()

    manifest = RunManifest(
        run_id=run_id,
        config=config.public_dict(),
        corpus_digest=corpus_digest,
        prompt_fixture_version=PROMPT_FIXTURE_VERSION,
        model_id=model_id,
        started_at=started_at,
        finished_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        trial_count=len(records),
        error_count=len(errors),
    )
    (config.output_dir / "manifest.json").write_text(manifest.to_json(), encoding="utf-8")
    return RunResult(trials_path=trials_path, manifest=manifest, trials=records, errors=errors)
