"""Vision-grounded interpreting: speech translation conditioned on visual
scene context, a diagnostic ambiguity corpus, and exact evaluation
statistics."""

from pathlib import Path

from .corpus import (
    AdversarialPairing,
    Corpus,
    CorpusError,
    CorpusItem,
    CorpusStats,
    CorpusValidationError,
    SenseSpec,
    TriggerCategory,
    corpus_stats,
    generate_adversarial,
    load_corpus,
    save_corpus,
    serialize_corpus,
    token_count,
    validate_item,
)
from .evalstats import (
    ConditionSummary,
    Judgement,
    McNemarResult,
    TrialRecord,
    Verdict,
    exact_binomial_p,
    judge,
    mcnemar_exact,
    paired_mcnemar,
    read_trials,
    summarize,
    wilson_ci,
    write_trials,
)
from .gateway import (
    Gateway,
    GatewayError,
    MockScript,
    MockTransport,
    ProviderConfig,
    TranscriptSegment,
    TranslationResult,
    mock_provider,
)
from .prompting import (
    PROMPT_FIXTURE_VERSION,
    CaptionStore,
    Condition,
    DecodingParams,
    ImageAttachment,
    PromptBundle,
    PromptError,
    build_prompt,
    route_condition,
    system_instruction,
)
from .report import Report, build_report, render_text, run_report
from .runner import ConfigError, RunConfig, RunManifest, RunResult, run_batch
from .vision import (
    Frame,
    FrameSample,
    SamplerState,
    SceneCaption,
    caption_scene,
    encode_image,
    frame_delta,
    should_sample,
)

__version__ = "0.1.0"

_DATA_DIR = Path(__file__).parent / "data"


def reference_corpus_path() -> Path:
    """Path to the shipped 120-item diagnostic corpus manifest."""
    return _DATA_DIR / "corpus.jsonl"


__all__ = [
    "AdversarialPairing",
    "CaptionStore",
    "Condition",
    "ConditionSummary",
    "ConfigError",
    "Corpus",
    "CorpusError",
    "CorpusItem",
    "CorpusStats",
    "CorpusValidationError",
    "DecodingParams",
    "Frame",
    "FrameSample",
    "Gateway",
    "GatewayError",
    "ImageAttachment",
    "Judgement",
    "McNemarResult",
    "MockScript",
    "MockTransport",
    "PROMPT_FIXTURE_VERSION",
    "PromptBundle",
    "PromptError",
    "ProviderConfig",
    "Report",
    "RunConfig",
    "RunManifest",
    "RunResult",
    "SamplerState",
    "SceneCaption",
    "SenseSpec",
    "TranscriptSegment",
    "TranslationResult",
    "TrialRecord",
    "TriggerCategory",
    "Verdict",
    "build_prompt",
    "build_report",
    "caption_scene",
    "corpus_stats",
    "encode_image",
    "exact_binomial_p",
    "frame_delta",
    "generate_adversarial",
    "judge",
    "load_corpus",
    "mcnemar_exact",
    "mock_provider",
    "paired_mcnemar",
    "read_trials",
    "reference_corpus_path",
    "render_text",
    "route_condition",
    "run_batch",
    "run_report",
    "save_corpus",
    "serialize_corpus",
    "should_sample",
    "summarize",
    "system_instruction",
    "token_count",
    "validate_item",
    "wilson_ci",
    "write_trials",
]
