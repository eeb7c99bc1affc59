"""Acceptance suite: each test enforces one release criterion at its stated
tolerance and prints a PASS/FAIL line. Run with `pytest tests/test_acceptance.py -v -s`.
"""

from __future__ import annotations

import functools
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from vgi.corpus import Corpus, TriggerCategory, generate_adversarial, load_corpus
from vgi.evalstats import exact_binomial_p, mcnemar_exact, wilson_ci
from vgi.gateway import Gateway, MockScript, MockTransport, ProviderConfig
from vgi.prompting import CaptionStore, Condition, route_condition
from vgi.report import build_report, run_report
from vgi.runner import RunConfig, run_batch
from vgi.vision import Frame, SamplerState, should_sample

from conftest import make_corpus

REPO_ROOT = Path(__file__).resolve().parent.parent


def criterion(name: str):
    """Print one PASS/FAIL line per criterion, whatever pytest captures."""

    def decorator(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE FAIL: {name}", file=sys.stderr)
                raise
            print(f"ACCEPTANCE PASS: {name}", file=sys.stderr)
            return result

        return wrapper

    return decorator


# --------------------------------------------------------------------------
# 1. Statistics golden suite: the twelve reported cells.

# (trigger, k, n, accuracy%, p spec, wilson endpoints or None)
# p spec: ("=", value, decimals) for printed values, ("<", bound) for
# strict significance bounds.
GOLDEN_CELLS = [
    ("lexical", 21, 40, 52.5, ("=", 0.87, 2), (37.5, 67.1)),
    ("lexical", 34, 40, 85.0, ("<", 0.001), (71.0, 92.9)),
    ("lexical", 29, 40, 72.5, ("<", 0.01), (57.2, 83.9)),
    ("lexical", 21, 40, 52.5, ("=", 0.87, 2), (37.5, 67.1)),
    ("gender", 23, 40, 57.5, ("=", 0.43, 2), (42.0, 71.5)),
    ("gender", 28, 40, 70.0, ("=", 0.017, 3), (54.6, 81.9)),
    ("gender", 27, 40, 67.5, ("=", 0.038, 3), (52.0, 79.9)),
    ("gender", 20, 40, 50.0, ("=", 1.0, 2), (35.2, 64.8)),
    ("syntactic", 20, 40, 50.0, ("=", 1.0, 2), (35.2, 64.8)),
    ("syntactic", 20, 40, 50.0, ("=", 1.0, 2), (35.2, 64.8)),
    ("syntactic", 22, 40, 55.0, ("=", 0.64, 2), (39.8, 69.3)),
    ("syntactic", 22, 40, 55.0, ("=", 0.64, 2), (39.8, 69.3)),
]

WILSON_TOLERANCE_PP = 0.2  # percentage points


@criterion("statistics golden suite (twelve reported cells, < 1 s)")
def test_statistics_golden_suite():
    start = time.monotonic()
    for trigger, k, n, acc_pct, p_spec, wilson in GOLDEN_CELLS:
        assert 100 * k / n == acc_pct, f"{trigger} {k}/{n}: accuracy mismatch"

        p = exact_binomial_p(k, n)
        if p_spec[0] == "=":
            _, value, decimals = p_spec
            assert round(p, decimals) == value, (
                f"{trigger} {k}/{n}: p={p:.6f} does not print as {value}"
            )
        else:
            _, bound = p_spec
            assert p < bound, f"{trigger} {k}/{n}: p={p:.6f} not under {bound}"

        lo, hi = wilson_ci(k, n)
        want_lo, want_hi = wilson
        assert abs(100 * lo - want_lo) <= WILSON_TOLERANCE_PP + 1e-9, (
            f"{trigger} {k}/{n}: wilson lo {100 * lo:.3f} vs printed {want_lo}"
        )
        assert abs(100 * hi - want_hi) <= WILSON_TOLERANCE_PP + 1e-9, (
            f"{trigger} {k}/{n}: wilson hi {100 * hi:.3f} vs printed {want_hi}"
        )
    elapsed = time.monotonic() - start
    assert elapsed < 1.0, f"golden suite took {elapsed:.3f}s"


# --------------------------------------------------------------------------
# 2. Binomial oracle: brute-force pmf enumeration, all n <= 60, 1e-12.


def _pascal_row(n: int) -> list[float]:
    row = [1.0]
    for _ in range(n):
        row = [1.0] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1.0]
    return row


@criterion("binomial test agrees with brute-force enumeration (n <= 60, 1e-12)")
def test_binomial_against_bruteforce_oracle():
    for n in range(1, 61):
        row = _pascal_row(n)
        scale = 0.5 ** n
        for k in range(n + 1):
            if 2 * k <= n:
                tail = sum(row[i] for i in range(0, k + 1)) * scale
            else:
                tail = sum(row[i] for i in range(k, n + 1)) * scale
            expected = min(1.0, 2.0 * tail)
            assert abs(exact_binomial_p(k, n) - expected) < 1e-12, (k, n)


# --------------------------------------------------------------------------
# 3. McNemar oracle: exhaustive outcome enumeration, all b+c <= 20, 1e-12.


@criterion("mcnemar agrees with exhaustive discordant enumeration (b+c <= 20, 1e-12)")
def test_mcnemar_against_exhaustive_oracle():
    for m in range(0, 21):
        # Enumerate all 2^m discordant outcome vectors once per m.
        histogram = [0] * (m + 1)
        for x in range(2**m):
            histogram[x.bit_count()] += 1
        total = float(2**m)
        for b in range(m + 1):
            c = m - b
            if m == 0:
                expected = 1.0
            else:
                lo, hi = min(b, c), max(b, c)
                hits = sum(histogram[x] for x in range(m + 1) if x <= lo or x >= hi)
                expected = hits / total
            assert abs(mcnemar_exact(b, c) - expected) < 1e-12, (b, c)


# --------------------------------------------------------------------------
# 4. Property suites.


@criterion("wilson mirror symmetry and bounds")
def test_wilson_properties():
    for n in (1, 2, 3, 7, 19, 40, 173, 400):
        for k in range(n + 1):
            lo, hi = wilson_ci(k, n)
            mlo, mhi = wilson_ci(n - k, n)
            assert abs(lo - (1 - mhi)) < 1e-12
            assert abs(hi - (1 - mlo)) < 1e-12
            assert 0.0 <= lo <= hi <= 1.0
    widths = [wilson_ci(n // 2, n)[1] - wilson_ci(n // 2, n)[0] for n in (2, 8, 32, 128, 512)]
    assert all(b < a for a, b in zip(widths, widths[1:]))


@criterion("binomial symmetry and midpoint clamping")
def test_binomial_properties():
    for n in (1, 2, 5, 17, 40, 61):
        for k in range(n + 1):
            assert exact_binomial_p(k, n) == pytest.approx(exact_binomial_p(n - k, n), abs=1e-15)
    for n in (2, 4, 20, 40, 300):
        assert exact_binomial_p(n // 2, n) == 1.0
    assert mcnemar_exact(3, 7) == mcnemar_exact(7, 3)


@criterion("adversarial pairing is a derangement over 1000 random corpora")
def test_derangement_property_suite():
    rng = random.Random(2024)
    for trial in range(1000):
        n = rng.randint(2, 200)
        corpus = make_corpus(n)
        pairing = generate_adversarial(corpus, seed=trial)
        assert len(pairing.entries) == n
        assert all(k != v for k, v in pairing.entries.items())
        assert sorted(pairing.entries.values()) == sorted(pairing.entries.keys())
        again = generate_adversarial(corpus, seed=trial)
        assert again.to_jsonl() == pairing.to_jsonl()


def _flat(value: float, ts: int) -> Frame:
    return Frame(width=6, height=4, pixels=np.full((4, 6), value), timestamp_ms=ts)


@criterion("sampler threshold monotonicity and debounce on random frame sequences")
def test_sampler_property_suite():
    rng = random.Random(77)
    for _ in range(150):
        interval = rng.choice([0, 100, 800])
        t_lo = rng.uniform(0.02, 0.4)
        t_hi = rng.uniform(t_lo, 0.95)
        lo = SamplerState(threshold=t_lo, min_interval_ms=interval)
        hi = SamplerState(threshold=t_hi, min_interval_ms=interval)
        ts = 0
        sample_times_lo: list[int] = []
        sample_times_hi: list[int] = []
        for _ in range(40):
            ts += rng.randint(1, 400)
            frame = _flat(rng.random(), ts)
            # Per-decision monotonicity whenever both samplers share state.
            same_state = (
                lo.last_sampled is None
                and hi.last_sampled is None
            ) or (
                lo.last_sampled is not None
                and hi.last_sampled is not None
                and np.array_equal(lo.last_sampled.pixels, hi.last_sampled.pixels)
                and lo.last_sample_time_ms == hi.last_sample_time_ms
            )
            d_lo, lo, s_lo = should_sample(lo, frame)
            d_hi, hi, s_hi = should_sample(hi, frame)
            if same_state and d_hi:
                assert d_lo, "a stricter threshold sampled where the looser one did not"
            if d_lo:
                sample_times_lo.append(frame.timestamp_ms)
            if d_hi:
                sample_times_hi.append(frame.timestamp_ms)
        for times in (sample_times_lo, sample_times_hi):
            gaps = [b - a for a, b in zip(times, times[1:])]
            assert all(g >= interval for g in gaps), "debounce violated"


@criterion("C1 prompts invariant under visual-input mutation")
def test_c1_invariance_property():
    corpus = make_corpus(24)
    item = corpus.items[3]
    baseline = route_condition(item, Condition.C1_SPEECH_ONLY)
    rng = random.Random(5)
    for _ in range(100):
        captions = CaptionStore()
        for other in corpus.items:
            captions.put(other.id, f"fuzz-{rng.getrandbits(48):012x}")
        pairing = generate_adversarial(corpus, rng.randrange(10**9))
        mutated = route_condition(
            item, Condition.C1_SPEECH_ONLY, pairing=pairing, captions=captions
        )
        assert mutated == baseline


# --------------------------------------------------------------------------
# 5. End-to-end mock run: 12-item fixture corpus x 4 conditions, three
#    byte-identical runs, verdicts checked against hand-filled tables.

E2E_SEED = 17


def _outcome_pattern(corpus: Corpus) -> dict[Condition, set[str]]:
    """Correct-item sets per condition: C1 and C4 share four items, C2
    misses only the last syntactic item, C3 misses the last two."""
    per_trigger = {
        trig: sorted(it.id for it in corpus.by_trigger(trig)) for trig in TriggerCategory
    }
    lex, gen, syn = (
        per_trigger[TriggerCategory.LEXICAL],
        per_trigger[TriggerCategory.GENDER],
        per_trigger[TriggerCategory.SYNTACTIC],
    )
    all_ids = set(lex) | set(gen) | set(syn)
    baseline = {lex[0], lex[1], gen[0], syn[0]}
    return {
        Condition.C1_SPEECH_ONLY: baseline,
        Condition.C2_CAPTION: all_ids - {syn[3]},
        Condition.C3_MULTIMODAL: all_ids - {syn[2], syn[3]},
        Condition.C4_ADVERSARIAL: set(baseline),
    }


def _scripted_gateway(corpus: Corpus, pattern: dict[Condition, set[str]]) -> Gateway:
    captions = CaptionStore()
    for item in corpus.items:
        captions.put(item.id, item.caption_gold)
    pairing = generate_adversarial(corpus, E2E_SEED)
    translations: dict[str, str] = {}
    for item in corpus.items:
        for cond in Condition:
            bundle = route_condition(
                item, cond, pairing=pairing, captions=captions, model_id="mock-model"
            )
            correct = item.id in pattern[cond]
            reply = item.intended.gold_reference if correct else item.competing[0].gold_reference
            translations[bundle.digest] = reply
    cfg = ProviderConfig(base_url="mock://", model_id="mock-model")
    return Gateway(cfg, transport=MockTransport(MockScript(translations=translations)), sleep=lambda s: None)


@criterion("end-to-end mock run: byte-identical artifacts and correct verdicts (< 10 s)")
def test_end_to_end_mock_run(tmp_path, e2e_corpus_dir):
    start = time.monotonic()
    manifest = e2e_corpus_dir / "corpus.jsonl"
    corpus = load_corpus(manifest)
    assert len(corpus) == 12
    pattern = _outcome_pattern(corpus)

    artifacts = []
    for run_idx in range(3):
        out = tmp_path / f"run{run_idx}"
        config = RunConfig(
            corpus_path=manifest,
            output_dir=out,
            conditions=list(Condition),
            adversarial_seed=E2E_SEED,
            provider=ProviderConfig(base_url="mock://", model_id="mock-model"),
        )
        result = run_batch(config, gateway=_scripted_gateway(corpus, pattern))
        assert result.errors == []
        assert len(result.trials) == 48
        report = run_report(out / "trials.jsonl", out_dir=out / "report")
        artifacts.append(
            (
                (out / "trials.jsonl").read_bytes(),
                (out / "report" / "report.json").read_bytes(),
            )
        )

    assert artifacts[0] == artifacts[1] == artifacts[2], "artifact chain not byte-identical"

    # Hand-filled 2x2 tables for the scripted pattern.
    report = build_report(result.trials)
    tables = {(m.condition_a, m.condition_b): m for m in report.pooled_mcnemar}
    m12 = tables[(Condition.C1_SPEECH_ONLY, Condition.C2_CAPTION)]
    assert (m12.a, m12.b, m12.c, m12.d) == (4, 0, 7, 1) and m12.p_exact == pytest.approx(2 / 128)
    m13 = tables[(Condition.C1_SPEECH_ONLY, Condition.C3_MULTIMODAL)]
    assert (m13.a, m13.b, m13.c, m13.d) == (4, 0, 6, 2) and m13.p_exact == pytest.approx(2 / 64)
    m23 = tables[(Condition.C2_CAPTION, Condition.C3_MULTIMODAL)]
    assert (m23.a, m23.b, m23.c, m23.d) == (10, 1, 0, 1) and m23.p_exact == 1.0
    m14 = tables[(Condition.C1_SPEECH_ONLY, Condition.C4_ADVERSARIAL)]
    assert (m14.a, m14.b, m14.c, m14.d) == (4, 0, 0, 8) and m14.p_exact == 1.0

    verdicts = {h.name: h.supported for h in report.hypotheses}
    assert verdicts == {"H1": True, "H2": False, "H3": True}

    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"end-to-end acceptance took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# 6. The explicit non-reproducibility note ships with the artifact.


@criterion("non-reproducibility note present in README and report output")
def test_non_reproducibility_note():
    readme = (REPO_ROOT / "README.md").read_text(encoding="utf-8")
    assert "not reproducible" in readme.lower()
    assert "85" in readme  # the headline caption-grounded lexical accuracy
    assert "vgi run" in readme

    from vgi.report import PROVENANCE_NOTE

    assert "not reproducible at desk scale" in PROVENANCE_NOTE
