"""Judging and evaluation statistics.

Translations are judged against per-sense marker words; condition cells are
summarized as k/n accuracy with a 95% Wilson score interval and an exact
binomial test against the 50% chance baseline (every item has two
equiprobable readings). Paired conditions are compared with McNemar's exact
test on discordant items.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from statistics import NormalDist

from .corpus import CorpusItem, TriggerCategory
from .prompting import Condition

# Two-sided 95% normal quantile used by the Wilson interval.
Z_95 = 1.959964


class Verdict(str, Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    UNJUDGED = "unjudged"


@dataclass(frozen=True)
class Judgement:
    verdict: Verdict
    matched_markers: tuple[str, ...] = ()
    rationale: str = ""

    def __post_init__(self):
        if self.verdict is Verdict.UNJUDGED and self.matched_markers:
            raise ValueError("an unjudged translation carries no matched markers")
        if self.verdict is not Verdict.UNJUDGED and not (self.matched_markers or self.rationale):
            raise ValueError("a judged translation needs matched markers or a rationale")


@dataclass
class TrialRecord:
    """One (item x condition) translation attempt with its judgement."""

    run_id: str
    item_id: str
    trigger: TriggerCategory
    condition: Condition
    prompt_digest: str
    model_id: str
    translation_text: str
    judgement: Judgement
    correct: bool | None = None
    caption_used: str | None = None
    donor_item_id: str | None = None
    latency_ms: int = 0
    seq: int = 0
    seed: int | None = None

    def __post_init__(self):
        judged = self.judgement.verdict is not Verdict.UNJUDGED
        expected = (self.judgement.verdict is Verdict.CORRECT) if judged else None
        if self.correct is None:
            self.correct = expected
        elif self.correct != expected:
            raise ValueError("correct flag disagrees with the judgement verdict")
        if (self.donor_item_id is not None) != (self.condition is Condition.C4_ADVERSARIAL):
            raise ValueError("donor_item_id present iff condition is C4")

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "item_id": self.item_id,
            "trigger": self.trigger.value,
            "condition": self.condition.value,
            "prompt_digest": self.prompt_digest,
            "model_id": self.model_id,
            "translation_text": self.translation_text,
            "judgement": {
                "verdict": self.judgement.verdict.value,
                "matched_markers": list(self.judgement.matched_markers),
                "rationale": self.judgement.rationale,
            },
            "correct": self.correct,
            "caption_used": self.caption_used,
            "donor_item_id": self.donor_item_id,
            "latency_ms": self.latency_ms,
            "seq": self.seq,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrialRecord":
        j = d["judgement"]
        return cls(
            run_id=d["run_id"],
            item_id=d["item_id"],
            trigger=TriggerCategory(d["trigger"]),
            condition=Condition(d["condition"]),
            prompt_digest=d["prompt_digest"],
            model_id=d["model_id"],
            translation_text=d["translation_text"],
            judgement=Judgement(
                verdict=Verdict(j["verdict"]),
                matched_markers=tuple(j.get("matched_markers", ())),
                rationale=j.get("rationale", ""),
            ),
            correct=d.get("correct"),
            caption_used=d.get("caption_used"),
            donor_item_id=d.get("donor_item_id"),
            latency_ms=d.get("latency_ms", 0),
            seq=d.get("seq", 0),
            seed=d.get("seed"),
        )


def write_trials(trials: list[TrialRecord], path: str | Path) -> Path:
    path = Path(path)
    lines = [json.dumps(t.to_dict(), ensure_ascii=False, sort_keys=True) for t in trials]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_trials(path: str | Path) -> list[TrialRecord]:
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(TrialRecord.from_dict(json.loads(line)))
    return records


@dataclass(frozen=True)
class ConditionSummary:
    """One trigger x condition cell: k/n accuracy, Wilson 95% CI, exact
    binomial p versus chance. Unjudged trials are excluded from n and
    reported in ``excluded``."""

    trigger: TriggerCategory | None
    condition: Condition
    k: int
    n: int
    accuracy: float
    wilson_lo: float
    wilson_hi: float
    binom_p: float
    excluded: int = 0

    def to_dict(self) -> dict:
        return {
            "trigger": self.trigger.value if self.trigger else None,
            "condition": self.condition.value,
            "k": self.k,
            "n": self.n,
            "accuracy": self.accuracy,
            "wilson_lo": self.wilson_lo,
            "wilson_hi": self.wilson_hi,
            "binom_p": self.binom_p,
            "excluded": self.excluded,
        }


@dataclass(frozen=True)
class McNemarResult:
    """Paired 2x2 outcome table between two conditions on shared items.

    ``b`` counts items correct under A but not B; ``c`` the reverse.
    """

    condition_a: Condition
    condition_b: Condition
    a: int
    b: int
    c: int
    d: int
    p_exact: float

    def to_dict(self) -> dict:
        return {
            "condition_a": self.condition_a.value,
            "condition_b": self.condition_b.value,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "d": self.d,
            "p_exact": self.p_exact,
        }


# --------------------------------------------------------------------------
# Judging


def _marker_pattern(marker: str) -> re.Pattern:
    # Whole-word match: no word character may directly flank the marker, so
    # "dottore" never fires inside "dottoressa".
    return re.compile(r"(?<!\w)" + re.escape(marker.strip()) + r"(?!\w)", re.IGNORECASE)


def _matched_markers(translation: str, markers: tuple[str, ...]) -> list[str]:
    ordered = sorted(markers, key=lambda m: (-len(m.strip()), m))
    return [m for m in ordered if _marker_pattern(m).search(translation)]


def judge(translation: str, item: CorpusItem) -> Judgement:
    """Marker-based sense judgement of a translation.

    Correct iff at least one intended-sense marker matches and no competing
    marker does; any competing-marker hit is Incorrect (even alongside an
    intended hit); no hits at all leaves the trial Unjudged. Matching is
    case-insensitive on whole words, longest marker first.
    """
    if len(item.senses) < 2:
        raise ValueError(f"item {item.id!r} has fewer than 2 senses")

    intended_hits = _matched_markers(translation, item.intended.markers)
    competing_hits: list[str] = []
    for sense in item.competing:
        competing_hits.extend(_matched_markers(translation, sense.markers))

    if competing_hits:
        return Judgement(
            verdict=Verdict.INCORRECT,
            matched_markers=tuple(competing_hits),
            rationale="competing-sense marker matched",
        )
    if intended_hits:
        return Judgement(
            verdict=Verdict.CORRECT,
            matched_markers=tuple(intended_hits),
            rationale="intended-sense marker matched",
        )
    return Judgement(verdict=Verdict.UNJUDGED, rationale="no sense markers found")


def load_overrides(path: str | Path) -> dict[tuple[str, str], Judgement]:
    """Manual judgement overrides: JSONL of {item_id, condition, verdict,
    rationale}; keyed by (item_id, condition value)."""
    overrides: dict[tuple[str, str], Judgement] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        verdict = Verdict(d["verdict"])
        rationale = d.get("rationale", "manual override")
        overrides[(d["item_id"], d["condition"])] = Judgement(
            verdict=verdict,
            rationale=rationale if verdict is not Verdict.UNJUDGED else "",
        )
    return overrides


# --------------------------------------------------------------------------
# Statistics


def wilson_ci(k: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    center = (p + z^2/2n) / (1 + z^2/n)
    halfwidth = z * sqrt(p(1-p)/n + z^2/4n^2) / (1 + z^2/n)
    """
    if n < 1:
        raise ValueError("wilson_ci requires n >= 1")
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    z = Z_95 if confidence == 0.95 else NormalDist().inv_cdf((1 + confidence) / 2)
    p = k / n
    z2 = z * z
    denom = 1 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    # The interval lies in [0, 1] analytically; clamp away rounding dust.
    return max(0.0, center - half), min(1.0, center + half)


def _lower_tail_sum(n: int, k: int) -> int:
    # Sum of C(n, 0..k) by the exact integer multiplicative recurrence
    # C(n, i+1) = C(n, i) * (n - i) // (i + 1); no factorials, no overflow.
    term = 1
    total = 1
    for i in range(k):
        term = term * (n - i) // (i + 1)
        total += term
    return total


def _binom_tail_p(tail_sum: int, n: int) -> float:
    # Exact: 2 * tail / 2^n as a rational, then correctly rounded to float.
    return min(1.0, float(Fraction(2 * tail_sum, 1 << n)))


def exact_binomial_p(k: int, n: int) -> float:
    """Two-sided exact binomial test of H0: p = 0.5.

    p = 2*Pr{X <= k} when k <= n/2, else 2*Pr{X >= k}, clamped at 1.0
    (doubling at k = n/2 would exceed 1). Tail sums run in exact integer
    arithmetic, so any n is safe.
    """
    if n < 1:
        raise ValueError("exact_binomial_p requires n >= 1")
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    # Pr{X >= k} = Pr{X <= n-k} by symmetry of the fair binomial.
    tail = _lower_tail_sum(n, k if 2 * k <= n else n - k)
    return _binom_tail_p(tail, n)


def mcnemar_exact(b: int, c: int) -> float:
    """Exact McNemar test on discordant pair counts.

    With m = b + c discordant items and X ~ Binomial(m, 0.5):
    p = min(1, 2*Pr{X <= min(b, c)}); no discordant pairs gives p = 1.
    """
    if b < 0 or c < 0:
        raise ValueError("discordant counts must be >= 0")
    m = b + c
    if m == 0:
        return 1.0
    return _binom_tail_p(_lower_tail_sum(m, min(b, c)), m)


# --------------------------------------------------------------------------
# Aggregation


class EmptyCellError(ValueError):
    """A summary cell has no judged trials left after exclusions."""

    def __init__(self, trigger, condition, excluded: int):
        self.excluded = excluded
        super().__init__(
            f"no judged trials for {trigger}/{condition.value} "
            f"({excluded} unjudged excluded)"
        )


def summarize(
    trials: list[TrialRecord],
    trigger: TriggerCategory | None,
    condition: Condition,
) -> ConditionSummary:
    """Collapse one trigger x condition cell into counts and statistics.

    All trials must already belong to the stated cell; unjudged trials are
    excluded from n (the chance baseline assumes a forced two-way choice)
    and counted in ``excluded``.
    """
    for t in trials:
        if t.condition is not condition or (trigger is not None and t.trigger is not trigger):
            raise ValueError(
                f"trial {t.item_id!r} ({t.trigger.value}/{t.condition.value}) does not "
                f"belong to cell {trigger}/{condition.value}"
            )
    judged = [t for t in trials if t.judgement.verdict is not Verdict.UNJUDGED]
    excluded = len(trials) - len(judged)
    if not judged:
        raise EmptyCellError(trigger, condition, excluded)
    k = sum(1 for t in judged if t.judgement.verdict is Verdict.CORRECT)
    n = len(judged)
    lo, hi = wilson_ci(k, n)
    return ConditionSummary(
        trigger=trigger,
        condition=condition,
        k=k,
        n=n,
        accuracy=k / n,
        wilson_lo=lo,
        wilson_hi=hi,
        binom_p=exact_binomial_p(k, n),
        excluded=excluded,
    )


def paired_mcnemar(trials_a: list[TrialRecord], trials_b: list[TrialRecord]) -> McNemarResult:
    """McNemar's exact test between two conditions on the same items.

    Both lists must cover the same judged item ids; the 2x2 table counts
    items by (A outcome, B outcome).
    """
    judged_a = {t.item_id: t for t in trials_a if t.judgement.verdict is not Verdict.UNJUDGED}
    judged_b = {t.item_id: t for t in trials_b if t.judgement.verdict is not Verdict.UNJUDGED}
    only_a = sorted(set(judged_a) - set(judged_b))
    only_b = sorted(set(judged_b) - set(judged_a))
    if only_a or only_b:
        raise ValueError(
            f"judged item sets differ: only in A {only_a}, only in B {only_b}"
        )
    if not judged_a:
        raise ValueError("no shared judged items to compare")

    a = b = c = d = 0
    for item_id, ta in judged_a.items():
        ca = ta.judgement.verdict is Verdict.CORRECT
        cb = judged_b[item_id].judgement.verdict is Verdict.CORRECT
        if ca and cb:
            a += 1
        elif ca and not cb:
            b += 1
        elif not ca and cb:
            c += 1
        else:
            d += 1

    cond_a = trials_a[0].condition if trials_a else Condition.C1_SPEECH_ONLY
    cond_b = trials_b[0].condition if trials_b else Condition.C1_SPEECH_ONLY
    return McNemarResult(
        condition_a=cond_a,
        condition_b=cond_b,
        a=a,
        b=b,
        c=c,
        d=d,
        p_exact=mcnemar_exact(b, c),
    )
