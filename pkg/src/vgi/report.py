"""Result aggregation: per-trigger accuracy-by-condition tables, paired
McNemar comparisons, and verdicts for the three study hypotheses.

H1 (visual helps): C2, C3 > C1. H2 (direct beats captions): C3 >= C2 with a
real within-item gain. H3 (robustness): C4 does not degrade vs. C1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .corpus import TriggerCategory
from .evalstats import (
    Condition,
    ConditionSummary,
    EmptyCellError,
    McNemarResult,
    TrialRecord,
    Verdict,
    paired_mcnemar,
    read_trials,
    summarize,
)

ALPHA = 0.05

MCNEMAR_PAIRS = [
    (Condition.C1_SPEECH_ONLY, Condition.C2_CAPTION),
    (Condition.C2_CAPTION, Condition.C3_MULTIMODAL),
    (Condition.C1_SPEECH_ONLY, Condition.C3_MULTIMODAL),
    (Condition.C1_SPEECH_ONLY, Condition.C4_ADVERSARIAL),
]

PROVENANCE_NOTE = (
    "Accuracies in this report reflect the corpus, provider, and captions of "
    "this run only. The reference results this harness was designed around "
    "came from a private 120-item corpus and a remote model snapshot, and are "
    "not reproducible at desk scale; the statistics pipeline itself is "
    "verified against exact enumeration oracles instead."
)


@dataclass(frozen=True)
class HypothesisVerdict:
    name: str
    statement: str
    supported: bool
    detail: str

    def line(self) -> str:
        status = "supported" if self.supported else "not supported"
        return f"{self.name} ({self.statement}): {status} — {self.detail}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "supported": self.supported,
            "detail": self.detail,
        }


@dataclass
class Report:
    cells: dict[TriggerCategory, dict[Condition, ConditionSummary | None]]
    mcnemar: dict[TriggerCategory, list[McNemarResult]]
    pooled: dict[Condition, ConditionSummary | None]
    pooled_mcnemar: list[McNemarResult]
    hypotheses: list[HypothesisVerdict]
    warnings: list[str]
    note: str = PROVENANCE_NOTE

    def to_dict(self) -> dict:
        return {
            "cells": {
                trig.value: {
                    cond.value: (cell.to_dict() if cell else None)
                    for cond, cell in conds.items()
                }
                for trig, conds in self.cells.items()
            },
            "mcnemar": {
                trig.value: [m.to_dict() for m in results]
                for trig, results in self.mcnemar.items()
            },
            "pooled": {
                cond.value: (cell.to_dict() if cell else None)
                for cond, cell in self.pooled.items()
            },
            "pooled_mcnemar": [m.to_dict() for m in self.pooled_mcnemar],
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "warnings": self.warnings,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _cell(trials: list[TrialRecord], trigger, condition, warnings: list[str]):
    subset = [
        t
        for t in trials
        if t.condition is condition and (trigger is None or t.trigger is trigger)
    ]
    if not subset:
        warnings.append(f"no trials for cell {trigger.value if trigger else 'pooled'}/{condition.value}")
        return None
    try:
        return summarize(subset, trigger, condition)
    except EmptyCellError as e:
        warnings.append(str(e))
        return None


def _pair(trials: list[TrialRecord], trigger, cond_a, cond_b, warnings: list[str]):
    sub_a = [
        t
        for t in trials
        if t.condition is cond_a and (trigger is None or t.trigger is trigger)
    ]
    sub_b = [
        t
        for t in trials
        if t.condition is cond_b and (trigger is None or t.trigger is trigger)
    ]
    if not sub_a or not sub_b:
        return None
    try:
        result = paired_mcnemar(sub_a, sub_b)
    except ValueError as e:
        warnings.append(
            f"McNemar {cond_a.value} vs {cond_b.value} "
            f"({trigger.value if trigger else 'pooled'}): {e}"
        )
        return None
    # paired_mcnemar infers labels from trial records; make them explicit.
    return McNemarResult(
        condition_a=cond_a,
        condition_b=cond_b,
        a=result.a,
        b=result.b,
        c=result.c,
        d=result.d,
        p_exact=result.p_exact,
    )


def _fmt_acc(cell: ConditionSummary | None) -> str:
    if cell is None:
        return "absent"
    return f"{100 * cell.accuracy:.1f}% ({cell.k}/{cell.n})"


def _significant_gain(m: McNemarResult | None) -> bool:
    # Condition B improves over A: more A-incorrect/B-correct discordants
    # and a significant exact p.
    return m is not None and m.p_exact < ALPHA and m.c > m.b


def _significant_loss(m: McNemarResult | None) -> bool:
    return m is not None and m.p_exact < ALPHA and m.b > m.c


def _hypotheses(
    pooled: dict[Condition, ConditionSummary | None],
    pooled_pairs: dict[tuple[Condition, Condition], McNemarResult | None],
) -> list[HypothesisVerdict]:
    c1, c2, c3, c4 = (
        pooled.get(Condition.C1_SPEECH_ONLY),
        pooled.get(Condition.C2_CAPTION),
        pooled.get(Condition.C3_MULTIMODAL),
        pooled.get(Condition.C4_ADVERSARIAL),
    )
    m12 = pooled_pairs.get((Condition.C1_SPEECH_ONLY, Condition.C2_CAPTION))
    m13 = pooled_pairs.get((Condition.C1_SPEECH_ONLY, Condition.C3_MULTIMODAL))
    m23 = pooled_pairs.get((Condition.C2_CAPTION, Condition.C3_MULTIMODAL))
    m14 = pooled_pairs.get((Condition.C1_SPEECH_ONLY, Condition.C4_ADVERSARIAL))

    def pair_detail(label: str, base, other, m) -> str:
        if m is None:
            return f"{label}: no paired data"
        return (
            f"{label}: {_fmt_acc(other)} vs {_fmt_acc(base)}, "
            f"McNemar b={m.b} c={m.c} p={m.p_exact:.4g}"
        )

    h1 = HypothesisVerdict(
        name="H1",
        statement="visual helps: C2, C3 > C1 on trigger resolution",
        supported=_significant_gain(m12) or _significant_gain(m13),
        detail="; ".join(
            [
                pair_detail("C2 vs C1", c1, c2, m12),
                pair_detail("C3 vs C1", c1, c3, m13),
            ]
        ),
    )
    h2 = HypothesisVerdict(
        name="H2",
        statement="direct multimodal adds over captions: C3 >= C2",
        supported=_significant_gain(m23),
        detail=pair_detail("C3 vs C2", c2, c3, m23),
    )
    h3 = HypothesisVerdict(
        name="H3",
        statement="robustness: C4 does not degrade vs. C1",
        supported=not _significant_loss(m14),
        detail=pair_detail("C4 vs C1", c1, c4, m14),
    )
    return [h1, h2, h3]


def build_report(trials: list[TrialRecord]) -> Report:
    """Aggregate a trial list into cells, paired tests, and verdicts.

    Missing conditions or empty cells are reported as warnings and left
    absent; they never abort the report.
    """
    if not trials:
        raise ValueError("no trials to report")

    warnings: list[str] = []
    triggers = sorted({t.trigger for t in trials}, key=lambda t: t.value)

    cells: dict[TriggerCategory, dict[Condition, ConditionSummary | None]] = {}
    mcnemar: dict[TriggerCategory, list[McNemarResult]] = {}
    for trig in triggers:
        cells[trig] = {
            cond: _cell(trials, trig, cond, warnings) for cond in Condition
        }
        mcnemar[trig] = [
            m
            for a, b in MCNEMAR_PAIRS
            if (m := _pair(trials, trig, a, b, warnings)) is not None
        ]

    pooled = {cond: _cell(trials, None, cond, warnings) for cond in Condition}
    pooled_pairs = {
        (a, b): _pair(trials, None, a, b, warnings) for a, b in MCNEMAR_PAIRS
    }
    pooled_mcnemar = [m for m in pooled_pairs.values() if m is not None]

    return Report(
        cells=cells,
        mcnemar=mcnemar,
        pooled=pooled,
        pooled_mcnemar=pooled_mcnemar,
        hypotheses=_hypotheses(pooled, pooled_pairs),
        warnings=warnings,
    )


_CONDITION_LABELS = {
    Condition.C1_SPEECH_ONLY: "C1 speech-only",
    Condition.C2_CAPTION: "C2 speech+caption",
    Condition.C3_MULTIMODAL: "C3 direct multimodal",
    Condition.C4_ADVERSARIAL: "C4 adversarial caption",
}


def render_text(report: Report) -> str:
    """Plain-text tables mirroring the per-trigger accuracy-by-condition
    layout, plus the hypothesis verdict lines."""
    lines: list[str] = []
    for trig, conds in report.cells.items():
        lines.append(f"== {trig.value} ==")
        lines.append(f"{'condition':<24}{'accuracy':<18}{'wilson 95% ci':<18}{'p vs chance':<12}")
        for cond in Condition:
            cell = conds.get(cond)
            if cell is None:
                lines.append(f"{_CONDITION_LABELS[cond]:<24}{'absent':<18}{'-':<18}{'-':<12}")
                continue
            ci = f"[{100 * cell.wilson_lo:.1f}, {100 * cell.wilson_hi:.1f}]"
            lines.append(
                f"{_CONDITION_LABELS[cond]:<24}{_fmt_acc(cell):<18}{ci:<18}{cell.binom_p:.3g}"
            )
        for m in report.mcnemar.get(trig, []):
            lines.append(
                f"  McNemar {m.condition_a.value} vs {m.condition_b.value}: "
                f"a={m.a} b={m.b} c={m.c} d={m.d} p={m.p_exact:.4g}"
            )
        lines.append("")

    lines.append("== pooled (all triggers) ==")
    for cond in Condition:
        lines.append(f"{_CONDITION_LABELS[cond]:<24}{_fmt_acc(report.pooled.get(cond)):<18}")
    lines.append("")
    lines.append("== hypotheses ==")
    for h in report.hypotheses:
        lines.append(h.line())
    if report.warnings:
        lines.append("")
        lines.append("== warnings ==")
        lines.extend(f"  {w}" for w in report.warnings)
    lines.append("")
    lines.append(f"note: {report.note}")
    return "\n".join(lines) + "\n"


def run_report(trials_path: str | Path, out_dir: str | Path | None = None) -> Report:
    """Load a trials file, build the report, and (optionally) write
    report.json and report.txt into ``out_dir``."""
    trials = read_trials(trials_path)
    report = build_report(trials)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json(), encoding="utf-8")
        (out / "report.txt").write_text(render_text(report), encoding="utf-8")
    return report
