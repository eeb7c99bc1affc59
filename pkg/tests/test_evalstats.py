from __future__ import annotations

import math

import pytest

from vgi.corpus import SenseSpec, TriggerCategory
from vgi.evalstats import (
    Condition,
    EmptyCellError,
    Judgement,
    TrialRecord,
    Verdict,
    exact_binomial_p,
    judge,
    load_overrides,
    mcnemar_exact,
    paired_mcnemar,
    read_trials,
    summarize,
    wilson_ci,
    write_trials,
)

from conftest import make_item


class TestJudge:
    def test_intended_marker_only_is_correct(self):
        item = make_item()
        j = judge("Give me the wrench", item)
        assert j.verdict is Verdict.CORRECT
        assert "wrench" in j.matched_markers

    def test_competing_marker_alongside_is_incorrect(self):
        item = make_item()
        j = judge("Give me the key or the wrench", item)
        assert j.verdict is Verdict.INCORRECT
        assert "key" in j.matched_markers

    def test_no_markers_is_unjudged(self):
        j = judge("Pass it to me", make_item())
        assert j.verdict is Verdict.UNJUDGED
        assert j.matched_markers == ()

    def test_whole_word_matching_no_prefix_swallowing(self):
        item = make_item(
            senses=(
                SenseSpec("male", "male doctor", ("dottore",), "Il dottore arriva."),
                SenseSpec("female", "female doctor", ("dottoressa",), "La dottoressa arriva."),
            ),
            intended="female",
        )
        j = judge("La dottoressa arriva subito", item)
        assert j.verdict is Verdict.CORRECT  # "dottore" must not fire inside "dottoressa"

    def test_case_insensitive(self):
        assert judge("GIVE ME THE WRENCH", make_item()).verdict is Verdict.CORRECT

    def test_multiword_markers(self):
        item = make_item(
            senses=(
                SenseSpec("m", "", ("il giudice",), "Il giudice ha deciso."),
                SenseSpec("f", "", ("la giudice",), "La giudice ha deciso."),
            ),
            intended="f",
        )
        assert judge("La giudice ha deciso ieri.", item).verdict is Verdict.CORRECT
        assert judge("Il giudice ha deciso ieri.", item).verdict is Verdict.INCORRECT

    def test_order_independent_over_marker_lists(self):
        base = make_item()
        flipped = make_item(senses=tuple(reversed(base.senses)), intended="wrench")
        for text in ("the wrench", "the key", "the spanner and key", "nothing"):
            assert judge(text, base).verdict == judge(text, flipped).verdict

    def test_overrides_roundtrip(self, tmp_path):
        path = tmp_path / "overrides.jsonl"
        path.write_text(
            '{"item_id": "a", "condition": "C2", "verdict": "correct", "rationale": "human check"}\n',
            encoding="utf-8",
        )
        overrides = load_overrides(path)
        assert overrides[("a", "C2")].verdict is Verdict.CORRECT
        assert overrides[("a", "C2")].rationale == "human check"


class TestWilsonCI:
    # Printed interval endpoints reproduced at their stated precision.
    @pytest.mark.parametrize(
        "k,n,lo,hi",
        [
            (21, 40, 0.375, 0.671),
            (20, 40, 0.352, 0.648),
            (29, 40, 0.572, 0.839),
        ],
    )
    def test_reported_cells(self, k, n, lo, hi):
        got_lo, got_hi = wilson_ci(k, n)
        assert got_lo == pytest.approx(lo, abs=5e-4)
        assert got_hi == pytest.approx(hi, abs=5e-4)

    def test_symmetric_about_half_when_k_is_half(self):
        lo, hi = wilson_ci(20, 40)
        assert lo + hi == pytest.approx(1.0, abs=1e-12)

    def test_zero_successes_lower_bound_is_exactly_zero(self):
        lo, hi = wilson_ci(0, 10)
        assert lo == 0.0
        assert hi > 0.0

    def test_mirror_symmetry(self):
        for n in (1, 2, 7, 40, 173):
            for k in range(n + 1):
                lo, hi = wilson_ci(k, n)
                mlo, mhi = wilson_ci(n - k, n)
                assert abs(lo - (1 - mhi)) < 1e-12
                assert abs(hi - (1 - mlo)) < 1e-12

    def test_endpoints_within_unit_interval(self):
        for n in (1, 3, 10, 50, 400):
            for k in range(0, n + 1, max(1, n // 7)):
                lo, hi = wilson_ci(k, n)
                assert 0.0 <= lo <= hi <= 1.0

    def test_width_strictly_decreases_in_n_at_even_odds(self):
        widths = []
        for n in (2, 4, 8, 16, 32, 64, 128, 256):
            lo, hi = wilson_ci(n // 2, n)
            widths.append(hi - lo)
        assert all(b < a for a, b in zip(widths, widths[1:]))

    def test_n_zero_rejected(self):
        with pytest.raises(ValueError):
            wilson_ci(0, 0)

    def test_agrees_with_scipy_reference(self):
        scipy_stats = pytest.importorskip("scipy.stats")
        for k, n in [(3, 10), (21, 40), (34, 40), (0, 5), (5, 5)]:
            res = scipy_stats.binomtest(k, n).proportion_ci(
                confidence_level=0.95, method="wilson"
            )
            lo, hi = wilson_ci(k, n)
            assert lo == pytest.approx(res.low, abs=1e-6)
            assert hi == pytest.approx(res.high, abs=1e-6)


def binom_p_bruteforce(k: int, n: int) -> float:
    """Independent oracle: Pascal's-triangle pmf enumeration in floats."""
    row = [1.0]
    for _ in range(n):
        row = [1.0] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1.0]
    scale = 0.5 ** n
    if 2 * k <= n:
        tail = sum(row[i] for i in range(0, k + 1)) * scale
    else:
        tail = sum(row[i] for i in range(k, n + 1)) * scale
    return min(1.0, 2.0 * tail)


class TestExactBinomial:
    @pytest.mark.parametrize(
        "k,n,expected,places",
        [
            (21, 40, 0.87, 2),
            (23, 40, 0.43, 2),
            (22, 40, 0.64, 2),
            (28, 40, 0.0166, 4),
            (20, 40, 1.0, 2),
        ],
    )
    def test_reported_values(self, k, n, expected, places):
        assert round(exact_binomial_p(k, n), places) == expected

    def test_clamping_at_the_midpoint(self):
        # Unclamped doubling gives 2 * 0.5627 = 1.1254 at k = n/2.
        assert exact_binomial_p(20, 40) == 1.0
        lower_tail = sum(math.comb(40, i) for i in range(21)) / 2**40
        assert lower_tail == pytest.approx(0.5627, abs=5e-5)
        assert 2 * lower_tail == pytest.approx(1.1254, abs=1e-4)

    def test_small_p_cells_under_their_bounds(self):
        assert exact_binomial_p(34, 40) < 0.001
        assert exact_binomial_p(29, 40) < 0.01

    def test_symmetry_about_n_over_2(self):
        for n in (1, 2, 5, 40, 61):
            for k in range(n + 1):
                assert exact_binomial_p(k, n) == pytest.approx(
                    exact_binomial_p(n - k, n), abs=1e-15
                )

    def test_midpoint_always_one_for_even_n(self):
        for n in (2, 10, 40, 100):
            assert exact_binomial_p(n // 2, n) == 1.0

    def test_agrees_with_bruteforce_enumeration_to_1e12(self):
        for n in range(1, 61):
            for k in range(n + 1):
                assert abs(exact_binomial_p(k, n) - binom_p_bruteforce(k, n)) < 1e-12

    def test_large_n_does_not_underflow(self):
        p = exact_binomial_p(4900, 10_000)
        assert 0.0 < p <= 1.0

    def test_bounds_and_preconditions(self):
        with pytest.raises(ValueError):
            exact_binomial_p(0, 0)
        with pytest.raises(ValueError):
            exact_binomial_p(5, 4)


def mcnemar_bruteforce(b: int, c: int) -> float:
    """Independent oracle: enumerate all 2^m discordant outcome vectors and
    count those at least as extreme as the observed split."""
    m = b + c
    if m == 0:
        return 1.0
    lo, hi = min(b, c), max(b, c)
    hits = sum(1 for x in range(2**m) if x.bit_count() <= lo or x.bit_count() >= hi)
    return hits / 2**m


class TestMcNemarExact:
    def test_no_discordant_pairs(self):
        assert mcnemar_exact(0, 0) == 1.0

    def test_hand_enumerated_5_1(self):
        # 2 * (C(6,0) + C(6,1)) / 2^6 = 14/64
        assert mcnemar_exact(5, 1) == pytest.approx(0.21875, abs=1e-15)

    def test_hand_enumerated_10_0(self):
        assert mcnemar_exact(10, 0) == pytest.approx(2 / 1024, abs=1e-15)

    def test_symmetry(self):
        for b in range(0, 12):
            for c in range(0, 12):
                assert mcnemar_exact(b, c) == mcnemar_exact(c, b)

    def test_agrees_with_exhaustive_enumeration_to_1e12(self):
        for m in range(0, 17):
            for b in range(m + 1):
                assert abs(mcnemar_exact(b, m - b) - mcnemar_bruteforce(b, m - b)) < 1e-12

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            mcnemar_exact(-1, 2)


def _trial(item_id, verdict, condition=Condition.C2_CAPTION, trigger=TriggerCategory.LEXICAL):
    judgement = (
        Judgement(verdict=verdict, matched_markers=("m",), rationale="t")
        if verdict is not Verdict.UNJUDGED
        else Judgement(verdict=verdict)
    )
    return TrialRecord(
        run_id="r",
        item_id=item_id,
        trigger=trigger,
        condition=condition,
        prompt_digest=f"d-{item_id}-{condition.value}",
        model_id="mock",
        translation_text="t",
        judgement=judgement,
        donor_item_id="donor" if condition is Condition.C4_ADVERSARIAL else None,
    )


class TestSummarize:
    def test_reported_34_of_40_cell(self):
        trials = [
            _trial(f"i{n}", Verdict.CORRECT if n < 34 else Verdict.INCORRECT)
            for n in range(40)
        ]
        cell = summarize(trials, TriggerCategory.LEXICAL, Condition.C2_CAPTION)
        assert cell.k == 34 and cell.n == 40
        assert cell.accuracy == pytest.approx(0.85)
        assert cell.wilson_lo == pytest.approx(0.710, abs=0.002)
        assert cell.wilson_hi == pytest.approx(0.929, abs=0.002)
        assert cell.binom_p < 0.001

    def test_simple_arithmetic(self):
        trials = [
            _trial("a", Verdict.CORRECT),
            _trial("b", Verdict.CORRECT),
            _trial("c", Verdict.CORRECT),
            _trial("d", Verdict.INCORRECT),
        ]
        cell = summarize(trials, TriggerCategory.LEXICAL, Condition.C2_CAPTION)
        assert cell.accuracy == pytest.approx(0.75)
        assert cell.excluded == 0

    def test_unjudged_excluded_and_counted(self):
        trials = [
            _trial("a", Verdict.CORRECT),
            _trial("b", Verdict.UNJUDGED),
            _trial("c", Verdict.INCORRECT),
        ]
        cell = summarize(trials, TriggerCategory.LEXICAL, Condition.C2_CAPTION)
        assert (cell.k, cell.n, cell.excluded) == (1, 2, 1)

    def test_all_unjudged_is_an_error_with_exclusion_report(self):
        trials = [_trial(f"i{n}", Verdict.UNJUDGED) for n in range(3)]
        with pytest.raises(EmptyCellError, match="3 unjudged"):
            summarize(trials, TriggerCategory.LEXICAL, Condition.C2_CAPTION)

    def test_foreign_trial_rejected(self):
        trials = [_trial("a", Verdict.CORRECT, condition=Condition.C1_SPEECH_ONLY)]
        with pytest.raises(ValueError, match="does not belong"):
            summarize(trials, TriggerCategory.LEXICAL, Condition.C2_CAPTION)


class TestPairedMcNemar:
    def test_identical_outcomes_give_p_one(self):
        a = [_trial(f"i{n}", Verdict.CORRECT, Condition.C1_SPEECH_ONLY) for n in range(6)]
        b = [_trial(f"i{n}", Verdict.CORRECT, Condition.C2_CAPTION) for n in range(6)]
        res = paired_mcnemar(a, b)
        assert (res.b, res.c) == (0, 0)
        assert res.p_exact == 1.0

    def test_derived_two_zero_table(self):
        # A correct on {1,2,3}, B correct on {1} over items {1,2,3,4}:
        # b=2, c=0, p = 2*Pr{X<=0 | m=2} = 0.5
        a_correct = {"1", "2", "3"}
        b_correct = {"1"}
        a = [
            _trial(i, Verdict.CORRECT if i in a_correct else Verdict.INCORRECT, Condition.C1_SPEECH_ONLY)
            for i in "1234"
        ]
        b = [
            _trial(i, Verdict.CORRECT if i in b_correct else Verdict.INCORRECT, Condition.C2_CAPTION)
            for i in "1234"
        ]
        res = paired_mcnemar(a, b)
        assert (res.a, res.b, res.c, res.d) == (1, 2, 0, 1)
        assert res.p_exact == pytest.approx(0.5)
        assert res.a + res.b + res.c + res.d == 4

    def test_disjoint_item_sets_rejected(self):
        a = [_trial("x", Verdict.CORRECT, Condition.C1_SPEECH_ONLY)]
        b = [_trial("y", Verdict.CORRECT, Condition.C2_CAPTION)]
        with pytest.raises(ValueError, match="differ"):
            paired_mcnemar(a, b)


class TestTrialRecordIO:
    def test_round_trip(self, tmp_path):
        trials = [
            _trial("a", Verdict.CORRECT),
            _trial("b", Verdict.UNJUDGED),
            _trial("c", Verdict.INCORRECT, Condition.C4_ADVERSARIAL),
        ]
        path = write_trials(trials, tmp_path / "trials.jsonl")
        loaded = read_trials(path)
        assert loaded == trials

    def test_correct_flag_must_match_judgement(self):
        with pytest.raises(ValueError, match="disagrees"):
            TrialRecord(
                run_id="r",
                item_id="a",
                trigger=TriggerCategory.LEXICAL,
                condition=Condition.C1_SPEECH_ONLY,
                prompt_digest="d",
                model_id="m",
                translation_text="t",
                judgement=Judgement(verdict=Verdict.CORRECT, matched_markers=("m",)),
                correct=False,
            )

    def test_donor_only_on_c4(self):
        with pytest.raises(ValueError, match="donor"):
            _trial("a", Verdict.CORRECT, Condition.C4_ADVERSARIAL).__class__(
                **{**_trial("a", Verdict.CORRECT).__dict__, "donor_item_id": "x"}
            )
