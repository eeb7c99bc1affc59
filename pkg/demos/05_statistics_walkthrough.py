#!/usr/bin/env python3
"""Recompute the full published results table from its k/n counts alone:
accuracy, Wilson 95% interval, and the exact binomial test against the
50% chance baseline (each item has two equiprobable readings)."""

from vgi import exact_binomial_p, mcnemar_exact, wilson_ci

CELLS = {
    "lexical": [("C1", 21, 40), ("C2", 34, 40), ("C3", 29, 40), ("C4", 21, 40)],
    "gender": [("C1", 23, 40), ("C2", 28, 40), ("C3", 27, 40), ("C4", 20, 40)],
    "syntactic": [("C1", 20, 40), ("C2", 20, 40), ("C3", 22, 40), ("C4", 22, 40)],
}

for trigger, cells in CELLS.items():
    print(f"== {trigger} ==")
    print(f"{'cond':<6}{'accuracy':<16}{'wilson 95% ci':<18}{'binomial p':<12}")
    for cond, k, n in cells:
        lo, hi = wilson_ci(k, n)
        p = exact_binomial_p(k, n)
        acc = f"{100 * k / n:.1f}% ({k}/{n})"
        ci = f"[{100 * lo:.1f}, {100 * hi:.1f}]"
        print(f"{cond:<6}{acc:<16}{ci:<18}{p:.3g}")
    print()

print("the exact test doubles the smaller tail and clamps at 1:")
print(f"  20/40 -> unclamped 2*Pr{{X<=20}} = {2 * 0.5626853438097896:.4f}, reported {exact_binomial_p(20, 40)}")

print("\nMcNemar on discordant counts (within-item comparisons):")
for b, c in [(0, 0), (1, 9), (5, 1), (2, 11)]:
    print(f"  b={b:>2} c={c:>2}  ->  p = {mcnemar_exact(b, c):.6g}")

print(
    "\nNote: these are the statistics recomputed from reported counts; the"
    "\ncounts themselves came from a private corpus and a hosted model, so"
    "\nthey are not reproducible here (see README for the full note)."
)
