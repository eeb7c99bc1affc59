#!/usr/bin/env python3
"""Walk through the shipped diagnostic corpus: what a trigger item looks
like, how validation works, and the token-length statistics."""

import vgi

corpus = vgi.load_corpus(vgi.reference_corpus_path())
print(f"loaded {len(corpus)} items from {vgi.reference_corpus_path().name}\n")

# One item per trigger, unpacked.
for trigger in vgi.TriggerCategory:
    item = corpus.by_trigger(trigger)[0]
    print(f"--- {trigger.value} example: {item.id}")
    print(f"  source ({item.source_lang} -> {item.target_lang}): {item.source_text!r}")
    for sense in item.senses:
        star = "*" if sense.label == item.intended_sense else " "
        print(f"  {star} sense {sense.label!r}: markers {list(sense.markers)}")
        print(f"      gold: {sense.gold_reference!r}")
    print(f"  image caption: {item.caption_gold!r}\n")

# Length statistics in the layout of the published composition table.
stats = vgi.corpus_stats(corpus)
print(f"{'Trigger':<14}{'#Items':>8}{'Mean (SD)':>14}")
for trigger, g in stats.per_trigger.items():
    print(f"{trigger.value:<14}{g.count:>8}{f'{g.mean:.2f} ({g.sd:.2f})':>14}")
o = stats.overall
print(f"{'Total':<14}{o.count:>8}{f'{o.mean:.2f} ({o.sd:.2f})':>14}")
print(f"\ntoken range: min={stats.min_tokens}, max={stats.max_tokens}")

# Validation catches broken items; build one on purpose.
broken = vgi.CorpusItem(
    id="demo-broken",
    trigger=vgi.TriggerCategory.LEXICAL,
    source_lang="it",
    target_lang="en",
    source_text="troppo corto",
    senses=corpus.items[0].senses,
    intended_sense="no-such-sense",
    image_path="images/missing.png",
)
print("\nvalidate_item on a deliberately broken item:")
for violation in vgi.validate_item(broken, check_image=False):
    print(f"  - {violation}")
