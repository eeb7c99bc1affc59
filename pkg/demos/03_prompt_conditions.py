#!/usr/bin/env python3
"""Build the four grounding conditions for one ambiguous utterance and show
exactly what the model would receive under each."""

import vgi
from vgi.prompting import CaptionStore

corpus = vgi.load_corpus(vgi.reference_corpus_path())
item = corpus.by_id("lex-001-chiave")
print(f"item {item.id}: {item.source_text!r}")
print(f"intended sense: {item.intended_sense} (markers {list(item.intended.markers)})\n")

captions = CaptionStore()
for it in corpus.items:
    captions.put(it.id, it.caption_gold)
pairing = vgi.generate_adversarial(corpus, seed=7)

for condition in vgi.Condition:
    bundle = vgi.route_condition(
        item, condition, pairing=pairing, captions=captions, model_id="demo-model"
    )
    print(f"=== {condition.value} ===")
    print(f"system : {bundle.system_instruction}")
    print(f"user   : {bundle.user_text}")
    if bundle.image_attachment:
        print(f"image  : {len(bundle.image_attachment.data)} bytes, {bundle.image_attachment.media_type}")
    print(f"digest : {bundle.digest[:16]}…\n")

donor = pairing.donor_for(item.id)
print(f"(the C4 caption above belongs to {donor}: a mismatched scene on purpose)")
