#!/usr/bin/env python3
"""Run the full four-condition evaluation over the shipped corpus with the
scripted mock provider, then build the report with hypothesis verdicts.

The mock emulates grounding: with the right caption it usually picks the
intended sense, without context it flips a digest-seeded coin, so the
report reproduces the qualitative pattern (captions help, mismatched
captions fall back to chance) without any network access.
"""

import tempfile
from pathlib import Path

import vgi
from vgi.gateway import Gateway, MockTransport, ProviderConfig
from vgi.report import render_text, run_report
from vgi.runner import RunConfig, run_batch
from vgi.simulate import build_script

corpus_path = vgi.reference_corpus_path()
corpus = vgi.load_corpus(corpus_path)
conditions = list(vgi.Condition)
seed = 7

out = Path(tempfile.mkdtemp(prefix="vgi-demo-"))
script = build_script(corpus, conditions, adversarial_seed=seed)
gateway = Gateway(
    ProviderConfig(base_url="mock://", model_id="mock-model"),
    transport=MockTransport(script),
    cache_dir=out / "cache",
    sleep=lambda s: None,
)

config = RunConfig(
    corpus_path=corpus_path,
    output_dir=out,
    conditions=conditions,
    adversarial_seed=seed,
    provider=gateway.config,
)
result = run_batch(config, gateway=gateway)
print(f"run {result.manifest.run_id}: {len(result.trials)} trials -> {result.trials_path}\n")

report = run_report(result.trials_path, out_dir=out / "report")
print(render_text(report))
print(f"artifacts in {out}")
