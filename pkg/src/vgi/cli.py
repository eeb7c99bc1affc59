"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 configuration/usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import (
    CorpusError,
    CorpusValidationError,
    corpus_stats,
    generate_adversarial,
    load_corpus,
)
from .gateway import ENV_API_KEY, Gateway, MockTransport, ProviderConfig, mock_provider
from .prompting import CaptionStore, Condition
from .report import render_text, run_report
from .runner import ConfigError, RunConfig, run_batch

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vgi", description="vision-grounded interpreting toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("validate", help="validate a corpus manifest")
    p.add_argument("--corpus", required=True)
    add_common(p)

    p = sub.add_parser("stats", help="token-length statistics per trigger")
    p.add_argument("--corpus", required=True)
    add_common(p)

    p = sub.add_parser("adversarial", help="generate the adversarial image pairing")
    p.add_argument("--corpus", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="write JSONL here instead of stdout")
    add_common(p)

    p = sub.add_parser("caption", help="caption every corpus image into a store")
    p.add_argument("--corpus", required=True)
    p.add_argument("--style", choices=["generic", "attribute"], default="generic")
    p.add_argument("--out", required=True)
    p.add_argument("--provider", choices=["mock", "http"], default="mock")

    p = sub.add_parser("run", help="run the batch evaluation")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--conditions", default="C1,C2,C3,C4", help="comma-separated subset of C1..C4")
    p.add_argument("--seed", type=int, help="adversarial seed (required with C4)")
    p.add_argument("--style", choices=["generic", "attribute"], default="generic")
    p.add_argument("--provider", choices=["mock", "http"], default="http")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--max-inflight", type=int, default=4)
    p.add_argument("--overrides", help="manual judgement override JSONL")

    p = sub.add_parser("report", help="summarize a trials file")
    p.add_argument("--trials", required=True)
    p.add_argument("--out", help="directory for report.json / report.txt")
    add_common(p)

    p = sub.add_parser("serve", help="start the live interpreting service")
    p.add_argument("--port", type=int, default=8791)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--provider", choices=["mock", "http"], default="mock")
    p.add_argument("--console-dir", help="directory with built console assets")

    return parser


def _http_gateway(args_provider: str, model_overrides: dict | None = None) -> Gateway:
    if args_provider == "mock":
        return mock_provider()
    if not os.environ.get(ENV_API_KEY):
        raise ConfigError(
            f"provider 'http' needs the {ENV_API_KEY} environment variable (API key)"
        )
    config = ProviderConfig.from_env(**(model_overrides or {}))
    return Gateway(config)


def _cmd_validate(args) -> int:
    try:
        corpus = load_corpus(args.corpus)
    except CorpusValidationError as e:
        if args.format == "json":
            print(json.dumps({"valid": False, "violations": e.violations}, indent=2))
        else:
            print(e, file=sys.stderr)
        return EXIT_VALIDATION
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.format == "json":
        print(json.dumps({"valid": True, "items": len(corpus)}, indent=2))
    else:
        print(f"ok: {len(corpus)} items")
    return EXIT_OK


def _cmd_stats(args) -> int:
    try:
        corpus = load_corpus(args.corpus)
        stats = corpus_stats(corpus)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.format == "json":
        print(json.dumps(stats.to_dict(), indent=2, sort_keys=True))
        return EXIT_OK
    print(f"{'trigger':<12}{'items':>6}{'mean':>8}{'sd':>8}")
    for trig, g in stats.per_trigger.items():
        print(f"{trig.value:<12}{g.count:>6}{g.mean:>8.2f}{g.sd:>8.2f}")
    o = stats.overall
    print(f"{'total':<12}{o.count:>6}{o.mean:>8.2f}{o.sd:>8.2f}")
    print(f"token range: [{stats.min_tokens}, {stats.max_tokens}]")
    return EXIT_OK


def _cmd_adversarial(args) -> int:
    try:
        corpus = load_corpus(args.corpus)
        pairing = generate_adversarial(corpus, args.seed)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    text = pairing.to_jsonl()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(pairing.entries)} pairings to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_caption(args) -> int:
    from .runner import _ensure_captions

    try:
        corpus = load_corpus(args.corpus)
        gateway = _http_gateway(args.provider)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION

    store = CaptionStore()
    out = Path(args.out)
    if out.is_file():
        store = CaptionStore.load(out)
    _ensure_captions(corpus, store, gateway, args.style)
    store.save(out)
    print(f"captioned {len(store)} items into {out}")
    return EXIT_OK


def _parse_conditions(text: str) -> list[Condition]:
    conds = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            conds.append(Condition(token))
        except ValueError:
            raise ConfigError(f"unknown condition {token!r} (choose from C1, C2, C3, C4)")
    return conds

def _cmd_run(args) -> int:
    conditions = _parse_conditions(args.conditions)
    config = RunConfig(
        corpus_path=Path(args.corpus),
        output_dir=Path(args.out),
        conditions=conditions,
        adversarial_seed=args.seed,
        caption_style=args.style,
        max_inflight=args.max_inflight,
        resume=args.resume,
        overrides_path=Path(args.overrides) if args.overrides else None,
    )
    if args.provider == "mock":
        from .simulate import build_script

        corpus = load_corpus(args.corpus)
        script = build_script(corpus, conditions, adversarial_seed=args.seed)
        gateway = Gateway(
            ProviderConfig(base_url="mock://", model_id="mock-model"),
            transport=MockTransport(script),
            cache_dir=config.output_dir / "cache",
            sleep=lambda s: None,
        )
        config.provider = gateway.config
    else:
        gateway = _http_gateway("http")
        config.provider = gateway.config

    result = run_batch(config, gateway=gateway)
    print(
        f"run {result.manifest.run_id}: {len(result.trials)} trials, "
        f"{len(result.errors)} errors -> {result.trials_path}"
    )
    for err in result.errors[:10]:
        print(
            f"  error {err['item_id']}/{err['condition']}: {err['kind']}: {err['detail']}",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_report(args) -> int:
    report = run_report(args.trials, out_dir=args.out)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve

    if args.provider == "mock":
        from .simulate import live_demo_script

        gateway = mock_provider(live_demo_script())
    else:
        gateway = _http_gateway("http")
    serve(gateway, host=args.host, port=args.port, console_dir=args.console_dir)
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "stats": _cmd_stats,
    "adversarial": _cmd_adversarial,
    "caption": _cmd_caption,
    "run": _cmd_run,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_CONFIG
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CorpusValidationError as e:
        print(e, file=sys.stderr)
        return EXIT_VALIDATION
    except (CorpusError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
