from __future__ import annotations

import io
import json
from pathlib import Path

import pytest
from PIL import Image

from vgi.corpus import Corpus, CorpusItem, SenseSpec, TriggerCategory, load_corpus
from vgi import reference_corpus_path


def make_png(path: Path, size=(40, 30), color=(120, 140, 160)) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.new("RGB", size, color).save(path, format="PNG")
    return path


def png_bytes(size=(40, 30), color=(120, 140, 160)) -> bytes:
    buf = io.BytesIO()
    Image.new("RGB", size, color).save(buf, format="PNG")
    return buf.getvalue()


def make_item(
    item_id: str = "item-1",
    trigger: TriggerCategory = TriggerCategory.LEXICAL,
    source_text: str = "Passami la chiave del garage adesso",
    senses: tuple | None = None,
    intended: str = "wrench",
    image_file: Path | None = None,
    **kwargs,
) -> CorpusItem:
    if senses is None:
        senses = (
            SenseSpec("key", "door key", ("key", "keys"), "Give me the key."),
            SenseSpec("wrench", "tool", ("wrench", "spanner"), "Give me the wrench."),
        )
    return CorpusItem(
        id=item_id,
        trigger=trigger,
        source_lang="it",
        target_lang="en",
        source_text=source_text,
        senses=senses,
        intended_sense=intended,
        image_path=f"images/{item_id}.png",
        image_file=image_file,
        **kwargs,
    )


def make_corpus(n: int, triggers=None, tmp_path: Path | None = None) -> Corpus:
    """In-memory corpus of n minimal items (no backing files)."""
    triggers = triggers or [TriggerCategory.LEXICAL, TriggerCategory.GENDER, TriggerCategory.SYNTACTIC]
    items = [
        make_item(item_id=f"item-{i:03d}", trigger=triggers[i % len(triggers)])
        for i in range(n)
    ]
    return Corpus(items=items)


def write_manifest(tmp_path: Path, records: list[dict], with_images: bool = True) -> Path:
    manifest = tmp_path / "corpus.jsonl"
    lines = []
    for rec in records:
        if with_images:
            make_png(tmp_path / rec["image_path"])
        lines.append(json.dumps(rec, ensure_ascii=False))
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


def item_record(item_id="it-1", trigger="lexical", text="Passami la chiave del garage adesso", **overrides) -> dict:
    rec = {
        "id": item_id,
        "trigger": trigger,
        "source_lang": "it",
        "target_lang": "en",
        "source_text": text,
        "senses": [
            {"label": "key", "description": "door key", "markers": ["key", "keys"], "gold_reference": "Give me the key."},
            {"label": "wrench", "description": "tool", "markers": ["wrench", "spanner"], "gold_reference": "Give me the wrench."},
        ],
        "intended_sense": "wrench",
        "image_path": f"images/{item_id}.png",
        "caption_gold": "A mechanic's workshop with tools on a bench.",
    }
    rec.update(overrides)
    return rec


@pytest.fixture(scope="session")
def reference_corpus():
    return load_corpus(reference_corpus_path())


@pytest.fixture(scope="session")
def e2e_corpus_dir(tmp_path_factory) -> Path:
    """A 12-item fixture corpus (4 per trigger) carved out of the shipped
    reference corpus, with its images copied alongside."""
    root = tmp_path_factory.mktemp("e2e-corpus")
    src_root = reference_corpus_path().parent
    by_trigger: dict[str, list[dict]] = {"lexical": [], "gender": [], "syntactic": []}
    for line in reference_corpus_path().read_text(encoding="utf-8").splitlines():
        rec = json.loads(line)
        bucket = by_trigger[rec["trigger"]]
        if len(bucket) < 4 and not rec.get("relaxed_length"):
            bucket.append(rec)
    (root / "images").mkdir()
    lines = []
    for bucket in by_trigger.values():
        for rec in bucket:
            img = src_root / rec["image_path"]
            (root / rec["image_path"]).write_bytes(img.read_bytes())
            lines.append(json.dumps(rec, ensure_ascii=False))
    (root / "corpus.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return root
