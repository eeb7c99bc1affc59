"""Diagnostic ambiguity corpus: loading, validation, statistics, and
adversarial image reassignment.

A corpus is a JSON Lines manifest (one item per line, UTF-8) plus the image
files it references. Every item carries an utterance whose correct
translation hinges on exactly one ambiguity trigger, two or more candidate
senses with target-language marker words, and an image supporting one
intended sense.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class TriggerCategory(str, Enum):
    """The three ambiguity triggers an item can instantiate."""

    LEXICAL = "lexical"
    GENDER = "gender"
    SYNTACTIC = "syntactic"


# Token length range observed across the shipped utterances; items outside
# it must be flagged `relaxed_length`.
MIN_TOKENS = 5
MAX_TOKENS = 13


class CorpusError(Exception):
    """Malformed manifest: unreadable, unparsable, or empty."""


class CorpusValidationError(CorpusError):
    """One or more items violate corpus invariants.

    Collects every violation found rather than stopping at the first, so a
    single validation run reports the full repair list.
    """

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__(
            f"{len(violations)} corpus violation(s):\n"
            + "\n".join(f"  - {v}" for v in violations)
        )


@dataclass(frozen=True)
class SenseSpec:
    """One candidate reading of an ambiguous utterance.

    ``markers`` are target-language word forms whose presence in a
    translation signals this sense; ``gold_reference`` is a full reference
    translation realizing it.
    """

    label: str
    description: str
    markers: tuple[str, ...]
    gold_reference: str

    @classmethod
    def from_dict(cls, d: dict) -> "SenseSpec":
        return cls(
            label=d["label"],
            description=d.get("description", ""),
            markers=tuple(d["markers"]),
            gold_reference=d["gold_reference"],
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "description": self.description,
            "markers": list(self.markers),
            "gold_reference": self.gold_reference,
        }


@dataclass
class CorpusItem:
    """One ambiguity trigger: source utterance, senses, and paired image."""

    id: str
    trigger: TriggerCategory
    source_lang: str
    target_lang: str
    source_text: str
    senses: tuple[SenseSpec, ...]
    intended_sense: str
    image_path: str
    caption_gold: str | None = None
    notes: str | None = None
    relaxed_length: bool = False
    # Absolute image location, resolved against the manifest directory at
    # load time; not serialized.
    image_file: Path | None = field(default=None, repr=False, compare=False)

    def sense(self, label: str) -> SenseSpec:
        for s in self.senses:
            if s.label == label:
                return s
        raise KeyError(f"item {self.id!r} has no sense {label!r}")

    @property
    def intended(self) -> SenseSpec:
        return self.sense(self.intended_sense)

    @property
    def competing(self) -> tuple[SenseSpec, ...]:
        return tuple(s for s in self.senses if s.label != self.intended_sense)

    @classmethod
    def from_dict(cls, d: dict) -> "CorpusItem":
        return cls(
            id=d["id"],
            trigger=TriggerCategory(d["trigger"]),
            source_lang=d["source_lang"],
            target_lang=d["target_lang"],
            source_text=d["source_text"],
            senses=tuple(SenseSpec.from_dict(s) for s in d["senses"]),
            intended_sense=d["intended_sense"],
            image_path=d["image_path"],
            caption_gold=d.get("caption_gold"),
            notes=d.get("notes"),
            relaxed_length=bool(d.get("relaxed_length", False)),
        )

    def to_dict(self) -> dict:
        d: dict = {
            "id": self.id,
            "trigger": self.trigger.value,
            "source_lang": self.source_lang,
            "target_lang": self.target_lang,
            "source_text": self.source_text,
            "senses": [s.to_dict() for s in self.senses],
            "intended_sense": self.intended_sense,
            "image_path": self.image_path,
        }
        if self.caption_gold is not None:
            d["caption_gold"] = self.caption_gold
        if self.notes is not None:
            d["notes"] = self.notes
        if self.relaxed_length:
            d["relaxed_length"] = True
        return d


@dataclass
class Corpus:
    items: list[CorpusItem]
    manifest_path: Path | None = None

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def by_id(self, item_id: str) -> CorpusItem:
        for it in self.items:
            if it.id == item_id:
                return it
        raise KeyError(f"no corpus item {item_id!r}")

    def by_trigger(self, trigger: TriggerCategory) -> list[CorpusItem]:
        return [it for it in self.items if it.trigger == trigger]


@dataclass
class AdversarialPairing:
    """Image reassignment for the adversarial condition.

    ``entries`` maps every item id to the id of the donor item whose image
    (and caption) it borrows. The map is a derangement: no item keeps its
    own image.
    """

    entries: dict[str, str]
    seed: int

    def donor_for(self, item_id: str) -> str:
        return self.entries[item_id]

    def to_jsonl(self) -> str:
        lines = [
            json.dumps(
                {"item_id": k, "donor_item_id": v, "seed": self.seed},
                ensure_ascii=False,
                sort_keys=True,
            )
            for k, v in self.entries.items()
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "AdversarialPairing":
        entries: dict[str, str] = {}
        seed = 0
        for line in text.splitlines():
            if not line.strip():
                continue
            d = json.loads(line)
            entries[d["item_id"]] = d["donor_item_id"]
            seed = d["seed"]
        return cls(entries=entries, seed=seed)


@dataclass(frozen=True)
class GroupStats:
    """Token-length statistics for one group of utterances."""

    count: int
    mean: float
    sd: float
    degenerate: bool = False  # true when n == 1 and the sample SD is undefined


@dataclass(frozen=True)
class CorpusStats:
    per_trigger: dict[TriggerCategory, GroupStats]
    overall: GroupStats
    min_tokens: int
    max_tokens: int

    def to_dict(self) -> dict:
        return {
            "per_trigger": {
                t.value: {
                    "count": g.count,
                    "mean": g.mean,
                    "sd": g.sd,
                    "degenerate": g.degenerate,
                }
                for t, g in self.per_trigger.items()
            },
            "overall": {
                "count": self.overall.count,
                "mean": self.overall.mean,
                "sd": self.overall.sd,
                "degenerate": self.overall.degenerate,
            },
            "min_tokens": self.min_tokens,
            "max_tokens": self.max_tokens,
        }


def token_count(utterance: str) -> int:
    """Number of maximal whitespace-delimited segments.

    Punctuation stays attached to its word; an empty or all-space string
    counts zero tokens.
    """
    return len(utterance.split())


def validate_item(item: CorpusItem, check_image: bool = True) -> list[str]:
    """Return descriptions of every invariant this item violates.

    Empty list means the item is valid. ``check_image`` can be disabled for
    items constructed in memory without backing files.
    """
    problems: list[str] = []
    pid = item.id or "<missing id>"

    if not item.id:
        problems.append("item with empty id")
    if len(item.senses) < 2:
        problems.append(f"item {pid}: needs at least 2 senses, has {len(item.senses)}")

    seen_markers: dict[str, str] = {}
    for s in item.senses:
        if not s.markers:
            problems.append(f"item {pid}: sense {s.label!r} has no markers")
        for m in s.markers:
            if not m.strip():
                problems.append(f"item {pid}: sense {s.label!r} has a blank marker")
                continue
            key = m.strip().casefold()
            if key in seen_markers and seen_markers[key] != s.label:
                problems.append(
                    f"item {pid}: marker {m!r} belongs to senses "
                    f"{seen_markers[key]!r} and {s.label!r}"
                )
            seen_markers.setdefault(key, s.label)

    matching = [s for s in item.senses if s.label == item.intended_sense]
    if len(matching) != 1:
        problems.append(
            f"item {pid}: intended_sense {item.intended_sense!r} matches "
            f"{len(matching)} sense labels (need exactly 1)"
        )

    n_tokens = token_count(item.source_text)
    if not item.relaxed_length and not (MIN_TOKENS <= n_tokens <= MAX_TOKENS):
        problems.append(
            f"item {pid}: source_text has {n_tokens} tokens, outside "
            f"[{MIN_TOKENS}, {MAX_TOKENS}] and not flagged relaxed_length"
        )

    if check_image:
        if item.image_file is None:
            problems.append(f"item {pid}: image path not resolved")
        elif not item.image_file.is_file():
            problems.append(f"item {pid}: image file missing: {item.image_file}")
        elif item.image_file.stat().st_size == 0:
            problems.append(f"item {pid}: image file empty: {item.image_file}")

    return problems


def load_corpus(manifest_path: str | Path, check_images: bool = True) -> Corpus:
    """Parse and validate a JSONL corpus manifest.

    Raises ``CorpusError`` on unreadable/empty input or a JSON parse error
    (with the line number), and ``CorpusValidationError`` listing every
    invariant violation across all items.
    """
    path = Path(manifest_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CorpusError(f"cannot read corpus manifest {path}: {e}") from e

    items: list[CorpusItem] = []
    violations: list[str] = []
    seen_ids: set[str] = set()
    root = path.parent

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusError(f"{path}:{lineno}: invalid JSON: {e.msg}") from e
        try:
            item = CorpusItem.from_dict(record)
        except (KeyError, ValueError, TypeError) as e:
            violations.append(f"{path}:{lineno}: malformed item: {e}")
            continue
        if item.id in seen_ids:
            violations.append(f"{path}:{lineno}: duplicate item id {item.id!r}")
        seen_ids.add(item.id)
        item.image_file = (root / item.image_path).resolve()
        items.append(item)

    if not items and not violations:
        raise CorpusError(f"empty corpus: {path}")

    for item in items:
        violations.extend(validate_item(item, check_image=check_images))

    if violations:
        raise CorpusValidationError(violations)
    return Corpus(items=items, manifest_path=path)


def serialize_corpus(corpus: Corpus) -> str:
    """Render a corpus back to its JSONL manifest form."""
    return "\n".join(json.dumps(it.to_dict(), ensure_ascii=False) for it in corpus.items) + "\n"


def save_corpus(corpus: Corpus, manifest_path: str | Path) -> Path:
    path = Path(manifest_path)
    path.write_text(serialize_corpus(corpus), encoding="utf-8")
    return path


def _group_stats(counts: list[int]) -> GroupStats:
    n = len(counts)
    mean = sum(counts) / n
    if n == 1:
        return GroupStats(count=1, mean=mean, sd=0.0, degenerate=True)
    var = sum((c - mean) ** 2 for c in counts) / (n - 1)  # sample SD, divisor n-1
    return GroupStats(count=n, mean=mean, sd=math.sqrt(var))


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Per-trigger and overall token-length statistics.

    SD is the sample standard deviation (divisor n-1); a single-utterance
    group reports SD 0 with its ``degenerate`` flag set.
    """
    if not corpus.items:
        raise CorpusError("empty corpus: no statistics to compute")

    all_counts = [token_count(it.source_text) for it in corpus.items]
    per_trigger: dict[TriggerCategory, GroupStats] = {}
    for trig in TriggerCategory:
        counts = [token_count(it.source_text) for it in corpus.by_trigger(trig)]
        if counts:
            per_trigger[trig] = _group_stats(counts)

    return CorpusStats(
        per_trigger=per_trigger,
        overall=_group_stats(all_counts),
        min_tokens=min(all_counts),
        max_tokens=max(all_counts),
    )


def generate_adversarial(corpus: Corpus, seed: int) -> AdversarialPairing:
    """Seeded pseudorandom derangement assigning each item a donor image.

    Donors from a different trigger category are preferred (a mismatched
    caption should describe an unrelated scene); when no full cross-trigger
    assignment exists, the generator falls back to a plain derangement.
    Deterministic for a fixed (corpus, seed).
    """
    ids = [it.id for it in corpus.items]
    n = len(ids)
    if n < 2:
        raise CorpusError("adversarial pairing needs at least 2 items")

    rng = random.Random(seed)
    groups: dict[TriggerCategory, list[str]] = {}
    for it in corpus.items:
        groups.setdefault(it.trigger, []).append(it.id)
    max_group = max(len(g) for g in groups.values())

    if len(groups) > 1 and max_group <= n // 2:
        # Cross-trigger assignment: shuffle within and across groups, then
        # rotate by r in [max_group, n - max_group]. Every block is shorter
        # than the rotation on both sides, so no id can land inside its own
        # trigger block (and in particular not on itself).
        group_lists = [groups[t][:] for t in sorted(groups, key=lambda t: t.value)]
        for g in group_lists:
            rng.shuffle(g)
        rng.shuffle(group_lists)
        order = [i for g in group_lists for i in g]
        r = rng.randint(max_group, n - max_group)
        entries = {order[i]: order[(i + r) % n] for i in range(n)}
    else:
        # Plain derangement by rejection; two elements always swap.
        donors = ids[:]
        while True:
            rng.shuffle(donors)
            if all(a != b for a, b in zip(ids, donors)):
                break
        entries = dict(zip(ids, donors))

    # Present entries in manifest order for byte-stable serialization.
    ordered = {i: entries[i] for i in ids}
    return AdversarialPairing(entries=ordered, seed=seed)
