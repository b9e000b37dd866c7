"""Glyph-level generators: emoji substitution cipher and radical
decomposition of collocation characters.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from scda.collocations import CollocationSet
from scda.embedding import EmbeddingProvider, cosine
from scda.errors import ConfigError
from scda.types import (
    SKIP_NO_COLLOCATIONS,
    AugmentedSample,
    GeneratorId,
    Skip,
    TextSample,
)

_CODEPOINT_RE = re.compile(r"^U\+([0-9A-Fa-f]{4,6})$")


@dataclass(frozen=True)
class EmojiEntry:
    codepoints: tuple[int, ...]
    meaning: str

    @property
    def glyph(self) -> str:
        return "".join(chr(c) for c in self.codepoints)

    @property
    def codepoint_labels(self) -> str:
        return " ".join(f"U+{c:04X}" for c in self.codepoints)


def load_emoji_dict(path: str | Path) -> list[EmojiEntry]:
    """codepoints<TAB>meaning rows; codepoints are space-joined U+XXXX
    labels (multi-codepoint sequences allowed). Glyphs must be unique."""
    path = Path(path)
    entries: list[EmojiEntry] = []
    seen: set[tuple[int, ...]] = set()
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[1]:
                raise ConfigError(f"{path.name} line {lineno}: expected codepoints<TAB>meaning")
            points: list[int] = []
            for label in parts[0].split(" "):
                m = _CODEPOINT_RE.match(label)
                if not m:
                    raise ConfigError(f"{path.name} line {lineno}: bad codepoint {label!r}")
                points.append(int(m.group(1), 16))
            key = tuple(points)
            if key in seen:
                raise ConfigError(f"{path.name} line {lineno}: duplicate emoji {parts[0]!r}")
            seen.add(key)
            entries.append(EmojiEntry(key, parts[1]))
    if not entries:
        raise ConfigError(f"{path.name}: empty emoji dictionary")
    return entries


def load_radical_table(path: str | Path) -> dict[str, str]:
    """char<TAB>components rows; components is the flattened left-to-right
    sequence of simpler characters the glyph splits into."""
    path = Path(path)
    table: dict[str, str] = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or len(parts[0]) != 1 or len(parts[1]) < 2:
                raise ConfigError(
                    f"{path.name} line {lineno}: expected char<TAB>components (2+ chars)"
                )
            table[parts[0]] = parts[1]
    if not table:
        raise ConfigError(f"{path.name}: empty radical table")
    return table


def meaning_units(surface: str) -> list[tuple[int, int]]:
    """Split a collocation surface into replacement units: each CJK (or
    other non-ASCII) character alone, maximal ASCII word runs whole.
    Offsets are relative to the surface."""
    units: list[tuple[int, int]] = []
    i = 0
    while i < len(surface):
        ch = surface[i]
        if ch.isascii() and ch.isalnum():
            j = i
            while j < len(surface) and surface[j].isascii() and surface[j].isalnum():
                j += 1
            units.append((i, j))
            i = j
        else:
            units.append((i, i + 1))
            i += 1
    return units


def match_emoji(
    unit: str,
    entries: list[EmojiEntry],
    provider: EmbeddingProvider,
) -> tuple[EmojiEntry, float]:
    """Argmax over dictionary meanings by embedding similarity; ties go
    to the earlier dictionary entry."""
    if not entries:
        raise ConfigError("emoji dictionary is empty")
    vectors = provider.embed_batch([unit] + [e.meaning for e in entries])
    best: tuple[EmojiEntry, float] | None = None
    for entry, vec in zip(entries, vectors[1:]):
        sim = cosine(vectors[0], vec)
        if best is None or sim > best[1]:
            best = (entry, sim)
    assert best is not None
    return best


def eeeg_augment(
    sample: TextSample,
    colls: CollocationSet,
    entries: list[EmojiEntry],
    provider: EmbeddingProvider,
) -> AugmentedSample | Skip:
    """Replace every unit of every collocation with its closest-meaning
    emoji. Text outside collocations is untouched."""
    if not entries:
        raise ConfigError("emoji dictionary is empty")
    spans = colls.union()
    if not spans:
        return Skip(SKIP_NO_COLLOCATIONS)
    positions: list[tuple[int, int]] = []
    taken: set[tuple[int, int]] = set()
    for span in spans:
        for u0, u1 in meaning_units(span.surface):
            pos = (span.start + u0, span.start + u1)
            if pos not in taken:
                taken.add(pos)
                positions.append(pos)
    positions.sort()
    kept: list[tuple[int, int]] = []
    cursor = 0
    for p0, p1 in positions:
        if p0 < cursor:
            continue  # overlapping collocations: first mapping wins
        kept.append((p0, p1))
        cursor = p1
    units = [sample.text[p0:p1] for p0, p1 in kept]
    # one batch per sample: unit vectors first, dictionary meanings after
    vectors = provider.embed_batch(units + [e.meaning for e in entries])
    meaning_vecs = vectors[len(units) :]
    replacements: list[tuple[str, str, float]] = []
    pieces: list[str] = []
    cursor = 0
    for (p0, p1), unit, unit_vec in zip(kept, units, vectors):
        best: tuple[EmojiEntry, float] | None = None
        for entry, vec in zip(entries, meaning_vecs):
            sim = cosine(unit_vec, vec)
            if best is None or sim > best[1]:
                best = (entry, sim)
        assert best is not None
        entry, sim = best
        pieces.append(sample.text[cursor:p0])
        pieces.append(entry.glyph)
        replacements.append((unit, entry.codepoint_labels, sim))
        cursor = p1
    pieces.append(sample.text[cursor:])
    meta = {
        "replacements": json.dumps(
            [[u, cp, f"{sim:.6f}"] for u, cp, sim in replacements],
            ensure_ascii=False,
        )
    }
    return AugmentedSample(sample.id, GeneratorId.EEEG, "".join(pieces), sample.label, meta)


def deg_augment(
    sample: TextSample,
    colls: CollocationSet,
    table: dict[str, str],
) -> AugmentedSample | Skip:
    """Spell out collocation characters as their component sequences.

    Characters without a table entry pass through; if nothing anywhere
    expands, the sample is skipped rather than emitted unchanged.
    """
    spans = colls.union()
    if not spans:
        return Skip(SKIP_NO_COLLOCATIONS)
    expansions: list[tuple[str, str]] = []
    pieces: list[str] = []
    cursor = 0
    for span in sorted(spans, key=lambda s: s.start):
        if span.start < cursor:
            continue
        pieces.append(sample.text[cursor:span.start])
        for ch in span.surface:
            if ch in table:
                pieces.append(table[ch])
                expansions.append((ch, table[ch]))
            else:
                pieces.append(ch)
        cursor = span.end
    pieces.append(sample.text[cursor:])
    if not expansions:
        return Skip(SKIP_NO_COLLOCATIONS)
    meta = {
        "expansions": json.dumps([[c, comp] for c, comp in expansions], ensure_ascii=False)
    }
    return AugmentedSample(sample.id, GeneratorId.DEG, "".join(pieces), sample.label, meta)
