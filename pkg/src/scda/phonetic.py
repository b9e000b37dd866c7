"""Homophone meme generation: replace a 2-3 character stretch of a
collocation with an English word whose pinyin approximation sounds alike.

Similarity is edit distance over tone-stripped pinyin strings,
normalized by the longer string; one global best replacement is applied
per text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from scda.collocations import CollocationSet
from scda.errors import ConfigError
from scda.types import (
    SKIP_BELOW_THRESHOLD,
    SKIP_NO_COLLOCATIONS,
    SKIP_TOO_SHORT,
    AugmentedSample,
    GeneratorId,
    Skip,
    TextSample,
)

DEFAULT_THRESHOLD = 0.5

_PINYIN_RE = re.compile(r"^[a-z]+$")
_WORD_RE = re.compile(r"^[A-Za-z]{3,7}$")


@dataclass(frozen=True)
class PronunciationEntry:
    """An English word with its phonetic symbols and pinyin rendering."""

    word: str
    symbols: str
    pinyin_approx: str
    syllables: int


@dataclass(frozen=True)
class HomophoneMatch:
    collocation: str
    start: int  # absolute char offsets of the replaced span
    end: int
    span_pinyin: str
    word: str
    similarity: float


def load_pinyin_table(path: str | Path) -> dict[str, str]:
    """char<TAB>pinyin rows, tones already stripped."""
    path = Path(path)
    table: dict[str, str] = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or len(parts[0]) != 1 or not _PINYIN_RE.match(parts[1]):
                raise ConfigError(f"{path.name} line {lineno}: expected char<TAB>lowercase pinyin")
            table[parts[0]] = parts[1]
    if not table:
        raise ConfigError(f"{path.name}: empty pinyin table")
    return table


def load_symbol_map(path: str | Path) -> dict[str, str]:
    """Phonetic symbol to pinyin fragment; empty fragment means the
    symbol (stress marks) contributes nothing."""
    path = Path(path)
    mapping: dict[str, str] = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 1:
                parts = [parts[0], ""]
            if len(parts) != 2 or not parts[0]:
                raise ConfigError(f"{path.name} line {lineno}: expected symbol<TAB>fragment")
            if parts[1] and not _PINYIN_RE.match(parts[1]):
                raise ConfigError(f"{path.name} line {lineno}: fragment must be lowercase ascii")
            mapping[parts[0]] = parts[1]
    if not mapping:
        raise ConfigError(f"{path.name}: empty symbol map")
    return mapping


def derive_pinyin_approx(symbols: str, symbol_map: dict[str, str]) -> str:
    """Concatenate pinyin fragments for a phonetic transcription,
    matching multi-character symbols greedily longest-first."""
    lengths = sorted({len(s) for s in symbol_map}, reverse=True)
    out: list[str] = []
    i = 0
    while i < len(symbols):
        for length in lengths:
            chunk = symbols[i : i + length]
            if chunk in symbol_map:
                out.append(symbol_map[chunk])
                i += length
                break
        else:
            raise ConfigError(f"symbol {symbols[i]!r} not covered by the symbol map")
    return "".join(out)


def load_pronunciation_dict(
    path: str | Path, symbol_map: dict[str, str] | None = None
) -> list[PronunciationEntry]:
    """word<TAB>symbols<TAB>pinyin_approx<TAB>syllables rows.

    With a symbol map supplied, each row's pinyin_approx is checked
    against the derivation from its symbols.
    """
    path = Path(path)
    entries: list[PronunciationEntry] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ConfigError(
                    f"{path.name} line {lineno}: expected word<TAB>symbols<TAB>pinyin<TAB>syllables"
                )
            word, symbols, approx, syl_raw = parts
            if not _WORD_RE.match(word):
                raise ConfigError(f"{path.name} line {lineno}: word must be 3-7 ascii letters")
            if not _PINYIN_RE.match(approx):
                raise ConfigError(f"{path.name} line {lineno}: pinyin must be lowercase ascii")
            try:
                syllables = int(syl_raw)
            except ValueError as exc:
                raise ConfigError(f"{path.name} line {lineno}: bad syllable count") from exc
            if not 2 <= syllables <= 3:
                raise ConfigError(f"{path.name} line {lineno}: syllable count must be 2 or 3")
            if word in seen:
                raise ConfigError(f"{path.name} line {lineno}: duplicate word {word!r}")
            if symbol_map is not None:
                derived = derive_pinyin_approx(symbols, symbol_map)
                if derived != approx:
                    raise ConfigError(
                        f"{path.name} line {lineno}: pinyin {approx!r} does not match "
                        f"its symbols (derived {derived!r})"
                    )
            seen.add(word)
            entries.append(PronunciationEntry(word, symbols, approx, syllables))
    if not entries:
        raise ConfigError(f"{path.name}: empty pronunciation dictionary")
    return entries


def to_pinyin(surface: str, table: dict[str, str]) -> tuple[str, list[str]]:
    """Per-character pinyin of `surface` plus the per-character pieces.

    Raises KeyError naming the first character missing from the table.
    """
    pieces: list[str] = []
    for ch in surface:
        if ch not in table:
            raise KeyError(f"no pinyin for character {ch!r}")
        pieces.append(table[ch])
    return "".join(pieces), pieces


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit costs, two-row DP."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        curr = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            curr[j] = min(prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost)
        prev = curr
    return prev[-1]


def pinyin_similarity(a: str, b: str) -> float:
    """1 - dist/max(len); 1.0 when both strings are empty."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


def enumerate_spans(length: int) -> list[tuple[int, int]]:
    """Contiguous 2- and 3-character spans of a surface; one character
    is one syllable, so these are the 2-3 syllable stretches."""
    spans = [(i, i + 2) for i in range(length - 1)]
    spans += [(i, i + 3) for i in range(length - 2)]
    return spans


def best_homophone(
    surface: str,
    table: dict[str, str],
    entries: list[PronunciationEntry],
    threshold: float = DEFAULT_THRESHOLD,
    offset: int = 0,
) -> HomophoneMatch | None:
    """Best dictionary word over all 2-3 char spans of one collocation.

    Ties break toward the longer span, then the lexicographically
    smaller word, then the earlier span. Returns None below the
    threshold or when the surface is too short to host a span.
    """
    if not entries:
        raise ConfigError("pronunciation dictionary is empty")
    if len(surface) < 2:
        return None
    _, pieces = to_pinyin(surface, table)
    best: HomophoneMatch | None = None
    best_key: tuple[float, int, str, int] | None = None
    for s, e in enumerate_spans(len(surface)):
        span_pinyin = "".join(pieces[s:e])
        for entry in entries:
            sim = pinyin_similarity(span_pinyin, entry.pinyin_approx)
            # sort ascending: higher sim, longer span, smaller word, earlier span
            key = (-sim, -(e - s), entry.word, s)
            if best_key is None or key < best_key:
                best_key = key
                best = HomophoneMatch(
                    collocation=surface,
                    start=offset + s,
                    end=offset + e,
                    span_pinyin=span_pinyin,
                    word=entry.word,
                    similarity=sim,
                )
    assert best is not None
    if best.similarity < threshold:
        return None
    return best


def hmeg_augment(
    sample: TextSample,
    colls: CollocationSet,
    table: dict[str, str],
    entries: list[PronunciationEntry],
    threshold: float = DEFAULT_THRESHOLD,
) -> AugmentedSample | Skip:
    """Apply the single best homophone replacement across all collocations."""
    if len(sample.text) < 2:
        return Skip(SKIP_TOO_SHORT)
    spans = colls.union()
    if not spans:
        return Skip(SKIP_NO_COLLOCATIONS)
    candidates: list[HomophoneMatch] = []
    any_span = False
    for span in spans:
        if len(span.surface) < 2:
            continue
        try:
            match = best_homophone(span.surface, table, entries, threshold=0.0, offset=span.start)
        except KeyError:
            continue  # pinyin gap: this collocation is out, not fatal
        if match is None:
            continue
        any_span = True
        candidates.append(match)
    if not any_span:
        return Skip(SKIP_TOO_SHORT)
    candidates.sort(key=lambda m: (-m.similarity, -(m.end - m.start), m.word, m.start))
    best = candidates[0]
    if best.similarity < threshold:
        return Skip(SKIP_BELOW_THRESHOLD)
    text = sample.text[: best.start] + best.word + sample.text[best.end :]
    meta = {
        "collocation": best.collocation,
        "span": f"{best.start}:{best.end}",
        "span_pinyin": best.span_pinyin,
        "word": best.word,
        "similarity": f"{best.similarity:.6f}",
    }
    return AugmentedSample(sample.id, GeneratorId.HMEG, text, sample.label, meta)
