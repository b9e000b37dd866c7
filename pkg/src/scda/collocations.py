"""Collocation mining: candidate extraction, embedding rank, idiom merge.

Ranked word groups plus idiom tokens form the working set every
generator draws its replacement targets from.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from scda.embedding import EmbeddingProvider, cosine
from scda.segmentation import PosTaggedToken, Segmenter, tag_tokens

logger = logging.getLogger(__name__)

DEFAULT_TOP_K = 5

# A candidate is a maximal token run of adjectives followed by nouns
# with at least two tokens, or a lone noun of at least two characters.
MIN_LONE_NOUN_CHARS = 2


@dataclass(frozen=True)
class Candidate:
    surface: str
    start: int
    end: int


@dataclass(frozen=True)
class RankedCollocation:
    surface: str
    start: int
    end: int
    score: float


@dataclass(frozen=True)
class IdiomSpan:
    surface: str
    start: int
    end: int


@dataclass(frozen=True)
class CollocationSpan:
    """One entry of the merged working set."""

    surface: str
    start: int
    end: int
    is_idiom: bool


@dataclass
class CollocationSet:
    ranked: list[RankedCollocation] = field(default_factory=list)
    idioms: list[IdiomSpan] = field(default_factory=list)

    def union(self) -> list[CollocationSpan]:
        """Merged working set, span-deduplicated; an idiom beats any
        ranked span it overlaps. Sorted by position."""
        entries = [CollocationSpan(i.surface, i.start, i.end, True) for i in self.idioms]
        for r in self.ranked:
            clash = any(r.start < i.end and i.start < r.end for i in self.idioms)
            if not clash:
                entries.append(CollocationSpan(r.surface, r.start, r.end, False))
        entries.sort(key=lambda e: (e.start, e.end))
        return entries


def extract_candidates(tokens: list[PosTaggedToken]) -> list[Candidate]:
    """Scan token runs for the adjective*-noun+ pattern."""
    out: list[Candidate] = []
    seen: set[tuple[int, int]] = set()
    i = 0
    n = len(tokens)
    while i < n:
        j = i
        while j < n and tokens[j].pos == "adjective":
            j += 1
        k = j
        while k < n and tokens[k].pos == "noun":
            k += 1
        if k == j:  # no noun: pattern requires at least one
            i += 1
            continue
        run = tokens[i:k]
        surface = "".join(t.surface for t in run)
        span = (run[0].start, run[-1].end)
        if len(run) >= 2 or (len(run) == 1 and len(surface) >= MIN_LONE_NOUN_CHARS):
            if span not in seen:
                seen.add(span)
                out.append(Candidate(surface, *span))
        i = k
    return out


def extract_idioms(tokens: list[PosTaggedToken]) -> list[IdiomSpan]:
    return [IdiomSpan(t.surface, t.start, t.end) for t in tokens if t.pos == "idiom"]


def rank_collocations(
    candidates: list[Candidate],
    text: str,
    provider: EmbeddingProvider,
    k: int = DEFAULT_TOP_K,
) -> list[RankedCollocation]:
    """Score candidates by embedding similarity to the whole text and
    keep the top `k`, ties resolved by earlier span then surface."""
    if k < 1:
        raise ValueError(f"top-k must be >= 1, got {k}")
    if not candidates:
        return []
    vectors = provider.embed_batch([text] + [c.surface for c in candidates])
    text_vec = vectors[0]
    scored: list[RankedCollocation] = []
    for cand, vec in zip(candidates, vectors[1:]):
        try:
            score = cosine(vec, text_vec)
        except ValueError:
            logger.warning("dropping candidate %r: unusable embedding", cand.surface)
            continue
        scored.append(RankedCollocation(cand.surface, cand.start, cand.end, score))
    scored.sort(key=lambda r: (-r.score, r.start, r.surface))
    return scored[:k]


def collocations(
    text: str,
    segmenter: Segmenter,
    provider: EmbeddingProvider,
    k: int = DEFAULT_TOP_K,
) -> CollocationSet:
    """Full pass: tag, extract, rank, and merge idioms."""
    tokens = tag_tokens(text, segmenter)
    ranked = rank_collocations(extract_candidates(tokens), text, provider, k)
    return CollocationSet(ranked=ranked, idioms=extract_idioms(tokens))
