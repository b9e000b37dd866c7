"""Word-order generators: spoonerism-style clause swaps and inversion
rhetoric over segment runs, plus the permutation records that make the
inversion reversible.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from scda.collocations import CollocationSet
from scda.segmentation import Segmenter, tag_tokens
from scda.types import (
    SKIP_NO_COLLOCATIONS,
    SKIP_TOO_SHORT,
    AugmentedSample,
    GeneratorId,
    Skip,
    TextSample,
)

CLAUSE_DELIMITERS = ("，", ",")

# English articles travel with a displaced noun phrase; see _swap_spans.
_ARTICLES = ("the", "a", "an")


@dataclass(frozen=True)
class Clause:
    text: str
    start: int
    end: int


def split_clauses(text: str) -> list[Clause]:
    """Split on comma delimiters, keeping char spans so the original
    text is recoverable. Empty clauses are preserved."""
    clauses: list[Clause] = []
    start = 0
    for i, ch in enumerate(text):
        if ch in CLAUSE_DELIMITERS:
            clauses.append(Clause(text[start:i], start, i))
            start = i + 1
    clauses.append(Clause(text[start:], start, len(text)))
    return clauses


@dataclass(frozen=True)
class DependencyParse:
    """Subject and object char spans, relative to the parsed clause."""

    subject: tuple[int, int] | None = None
    object: tuple[int, int] | None = None


@runtime_checkable
class DependencyProvider(Protocol):
    name: str

    def parse(self, clause: str) -> DependencyParse: ...


class HeuristicParser:
    """Shallow fallback parse: the first noun run before the first verb
    is the subject, the first noun run after it is the object."""

    name = "builtin-heuristic"

    def __init__(self, segmenter: Segmenter):
        self._segmenter = segmenter

    def parse(self, clause: str) -> DependencyParse:
        if not clause.strip():
            return DependencyParse()
        tokens = tag_tokens(clause, self._segmenter)
        verb_at = next((i for i, t in enumerate(tokens) if t.pos == "verb"), None)
        if verb_at is None:
            return DependencyParse()
        subject = self._first_noun_run(tokens, 0, verb_at)
        obj = self._first_noun_run(tokens, verb_at + 1, len(tokens))
        return DependencyParse(subject=subject, object=obj)

    @staticmethod
    def _first_noun_run(tokens, lo: int, hi: int) -> tuple[int, int] | None:
        i = lo
        while i < hi:
            if tokens[i].pos == "noun":
                j = i
                while j < hi and tokens[j].pos == "noun":
                    j += 1
                return (tokens[i].start, tokens[j - 1].end)
            i += 1
        return None


def _preceding_article(text: str, start: int) -> str | None:
    i = start
    while i > 0 and text[i - 1] == " ":
        i -= 1
    j = i
    while j > 0 and text[j - 1].isalpha():
        j -= 1
    word = text[j:i]
    return word if word.lower() in _ARTICLES else None


def _swap_spans(text: str, a: tuple[int, int], b: tuple[int, int]) -> str:
    """Swap two non-overlapping spans of `text`.

    When exactly one side sits behind an article, the displaced phrase
    keeps a lowercase copy of it so the clause stays well formed; the
    article in front of the slot stays where it is.
    """
    (a0, a1), (b0, b1) = sorted([a, b])
    if a1 > b0:
        raise ValueError("cannot swap overlapping spans")
    first, second = text[a0:a1], text[b0:b1]
    art_first = _preceding_article(text, a0)
    art_second = _preceding_article(text, b0)
    if art_first and not art_second:
        first = art_first.lower() + " " + first
    elif art_second and not art_first:
        second = art_second.lower() + " " + second
    return text[:a0] + second + text[a1:b0] + first + text[b1:]


def speg_augment(
    sample: TextSample,
    parser: DependencyProvider,
    colls: CollocationSet | None,
    rng: random.Random,
) -> AugmentedSample | Skip:
    """Swap subject and object per clause, falling back to a random
    collocation pair when the parse is incomplete. Skips when no clause
    changes."""
    spans = colls.union() if colls is not None else []
    out: list[str] = []
    meta: dict[str, str] = {}
    changed = False
    for idx, clause in enumerate(split_clauses(sample.text)):
        new_clause = clause.text
        swap: tuple[tuple[int, int], tuple[int, int]] | None = None
        mode = ""
        try:
            parse = parser.parse(clause.text)
        except Exception:
            parse = DependencyParse()  # degrade to the collocation path
        if parse.subject and parse.object and not _overlaps(parse.subject, parse.object):
            swap = (parse.subject, parse.object)
            mode = "subject_object"
        else:
            inside = [
                (s.start - clause.start, s.end - clause.start)
                for s in spans
                if s.start >= clause.start and s.end <= clause.end
            ]
            if len(inside) >= 2:
                pairs = [(i, j) for i in range(len(inside)) for j in range(i + 1, len(inside))]
                pick = pairs[rng.randrange(len(pairs))]
                swap = (inside[pick[0]], inside[pick[1]])
                mode = "collocation_pair"
        if swap is not None:
            new_clause = _swap_spans(clause.text, *swap)
            if new_clause != clause.text:
                changed = True
                (s0, s1), (o0, o1) = sorted(swap)
                meta[f"clause{idx}"] = f"{mode}:{s0}-{s1}<->{o0}-{o1}"
        out.append(new_clause)
        if clause.end < len(sample.text):
            out.append(sample.text[clause.end])
    if not changed:
        return Skip(SKIP_NO_COLLOCATIONS)
    return AugmentedSample(sample.id, GeneratorId.SPEG, "".join(out), sample.label, meta)


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def segment(text: str, segmenter: Segmenter) -> list[str]:
    """Token surfaces in order; concatenation reconstructs the text."""
    return [t.surface for t in tag_tokens(text, segmenter)]


class SwapDistanceDistribution:
    """Gap (in segments) between the two swapped runs.

    Masses are stored per-mille so they sum to one exactly:
    gap 0 with 0.764, gap 1 with 0.218, gap 2 with 0.018.
    """

    MASSES_PER_MILLE = {0: 764, 1: 218, 2: 18}

    def __init__(self) -> None:
        assert sum(self.MASSES_PER_MILLE.values()) == 1000
        self._cumulative: list[tuple[int, int]] = []
        acc = 0
        for gap, mass in sorted(self.MASSES_PER_MILLE.items()):
            acc += mass
            self._cumulative.append((acc, gap))

    def mass(self, gap: int) -> float:
        return self.MASSES_PER_MILLE.get(gap, 0) / 1000.0

    def sample(self, rng: random.Random) -> int:
        draw = rng.randrange(1000)
        for bound, gap in self._cumulative:
            if draw < bound:
                return gap
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class PermutationRecord:
    """How an inverted text maps back onto its source.

    `bases` are the source's swap units in order (their concatenation is
    the source text); `mapping[i]` is the base index found at position i
    of the transformed unit sequence.
    """

    bases: tuple[str, ...]
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.bases))):
            raise ValueError("mapping must be a permutation of the base indices")

    def apply(self) -> list[str]:
        return [self.bases[i] for i in self.mapping]

    def to_meta(self) -> dict[str, str]:
        return {
            "bases": json.dumps(list(self.bases), ensure_ascii=False),
            "mapping": json.dumps(list(self.mapping)),
        }

    @classmethod
    def from_meta(cls, meta: dict[str, str]) -> "PermutationRecord":
        bases = json.loads(meta["bases"])
        mapping = json.loads(meta["mapping"])
        return cls(tuple(bases), tuple(mapping))


def is_involution(record: PermutationRecord) -> bool:
    m = record.mapping
    return all(m[m[i]] == i for i in range(len(m)))


def build_permutation(t: list[str], t_prime: list[str]) -> PermutationRecord:
    """Recover the index mapping between two segment sequences with the
    same multiset of elements; repeated elements match leftmost-first."""
    if sorted(t) != sorted(t_prime):
        raise ValueError("sequences are not permutations of each other")
    available: dict[str, list[int]] = {}
    for i, seg in enumerate(t):
        available.setdefault(seg, []).append(i)
    mapping = [available[seg].pop(0) for seg in t_prime]
    return PermutationRecord(tuple(t), tuple(mapping))


def ireg_augment(
    sample: TextSample,
    segmenter: Segmenter,
    rng: random.Random,
    distribution: SwapDistanceDistribution | None = None,
) -> tuple[AugmentedSample, PermutationRecord] | Skip:
    """Swap two nearby runs of 1-3 segments.

    The two runs are treated as atomic units in the permutation record,
    making the record a transposition and therefore its own inverse.
    Gap redraws cap at 8 before falling back to adjacent runs.
    """
    dist = distribution or SwapDistanceDistribution()
    segs = segment(sample.text, segmenter)
    n = len(segs)
    if n < 2:
        return Skip(SKIP_TOO_SHORT)
    len_a = rng.randint(1, min(3, n - 1))
    len_b = rng.randint(1, min(3, n - len_a))
    gap = 0
    for _ in range(8):
        candidate = dist.sample(rng)
        if len_a + candidate + len_b <= n:
            gap = candidate
            break
    i = rng.randrange(n - (len_a + gap + len_b) + 1)
    j = i + len_a + gap
    run_a = "".join(segs[i : i + len_a])
    run_b = "".join(segs[j : j + len_b])
    bases = tuple(segs[:i]) + (run_a,) + tuple(segs[i + len_a : j]) + (run_b,) + tuple(segs[j + len_b :])
    idx_a = i
    idx_b = i + 1 + (j - (i + len_a))
    mapping = list(range(len(bases)))
    mapping[idx_a], mapping[idx_b] = idx_b, idx_a
    record = PermutationRecord(bases, tuple(mapping))
    new_text = "".join(record.apply())
    meta = {
        "gap": str(gap),
        "runs": f"{i}:{i + len_a}<->{j}:{j + len_b}",
        **record.to_meta(),
    }
    return AugmentedSample(sample.id, GeneratorId.IREG, new_text, sample.label, meta), record
