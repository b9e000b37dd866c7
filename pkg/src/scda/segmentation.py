"""Lexicon-driven segmentation and part-of-speech tagging.

A real tagger can be plugged in through the Segmenter protocol; the
builtin is greedy longest-match over a TSV lexicon, which is enough for
collocation mining on short review text.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, runtime_checkable

from scda.errors import ConfigError, ProviderError

POS_TAGS = ("noun", "adjective", "verb", "idiom", "other")


@dataclass(frozen=True)
class PosTaggedToken:
    surface: str
    pos: str
    start: int
    end: int  # exclusive char offset

    def __post_init__(self) -> None:
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown pos tag {self.pos!r}")
        if self.end - self.start != len(self.surface):
            raise ValueError("token span does not cover its surface")


@runtime_checkable
class Segmenter(Protocol):
    name: str

    def tokens(self, text: str) -> list[PosTaggedToken]: ...


def load_lexicon(path: str | Path) -> dict[str, str]:
    """Read a surface<TAB>pos lexicon; longest surface wins at match time."""
    lexicon: dict[str, str] = {}
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise ConfigError(f"{path.name} line {lineno}: expected surface<TAB>pos")
            surface, pos = parts
            if pos not in POS_TAGS:
                raise ConfigError(f"{path.name} line {lineno}: unknown pos {pos!r}")
            lexicon[surface] = pos
    if not lexicon:
        raise ConfigError(f"{path.name}: empty lexicon")
    return lexicon


def _is_word_char(ch: str) -> bool:
    return ch.isascii() and ch.isalnum()


class LexiconSegmenter:
    """Greedy longest-match segmentation with unknown-run fallback.

    Unknown ASCII word runs and whitespace runs each become a single
    token tagged `other`; any other unknown character stands alone.
    """

    def __init__(self, lexicon: dict[str, str], name: str = "builtin-lexicon"):
        if not lexicon:
            raise ConfigError("lexicon must be non-empty")
        self._lexicon = lexicon
        self._max_len = max(len(s) for s in lexicon)
        self.name = name

    def tokens(self, text: str) -> list[PosTaggedToken]:
        out: list[PosTaggedToken] = []
        i = 0
        n = len(text)
        while i < n:
            matched = None
            for length in range(min(self._max_len, n - i), 0, -1):
                candidate = text[i : i + length]
                if candidate in self._lexicon:
                    matched = (candidate, self._lexicon[candidate])
                    break
            if matched is not None:
                surface, pos = matched
                out.append(PosTaggedToken(surface, pos, i, i + len(surface)))
                i += len(surface)
                continue
            ch = text[i]
            j = i + 1
            if ch.isspace():
                while j < n and text[j].isspace():
                    j += 1
            elif _is_word_char(ch):
                while j < n and _is_word_char(text[j]):
                    j += 1
            out.append(PosTaggedToken(text[i:j], "other", i, j))
            i = j
        return out


def tag_tokens(text: str, segmenter: Segmenter) -> list[PosTaggedToken]:
    """Tokenize `text`, guaranteeing the tokens tile it exactly."""
    if not text:
        raise ValueError("cannot tokenize empty text")
    try:
        toks = segmenter.tokens(text)
    except Exception as exc:
        raise ProviderError(getattr(segmenter, "name", "segmenter"), str(exc)) from exc
    if "".join(t.surface for t in toks) != text:
        raise ProviderError(segmenter.name, "tokens do not reconstruct the text")
    return toks
