"""Bundled data assets and their loader.

A run binds to one asset directory (the packaged defaults unless
overridden); every file is validated up front and its digest recorded in
the run manifest.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from scda.errors import ConfigError
from scda.glyph import EmojiEntry, load_emoji_dict, load_radical_table
from scda.phonetic import (
    PronunciationEntry,
    load_pinyin_table,
    load_pronunciation_dict,
    load_symbol_map,
)
from scda.segmentation import load_lexicon

BUNDLED_DIR = Path(__file__).parent / "assets"

ASSET_FILES = {
    "lexicon": "lexicon.tsv",
    "pinyin": "pinyin.tsv",
    "symbols": "symbols.tsv",
    "pronunciation": "pronunciation.tsv",
    "emoji": "emoji.tsv",
    "radicals": "radicals.tsv",
}


@dataclass
class AssetBundle:
    directory: Path
    lexicon: dict[str, str]
    pinyin: dict[str, str]
    symbol_map: dict[str, str]
    pronunciations: list[PronunciationEntry]
    emoji: list[EmojiEntry]
    radicals: dict[str, str]

    @classmethod
    def load(cls, directory: str | Path | None = None) -> "AssetBundle":
        directory = Path(directory) if directory is not None else BUNDLED_DIR
        if not directory.is_dir():
            raise ConfigError(f"asset directory {directory} does not exist")
        missing = [n for n in ASSET_FILES.values() if not (directory / n).is_file()]
        if missing:
            raise ConfigError(f"asset directory {directory} is missing {', '.join(missing)}")
        symbol_map = load_symbol_map(directory / ASSET_FILES["symbols"])
        return cls(
            directory=directory,
            lexicon=load_lexicon(directory / ASSET_FILES["lexicon"]),
            pinyin=load_pinyin_table(directory / ASSET_FILES["pinyin"]),
            symbol_map=symbol_map,
            pronunciations=load_pronunciation_dict(
                directory / ASSET_FILES["pronunciation"], symbol_map
            ),
            emoji=load_emoji_dict(directory / ASSET_FILES["emoji"]),
            radicals=load_radical_table(directory / ASSET_FILES["radicals"]),
        )

    def digests(self) -> dict[str, str]:
        out: dict[str, str] = {}
        for name in sorted(ASSET_FILES.values()):
            out[name] = hashlib.sha256((self.directory / name).read_bytes()).hexdigest()
        return out
