"""Core record types shared by every generator and the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class GeneratorId(str, Enum):
    """The six augmentation strategies, in canonical pipeline order."""

    SPEG = "SPEG"
    HMEG = "HMEG"
    EEEG = "EEEG"
    IREG = "IREG"
    DEG = "DEG"
    MDEEG = "MDEEG"


GENERATOR_ORDER = (
    GeneratorId.SPEG,
    GeneratorId.HMEG,
    GeneratorId.EEEG,
    GeneratorId.IREG,
    GeneratorId.DEG,
    GeneratorId.MDEEG,
)

# Reason codes attached to skip records.
SKIP_NO_COLLOCATIONS = "no_collocations"
SKIP_TOO_SHORT = "too_short"
SKIP_BELOW_THRESHOLD = "below_threshold"
SKIP_PROVIDER_ERROR = "provider_error_fallback_unavailable"

SKIP_REASONS = (
    SKIP_NO_COLLOCATIONS,
    SKIP_TOO_SHORT,
    SKIP_BELOW_THRESHOLD,
    SKIP_PROVIDER_ERROR,
)


@dataclass(frozen=True)
class TextSample:
    """One input record: a non-empty id, a non-empty text, a label."""

    id: str
    text: str
    label: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("sample id must be non-empty")
        if not self.text.strip():
            raise ValueError(f"sample {self.id!r}: text must be non-empty")


@dataclass(frozen=True)
class AugmentedSample:
    """One generated variant of a source sample.

    `meta` is a flat string-to-string map; structured values (spans,
    permutations) are JSON-encoded into their string slot so the record
    stays trivially serializable.
    """

    source_id: str
    generator: GeneratorId
    text: str
    label: str = ""
    meta: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Skip:
    """Returned by a generator instead of a sample; the pipeline turns
    it into a SkipRecord with source id and generator attached."""

    reason: str

    def __post_init__(self) -> None:
        if self.reason not in SKIP_REASONS:
            raise ValueError(f"unknown skip reason {self.reason!r}")


@dataclass(frozen=True)
class SkipRecord:
    source_id: str
    generator: GeneratorId
    reason: str


@dataclass(frozen=True)
class SeedConfig:
    """Master seed for the whole run; per-(sample, generator) streams are
    derived from it, never shared."""

    master_seed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 unsigned bits")
