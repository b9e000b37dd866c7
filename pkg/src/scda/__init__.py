"""Subculture-expression data augmentation toolkit."""

from scda.types import (
    GENERATOR_ORDER,
    AugmentedSample,
    GeneratorId,
    SeedConfig,
    Skip,
    SkipRecord,
    TextSample,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedSample",
    "GENERATOR_ORDER",
    "GeneratorId",
    "SeedConfig",
    "Skip",
    "SkipRecord",
    "TextSample",
    "__version__",
]
