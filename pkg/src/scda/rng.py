"""Deterministic per-(sample, generator) random streams."""

from __future__ import annotations

import hashlib
import random

from scda.types import GeneratorId, SeedConfig


def derive_rng(seed: SeedConfig | int, sample_id: str, generator: GeneratorId) -> random.Random:
    """Return the RNG stream for one (master seed, sample, generator) triple.

    The stream is a pure function of the triple: re-deriving it always
    reproduces the same draws, and distinct triples get statistically
    independent streams via keyed hashing.
    """
    master = seed.master_seed if isinstance(seed, SeedConfig) else SeedConfig(seed).master_seed
    key = f"{master}:{sample_id}:{generator.value}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=16).digest()
    return random.Random(int.from_bytes(digest, "big"))
