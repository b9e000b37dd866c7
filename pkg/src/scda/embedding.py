"""Text embeddings: the offline hashing embedder and the provider seam.

The builtin embedder is a stand-in with useful geometry (identical
strings embed identically, overlapping strings correlate); semantic
quality comes from plugging a real encoder behind the same protocol.
"""

from __future__ import annotations

import hashlib
from typing import Protocol, Sequence, runtime_checkable

import numpy as np

DEFAULT_DIM = 256
MIN_DIM = 16
_NGRAM_SIZES = (1, 2, 3)


def hash_embed(text: str, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Embed `text` by hashing its character 1-, 2- and 3-grams into
    `dim` buckets, then L2-normalizing the bucket counts.

    Pure function of (text, dim). Raises ValueError for empty text or
    dim below the floor.
    """
    if not text:
        raise ValueError("cannot embed empty text")
    if dim < MIN_DIM:
        raise ValueError(f"embedding dim must be >= {MIN_DIM}, got {dim}")
    vec = np.zeros(dim, dtype=np.float64)
    for n in _NGRAM_SIZES:
        for i in range(len(text) - n + 1):
            gram = text[i : i + n].encode("utf-8")
            digest = hashlib.blake2b(gram, digest_size=8).digest()
            vec[int.from_bytes(digest, "big") % dim] += 1.0
    return vec / np.linalg.norm(vec)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity, clamped into [-1, 1] against float drift."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for zero vector")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


@runtime_checkable
class EmbeddingProvider(Protocol):
    """Batch text encoder. Implementations must be deterministic for a
    fixed configuration; failures raise ProviderError with identity."""

    name: str
    dim: int

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]: ...


class HashEmbedder:
    """The builtin n-gram hashing embedder behind the provider protocol."""

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim < MIN_DIM:
            raise ValueError(f"embedding dim must be >= {MIN_DIM}, got {dim}")
        self.dim = dim
        self.name = f"builtin-hash-{dim}"

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        return [hash_embed(t, self.dim) for t in texts]
