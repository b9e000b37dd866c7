"""HTTP clients for the embedding and summarizer provider protocols."""

from __future__ import annotations

from typing import Sequence

import httpx
import numpy as np

from scda.errors import ProviderError


class RemoteEmbedder:
    """POST {"texts": [...]} to an /embed endpoint, expecting
    {"dim": d, "vectors": [[...], ...]} back."""

    def __init__(self, url: str, client: httpx.Client | None = None, timeout: float = 10.0):
        self.url = url
        self.name = f"remote-embed:{url}"
        self._client = client or httpx.Client(timeout=timeout)
        self.dim: int | None = None

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        try:
            response = self._client.post(self.url, json={"texts": list(texts)})
        except httpx.HTTPError as exc:
            raise ProviderError(self.name, f"request failed: {exc}") from exc
        if response.status_code // 100 != 2:
            raise ProviderError(self.name, f"HTTP {response.status_code}")
        try:
            payload = response.json()
            dim = int(payload["dim"])
            vectors = [np.asarray(v, dtype=np.float64) for v in payload["vectors"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ProviderError(self.name, f"malformed response: {exc}") from exc
        if len(vectors) != len(texts):
            raise ProviderError(
                self.name, f"expected {len(texts)} vectors, got {len(vectors)}"
            )
        for vec in vectors:
            if vec.shape != (dim,) or not np.all(np.isfinite(vec)):
                raise ProviderError(self.name, "vector shape or values out of contract")
        self.dim = dim
        return vectors


class RemoteSummarizer:
    """POST {"text": ..., "max_len": n} to a /summarize endpoint,
    expecting {"theme": ...} back."""

    def __init__(self, url: str, client: httpx.Client | None = None, timeout: float = 10.0):
        self.url = url
        self.name = f"remote-summarize:{url}"
        self._client = client or httpx.Client(timeout=timeout)

    def summarize(self, text: str, max_len: int) -> str:
        try:
            response = self._client.post(self.url, json={"text": text, "max_len": max_len})
        except httpx.HTTPError as exc:
            raise ProviderError(self.name, f"request failed: {exc}") from exc
        if response.status_code // 100 != 2:
            raise ProviderError(self.name, f"HTTP {response.status_code}")
        try:
            theme = response.json()["theme"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ProviderError(self.name, f"malformed response: {exc}") from exc
        if not isinstance(theme, str):
            raise ProviderError(self.name, "theme must be a string")
        return theme
