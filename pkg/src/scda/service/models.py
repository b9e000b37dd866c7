"""Request and response schemas for the service endpoints."""

from __future__ import annotations

from pydantic import BaseModel, Field


class EmbedRequest(BaseModel):
    texts: list[str] = Field(min_length=1)


class EmbedResponse(BaseModel):
    dim: int
    vectors: list[list[float]]


class SummarizeRequest(BaseModel):
    text: str = Field(min_length=1)
    max_len: int = Field(default=32, ge=1)


class SummarizeResponse(BaseModel):
    theme: str


class AugmentRequest(BaseModel):
    id: str = Field(default="sample", min_length=1)
    text: str = Field(min_length=1)
    label: str = ""
    generators: list[str] | None = None
    seed: int = Field(default=0, ge=0)
    top_k: int = Field(default=5, ge=1)
    hmeg_threshold: float = Field(default=0.5, ge=0.0, le=1.0)


class AugmentedRecord(BaseModel):
    source_id: str
    generator: str
    text: str
    label: str
    meta: dict[str, str]


class SkipOut(BaseModel):
    source_id: str
    generator: str
    reason: str


class AugmentResponse(BaseModel):
    augmented: list[AugmentedRecord]
    skips: list[SkipOut]


class CollocationOut(BaseModel):
    surface: str
    start: int
    end: int
    score: float | None = None
    is_idiom: bool


class CollocationsRequest(BaseModel):
    text: str = Field(min_length=1)
    k: int = Field(default=5, ge=1)


class CollocationsResponse(BaseModel):
    collocations: list[CollocationOut]


class HealthResponse(BaseModel):
    status: str
    version: str
