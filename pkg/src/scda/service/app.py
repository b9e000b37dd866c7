"""The augmentation service.

Wraps the core pipeline for multi-client use and doubles as a reference
implementation of the embedding and summarizer provider protocols, so a
pipeline on another host can point --embedder/--summarizer here.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from scda import __version__
from scda.collocations import collocations
from scda.errors import ConfigError, DataError, ProviderError, ScdaError
from scda.pipeline import Pipeline, PipelineConfig
from scda.service.models import (
    AugmentedRecord,
    AugmentRequest,
    AugmentResponse,
    CollocationsRequest,
    CollocationsResponse,
    CollocationOut,
    EmbedRequest,
    EmbedResponse,
    HealthResponse,
    SkipOut,
    SummarizeRequest,
    SummarizeResponse,
)
from scda.summarize import summarize
from scda.types import GeneratorId, TextSample


def create_app(assets_dir: str | None = None, embed_dim: int = 256) -> FastAPI:
    app = FastAPI(title="scda", version=__version__)
    base_config = PipelineConfig(assets_dir=assets_dir, embed_dim=embed_dim)
    shared = Pipeline(base_config)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/embed", response_model=EmbedResponse)
    def embed(request: EmbedRequest) -> EmbedResponse:
        try:
            vectors = shared.embedder.embed_batch(request.texts)
        except (ValueError, ProviderError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return EmbedResponse(dim=shared.embedder.dim, vectors=[v.tolist() for v in vectors])

    @app.post("/summarize", response_model=SummarizeResponse)
    def summarize_endpoint(request: SummarizeRequest) -> SummarizeResponse:
        try:
            theme = summarize(request.text, shared.fallback_summarizer, request.max_len)
        except ProviderError as exc:
            raise HTTPException(status_code=503, detail=str(exc)) from exc
        return SummarizeResponse(theme=theme)

    @app.post("/collocations", response_model=CollocationsResponse)
    def collocations_endpoint(request: CollocationsRequest) -> CollocationsResponse:
        try:
            found = collocations(request.text, shared.segmenter, shared.embedder, request.k)
        except ProviderError as exc:
            raise HTTPException(status_code=503, detail=str(exc)) from exc
        ranked_scores = {(r.start, r.end): r.score for r in found.ranked}
        out = [
            CollocationOut(
                surface=span.surface,
                start=span.start,
                end=span.end,
                score=ranked_scores.get((span.start, span.end)),
                is_idiom=span.is_idiom,
            )
            for span in found.union()
        ]
        return CollocationsResponse(collocations=out)

    @app.post("/augment", response_model=AugmentResponse)
    def augment(request: AugmentRequest) -> AugmentResponse:
        try:
            generators = (
                tuple(GeneratorId(g.upper()) for g in request.generators)
                if request.generators
                else base_config.generators
            )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=f"unknown generator: {exc}") from exc
        try:
            config = PipelineConfig(
                generators=generators,
                seed=request.seed,
                top_k=request.top_k,
                assets_dir=assets_dir,
                embed_dim=embed_dim,
                hmeg_threshold=request.hmeg_threshold,
            )
            pipeline = Pipeline(config, embedder=shared.embedder)
            sample = TextSample(id=request.id, text=request.text, label=request.label)
            augmented, skips = pipeline.augment_sample(sample)
        except (ConfigError, DataError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except ProviderError as exc:
            raise HTTPException(status_code=503, detail=str(exc)) from exc
        except ScdaError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return AugmentResponse(
            augmented=[
                AugmentedRecord(
                    source_id=r.source_id,
                    generator=r.generator.value,
                    text=r.text,
                    label=r.label,
                    meta=r.meta,
                )
                for r in augmented
            ],
            skips=[
                SkipOut(source_id=s.source_id, generator=s.generator.value, reason=s.reason)
                for s in skips
            ],
        )

    return app
