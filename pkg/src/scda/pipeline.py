"""Batch orchestration: one augmented record or one skip record per
(sample, generator), with a manifest describing the run.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from scda import glyph, phonetic, structural, summarize
from scda.assets import AssetBundle
from scda.collocations import DEFAULT_TOP_K, CollocationSet, collocations
from scda.embedding import DEFAULT_DIM, EmbeddingProvider, HashEmbedder
from scda.errors import ConfigError, DataError, ProviderError
from scda.rng import derive_rng
from scda.segmentation import LexiconSegmenter
from scda.structural import HeuristicParser, SwapDistanceDistribution
from scda.summarize import FallbackSummarizer, SummarizerClient
from scda.types import (
    GENERATOR_ORDER,
    SKIP_PROVIDER_ERROR,
    AugmentedSample,
    GeneratorId,
    SeedConfig,
    Skip,
    SkipRecord,
    TextSample,
)

BUILTIN_EMBEDDER = "builtin"
FALLBACK_SUMMARIZER = "fallback"


@dataclass(frozen=True)
class PipelineConfig:
    generators: tuple[GeneratorId, ...] = GENERATOR_ORDER
    seed: int = 0
    top_k: int = DEFAULT_TOP_K
    embedder: str = BUILTIN_EMBEDDER  # "builtin" or an /embed endpoint URL
    embed_dim: int = DEFAULT_DIM
    summarizer: str = FALLBACK_SUMMARIZER  # "fallback" or a /summarize endpoint URL
    assets_dir: str | None = None
    hmeg_threshold: float = phonetic.DEFAULT_THRESHOLD
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.generators:
            raise ConfigError("at least one generator must be enabled")
        if len(set(self.generators)) != len(self.generators):
            raise ConfigError("duplicate generator in config")
        if self.top_k < 1:
            raise ConfigError(f"top-k must be >= 1, got {self.top_k}")
        if not 0.0 <= self.hmeg_threshold <= 1.0:
            raise ConfigError("hmeg threshold must be within [0, 1]")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")

    def canonical(self) -> dict:
        return {
            "generators": [g.value for g in self.generators],
            "seed": self.seed,
            "top_k": self.top_k,
            "embedder": self.embedder,
            "embed_dim": self.embed_dim,
            "summarizer": self.summarizer,
            "assets_dir": self.assets_dir,
            "hmeg_threshold": self.hmeg_threshold,
            "jobs": self.jobs,
        }

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), ensure_ascii=False, sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    config: dict
    config_sha256: str
    asset_sha256: dict[str, str]
    embedder: str
    summarizer: str
    samples: int
    counts: dict[str, dict[str, int]]
    wall_time_s: float

    def to_json(self) -> str:
        payload = {
            "config": self.config,
            "config_sha256": self.config_sha256,
            "asset_sha256": self.asset_sha256,
            "embedder": self.embedder,
            "summarizer": self.summarizer,
            "samples": self.samples,
            "counts": self.counts,
            "wall_time_s": round(self.wall_time_s, 3),
        }
        return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)


@dataclass
class RunResult:
    augmented: list[AugmentedSample] = field(default_factory=list)
    skips: list[SkipRecord] = field(default_factory=list)
    manifest: RunManifest | None = None


class Pipeline:
    """Binds config, assets and providers; augments sample batches."""

    def __init__(
        self,
        config: PipelineConfig,
        embedder: EmbeddingProvider | None = None,
        summarizer_client: SummarizerClient | None = None,
    ):
        self.config = config
        self.assets = AssetBundle.load(config.assets_dir)
        if embedder is not None:
            self.embedder: EmbeddingProvider = embedder
        elif config.embedder == BUILTIN_EMBEDDER:
            self.embedder = HashEmbedder(config.embed_dim)
        else:
            from scda.remote import RemoteEmbedder

            self.embedder = RemoteEmbedder(config.embedder)
        self.segmenter = LexiconSegmenter(self.assets.lexicon)
        self.parser = HeuristicParser(self.segmenter)
        self.fallback_summarizer = FallbackSummarizer(self.embedder)
        if summarizer_client is not None:
            self.summarizer: SummarizerClient | None = summarizer_client
        elif config.summarizer == FALLBACK_SUMMARIZER:
            self.summarizer = None
        else:
            from scda.remote import RemoteSummarizer

            self.summarizer = RemoteSummarizer(config.summarizer)
        self.gap_distribution = SwapDistanceDistribution()

    # -- per sample ----------------------------------------------------

    def augment_sample(self, sample: TextSample) -> tuple[list[AugmentedSample], list[SkipRecord]]:
        augmented: list[AugmentedSample] = []
        skips: list[SkipRecord] = []
        colls: CollocationSet | None = None
        colls_error: ProviderError | None = None
        needs_colls = any(
            g in self.config.generators
            for g in (GeneratorId.SPEG, GeneratorId.HMEG, GeneratorId.EEEG, GeneratorId.DEG)
        )
        if needs_colls:
            try:
                colls = collocations(sample.text, self.segmenter, self.embedder, self.config.top_k)
            except ProviderError as exc:
                colls_error = exc
        for gen in GENERATOR_ORDER:
            if gen not in self.config.generators:
                continue
            try:
                result = self._run_generator(gen, sample, colls, colls_error)
            except ProviderError:
                result = Skip(SKIP_PROVIDER_ERROR)
            if isinstance(result, Skip):
                skips.append(SkipRecord(sample.id, gen, result.reason))
            else:
                augmented.append(result)
        return augmented, skips

    def _run_generator(
        self,
        gen: GeneratorId,
        sample: TextSample,
        colls: CollocationSet | None,
        colls_error: ProviderError | None,
    ) -> AugmentedSample | Skip:
        if gen is GeneratorId.SPEG:
            # a collocation failure still leaves the parser path open
            rng = derive_rng(self.config.seed, sample.id, gen)
            return structural.speg_augment(sample, self.parser, colls, rng)
        if gen in (GeneratorId.HMEG, GeneratorId.EEEG, GeneratorId.DEG) and colls_error is not None:
            return Skip(SKIP_PROVIDER_ERROR)
        if gen is GeneratorId.HMEG:
            assert colls is not None
            return phonetic.hmeg_augment(
                sample,
                colls,
                self.assets.pinyin,
                self.assets.pronunciations,
                self.config.hmeg_threshold,
            )
        if gen is GeneratorId.EEEG:
            assert colls is not None
            return glyph.eeeg_augment(sample, colls, self.assets.emoji, self.embedder)
        if gen is GeneratorId.DEG:
            assert colls is not None
            return glyph.deg_augment(sample, colls, self.assets.radicals)
        if gen is GeneratorId.IREG:
            rng = derive_rng(self.config.seed, sample.id, gen)
            result = structural.ireg_augment(sample, self.segmenter, rng, self.gap_distribution)
            if isinstance(result, Skip):
                return result
            record, _ = result
            return record
        if gen is GeneratorId.MDEEG:
            return summarize.mdeeg_augment(sample, self.summarizer, self.fallback_summarizer)
        raise ConfigError(f"unknown generator {gen!r}")

    # -- whole corpus --------------------------------------------------

    def run(self, corpus: list[TextSample]) -> RunResult:
        started = time.monotonic()
        result = RunResult()
        if self.config.jobs > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=self.config.jobs) as pool:
                per_sample = list(pool.map(self.augment_sample, corpus))
        else:
            per_sample = [self.augment_sample(s) for s in corpus]
        counts = {
            g.value: {"augmented": 0, "skipped": 0}
            for g in GENERATOR_ORDER
            if g in self.config.generators
        }
        for augmented, skips in per_sample:
            result.augmented.extend(augmented)
            result.skips.extend(skips)
            for record in augmented:
                counts[record.generator.value]["augmented"] += 1
            for skip in skips:
                counts[skip.generator.value]["skipped"] += 1
        result.manifest = RunManifest(
            config=self.config.canonical(),
            config_sha256=self.config.digest(),
            asset_sha256=self.assets.digests(),
            embedder=self.embedder.name,
            summarizer=(self.summarizer or self.fallback_summarizer).name,
            samples=len(corpus),
            counts=counts,
            wall_time_s=time.monotonic() - started,
        )
        return result


def run_augment(config: PipelineConfig, corpus: list[TextSample]) -> RunResult:
    """One-shot convenience wrapper around Pipeline."""
    return Pipeline(config).run(corpus)


# -- verification ----------------------------------------------------------


@dataclass
class VerifyReport:
    checked: int = 0
    passed: int = 0
    failed: int = 0
    unverifiable: int = 0
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "checked": self.checked,
                "passed": self.passed,
                "failed": self.failed,
                "unverifiable": self.unverifiable,
                "failures": self.failures,
            },
            ensure_ascii=False,
            indent=2,
        )


def verify_permutations(
    augmented: list[AugmentedSample],
    originals: dict[str, TextSample] | None = None,
) -> VerifyReport:
    """Check every IREG record's permutation: valid involution, mapping
    reproduces the augmented text, and reapplying it to the augmented
    units recovers the source text."""
    report = VerifyReport()
    for record in augmented:
        if record.generator is not GeneratorId.IREG:
            continue
        report.checked += 1
        if "bases" not in record.meta or "mapping" not in record.meta:
            report.unverifiable += 1
            report.failures.append(f"{record.source_id}: missing permutation meta")
            continue
        try:
            perm = structural.PermutationRecord.from_meta(record.meta)
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            report.unverifiable += 1
            report.failures.append(f"{record.source_id}: bad permutation meta ({exc})")
            continue
        problems = []
        if not structural.is_involution(perm):
            problems.append("mapping is not an involution")
        transformed = perm.apply()
        if "".join(transformed) != record.text:
            problems.append("mapping does not reproduce the augmented text")
        recovered = "".join(transformed[i] for i in perm.mapping)
        if recovered != "".join(perm.bases):
            problems.append("reapplication does not recover the source units")
        if originals is not None:
            source = originals.get(record.source_id)
            if source is None:
                problems.append("source sample not found")
            elif "".join(perm.bases) != source.text:
                problems.append("permutation bases do not spell the source text")
        if problems:
            report.failed += 1
            report.failures.append(f"{record.source_id}: " + "; ".join(problems))
        else:
            report.passed += 1
    return report


# -- summarizer corpus prep ------------------------------------------------


def load_theme_pairs(path: str | Path) -> list[summarize.ThemeContentPair]:
    """JSONL with {"theme": ..., "content": ...} per line."""
    pairs: list[summarize.ThemeContentPair] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                pairs.append(summarize.ThemeContentPair(obj["theme"], obj["content"]))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(f"line {lineno}: bad theme/content pair ({exc})") from exc
    if not pairs:
        raise DataError(f"{path}: no pairs found")
    return pairs


def run_prep(
    pairs: list[summarize.ThemeContentPair],
    sep: str = summarize.DEFAULT_SEP,
    eos: str = summarize.DEFAULT_EOS,
    min_content: int = summarize.MIN_CONTENT_UNITS,
    min_theme: int = summarize.MIN_THEME_UNITS,
) -> tuple[str, summarize.CleaningReport]:
    """Clean pairs and assemble the training stream."""
    kept, report = summarize.clean_corpus(pairs, min_content=min_content, min_theme=min_theme)
    if not kept:
        raise DataError("cleaning dropped every pair; nothing to format")
    return summarize.format_training(kept, sep=sep, eos=eos), report
