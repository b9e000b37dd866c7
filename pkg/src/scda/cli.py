"""Command line entry points.

Exit codes: 0 success, 1 configuration or asset problems, 2 input data
problems, 3 hard provider failures. Every flag can also be set through
an SCDA_<COMMAND>_<FLAG> environment variable.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from scda import corpus as corpus_io
from scda import pipeline as pl
from scda import summarize as summarize_mod
from scda.embedding import DEFAULT_DIM, HashEmbedder
from scda.errors import ConfigError, DataError, ProviderError
from scda.types import GENERATOR_ORDER, GeneratorId

ENV_PREFIX = "SCDA"


def _parse_generators(raw: str) -> tuple[GeneratorId, ...]:
    names = [part.strip().upper() for part in raw.split(",") if part.strip()]
    if not names:
        raise ConfigError("no generators selected")
    out = []
    for name in names:
        try:
            out.append(GeneratorId(name))
        except ValueError:
            valid = ",".join(g.value.lower() for g in GENERATOR_ORDER)
            raise ConfigError(f"unknown generator {name!r} (valid: {valid})") from None
    return tuple(out)


def _sidecar(output: Path, suffix: str) -> Path:
    return output.with_name(output.stem + suffix)


def _build_embedder(spec: str, dim: int):
    if spec == pl.BUILTIN_EMBEDDER:
        return HashEmbedder(dim)
    from scda.remote import RemoteEmbedder

    return RemoteEmbedder(spec)


@click.group()
def scda() -> None:
    """Subculture-expression data augmentation toolkit."""


@scda.command()
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path))
@click.option("--output", "output_path", required=True, type=click.Path(path_type=Path))
@click.option("--format", "fmt", default="jsonl", type=click.Choice(["jsonl", "tsv"]))
@click.option("--generators", default="speg,hmeg,eeeg,ireg,deg,mdeeg", show_default=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--topk", default=5, show_default=True, type=int)
@click.option("--embedder", default=pl.BUILTIN_EMBEDDER, show_default=True,
              help="'builtin' or an /embed endpoint URL")
@click.option("--embed-dim", default=DEFAULT_DIM, show_default=True, type=int)
@click.option("--summarizer", default=pl.FALLBACK_SUMMARIZER, show_default=True,
              help="'fallback' or a /summarize endpoint URL")
@click.option("--assets", "assets_dir", default=None, type=click.Path(path_type=Path))
@click.option("--hmeg-threshold", default=0.5, show_default=True, type=float)
@click.option("--jobs", default=1, show_default=True, type=int)
def augment(
    input_path: Path,
    output_path: Path,
    fmt: str,
    generators: str,
    seed: int,
    topk: int,
    embedder: str,
    embed_dim: int,
    summarizer: str,
    assets_dir: Path | None,
    hmeg_threshold: float,
    jobs: int,
) -> None:
    """Augment a corpus; writes records, skip records and a manifest."""
    config = pl.PipelineConfig(
        generators=_parse_generators(generators),
        seed=seed,
        top_k=topk,
        embedder=embedder,
        embed_dim=embed_dim,
        summarizer=summarizer,
        assets_dir=str(assets_dir) if assets_dir else None,
        hmeg_threshold=hmeg_threshold,
        jobs=jobs,
    )
    samples = corpus_io.load_corpus(input_path, fmt)
    result = pl.Pipeline(config).run(samples)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    corpus_io.write_jsonl(output_path, (corpus_io.augmented_to_json(r) for r in result.augmented))
    corpus_io.write_jsonl(
        _sidecar(output_path, ".skips.jsonl"),
        (corpus_io.skip_to_json(s) for s in result.skips),
    )
    assert result.manifest is not None
    _sidecar(output_path, ".manifest.json").write_text(
        result.manifest.to_json() + "\n", encoding="utf-8"
    )
    click.echo(
        f"augmented {len(result.augmented)} records "
        f"({len(result.skips)} skips) from {len(samples)} samples -> {output_path}"
    )


@scda.command()
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path),
              help="original corpus (jsonl)")
@click.option("--augmented", "augmented_path", required=True, type=click.Path(path_type=Path))
@click.option("--output", "output_path", default=None, type=click.Path(path_type=Path),
              help="write the JSON report here as well")
@click.option("--embedder", default=pl.BUILTIN_EMBEDDER, show_default=True)
@click.option("--embed-dim", default=DEFAULT_DIM, show_default=True, type=int)
def stats(
    input_path: Path,
    augmented_path: Path,
    output_path: Path | None,
    embedder: str,
    embed_dim: int,
) -> None:
    """Per-generator similarity statistics between source and variants."""
    originals = {s.id: s for s in corpus_io.load_corpus(input_path)}
    augmented = corpus_io.load_augmented(augmented_path)
    orphans = sorted({r.source_id for r in augmented if r.source_id not in originals})
    if orphans:
        raise DataError(f"augmented records reference unknown ids: {', '.join(orphans)}")
    provider = _build_embedder(embedder, embed_dim)
    rows = summarize_mod.similarity_report(originals, augmented, provider)
    table = summarize_mod.render_similarity_table(rows)
    click.echo(table)
    if output_path is not None:
        payload = {
            "generators": {
                row.generator.value: {"count": row.count, "mean": row.mean, "std": row.std}
                for row in rows
            },
            "reference": {
                "MDEEG": {
                    "mean": summarize_mod.MDEEG_REFERENCE_MEAN,
                    "std": summarize_mod.MDEEG_REFERENCE_STD,
                }
            },
        }
        output_path.write_text(
            json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )


@scda.command()
@click.option("--augmented", "augmented_path", required=True, type=click.Path(path_type=Path))
@click.option("--input", "input_path", default=None, type=click.Path(path_type=Path),
              help="original corpus; enables source recovery checks")
@click.option("--output", "output_path", default=None, type=click.Path(path_type=Path))
def verify(augmented_path: Path, input_path: Path | None, output_path: Path | None) -> None:
    """Re-apply stored permutations of inversion records and report."""
    augmented = corpus_io.load_augmented(augmented_path)
    originals = None
    if input_path is not None:
        originals = {s.id: s for s in corpus_io.load_corpus(input_path)}
    report = pl.verify_permutations(augmented, originals)
    click.echo(
        f"checked {report.checked} inversion records: "
        f"{report.passed} passed, {report.failed} failed, {report.unverifiable} unverifiable"
    )
    for line in report.failures:
        click.echo(f"  {line}")
    if output_path is not None:
        output_path.write_text(report.to_json() + "\n", encoding="utf-8")
    if report.failed or report.unverifiable:
        raise DataError("verification failed")


@scda.command()
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path),
              help="JSONL with theme/content pairs")
@click.option("--output", "output_path", required=True, type=click.Path(path_type=Path))
@click.option("--report", "report_path", default=None, type=click.Path(path_type=Path))
@click.option("--sep", default=summarize_mod.DEFAULT_SEP, show_default=True)
@click.option("--eos", default=summarize_mod.DEFAULT_EOS, show_default=True)
def prep(
    input_path: Path,
    output_path: Path,
    report_path: Path | None,
    sep: str,
    eos: str,
) -> None:
    """Clean a theme/content corpus and emit a training stream."""
    pairs = pl.load_theme_pairs(input_path)
    stream, report = pl.run_prep(pairs, sep=sep, eos=eos)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(stream, encoding="utf-8")
    payload = {"kept": report.kept, "dropped": report.dropped}
    click.echo(json.dumps(payload, ensure_ascii=False))
    if report_path is not None:
        report_path.write_text(
            json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )


@scda.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--assets", "assets_dir", default=None, type=click.Path(path_type=Path))
@click.option("--embed-dim", default=DEFAULT_DIM, show_default=True, type=int)
def serve(host: str, port: int, assets_dir: Path | None, embed_dim: int) -> None:
    """Run the augmentation service (also a conforming embedding and
    summarizer provider)."""
    import uvicorn

    from scda.service.app import create_app

    app = create_app(assets_dir=str(assets_dir) if assets_dir else None, embed_dim=embed_dim)
    uvicorn.run(app, host=host, port=port)


def main(argv: list[str] | None = None) -> int:
    try:
        scda.main(
            args=argv,
            standalone_mode=False,
            auto_envvar_prefix=ENV_PREFIX,
        )
        return 0
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return 1
    except DataError as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2
    except ProviderError as exc:
        click.echo(f"provider error: {exc}", err=True)
        return 3
    except FileNotFoundError as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
