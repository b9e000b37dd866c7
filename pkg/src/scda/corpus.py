"""Corpus file formats: input samples, augmented records, skip records.

All serialization here is canonical (fixed key order, compact
separators, raw UTF-8) so that identical runs produce byte-identical
files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator

from scda.errors import DataError
from scda.types import AugmentedSample, GeneratorId, SkipRecord, TextSample

INPUT_FIELDS = ("id", "text", "label")


def _parse_jsonl_line(line: str, lineno: int) -> dict:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DataError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
    if not isinstance(record, dict):
        raise DataError(f"line {lineno}: expected a JSON object")
    return record


def load_corpus(path: str | Path, fmt: str = "jsonl") -> list[TextSample]:
    """Read input samples from a JSONL or TSV file.

    JSONL records carry {"id", "text", "label"}; TSV rows are
    id<TAB>label<TAB>text. Malformed rows, missing fields, empty
    ids/texts and duplicate ids all raise DataError naming the line.
    """
    path = Path(path)
    if fmt not in ("jsonl", "tsv"):
        raise DataError(f"unknown corpus format {fmt!r}")
    samples: list[TextSample] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if fmt == "jsonl":
                record = _parse_jsonl_line(line, lineno)
                missing = [f for f in INPUT_FIELDS if f not in record]
                if missing:
                    raise DataError(f"line {lineno}: missing field(s) {', '.join(missing)}")
                sid, text, label = record["id"], record["text"], record["label"]
            else:
                parts = line.split("\t", 2)
                if len(parts) != 3:
                    raise DataError(f"line {lineno}: expected id<TAB>label<TAB>text")
                sid, label, text = parts
            if not isinstance(sid, str) or not isinstance(text, str) or not isinstance(label, str):
                raise DataError(f"line {lineno}: id, text and label must be strings")
            try:
                sample = TextSample(id=sid, text=text, label=label)
            except ValueError as exc:
                raise DataError(f"line {lineno}: {exc}") from exc
            if sample.id in seen:
                raise DataError(f"line {lineno}: duplicate sample id {sample.id!r}")
            seen.add(sample.id)
            samples.append(sample)
    return samples


def augmented_to_json(record: AugmentedSample) -> str:
    """Canonical one-line JSON for an augmented record."""
    payload = {
        "source_id": record.source_id,
        "generator": record.generator.value,
        "text": record.text,
        "label": record.label,
        "meta": {k: record.meta[k] for k in sorted(record.meta)},
    }
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def skip_to_json(record: SkipRecord) -> str:
    payload = {
        "source_id": record.source_id,
        "generator": record.generator.value,
        "reason": record.reason,
    }
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def write_jsonl(path: str | Path, lines: Iterable[str]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def load_augmented(path: str | Path) -> list[AugmentedSample]:
    """Read augmented records back; inverse of augmented_to_json per line."""
    records: list[AugmentedSample] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            obj = _parse_jsonl_line(line, lineno)
            try:
                records.append(
                    AugmentedSample(
                        source_id=obj["source_id"],
                        generator=GeneratorId(obj["generator"]),
                        text=obj["text"],
                        label=obj.get("label", ""),
                        meta=dict(obj.get("meta", {})),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise DataError(f"line {lineno}: bad augmented record ({exc})") from exc
    return records


def iter_skips(path: str | Path) -> Iterator[SkipRecord]:
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            obj = _parse_jsonl_line(line, lineno)
            try:
                yield SkipRecord(obj["source_id"], GeneratorId(obj["generator"]), obj["reason"])
            except (KeyError, ValueError) as exc:
                raise DataError(f"line {lineno}: bad skip record ({exc})") from exc
