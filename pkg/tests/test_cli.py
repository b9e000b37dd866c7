import json

import pytest

from scda.cli import main
from scda.corpus import iter_skips, load_augmented

ZERO_SKIP_TEXT = "服务员上菜拖泥带水，为这盘辣菜来个战歌"


@pytest.fixture()
def corpus_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    rows = [
        {"id": "a", "text": ZERO_SKIP_TEXT, "label": "pos"},
        {"id": "b", "text": "老板喜欢战歌，厨师讨厌拖泥带水", "label": "neg"},
        {"id": "c", "text": "好", "label": "pos"},
    ]
    path.write_text(
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8"
    )
    return path


def run_augment(tmp_path, corpus_file, *extra):
    out = tmp_path / "out" / "aug.jsonl"
    code = main(
        ["augment", "--input", str(corpus_file), "--output", str(out), *extra]
    )
    return code, out


def test_augment_writes_records_skips_and_manifest(tmp_path, corpus_file, capsys):
    code, out = run_augment(tmp_path, corpus_file)
    assert code == 0
    records = load_augmented(out)
    skips = list(iter_skips(out.with_name("aug.skips.jsonl")))
    # 3 samples x 6 generators, every outcome accounted for
    assert len(records) + len(skips) == 18
    manifest = json.loads(out.with_name("aug.manifest.json").read_text())
    assert manifest["samples"] == 3
    for counts in manifest["counts"].values():
        assert counts["augmented"] + counts["skipped"] == 3
    assert "augmented" in capsys.readouterr().out


def test_augment_is_byte_deterministic(tmp_path, corpus_file):
    _, first = run_augment(tmp_path, corpus_file, "--seed", "9")
    second = tmp_path / "out2" / "aug.jsonl"
    code = main(
        ["augment", "--input", str(corpus_file), "--output", str(second), "--seed", "9"]
    )
    assert code == 0
    assert first.read_bytes() == second.read_bytes()
    assert (
        first.with_name("aug.skips.jsonl").read_bytes()
        == second.with_name("aug.skips.jsonl").read_bytes()
    )


def test_seed_changes_the_output(tmp_path, corpus_file):
    _, first = run_augment(tmp_path, corpus_file, "--seed", "0")
    second = tmp_path / "outb" / "aug.jsonl"
    main(["augment", "--input", str(corpus_file), "--output", str(second), "--seed", "1"])
    assert first.read_bytes() != second.read_bytes()


def test_generator_subset_flag(tmp_path, corpus_file):
    code, out = run_augment(tmp_path, corpus_file, "--generators", "mdeeg")
    assert code == 0
    records = load_augmented(out)
    assert {r.generator.value for r in records} == {"MDEEG"}
    assert len(records) == 3


def test_tsv_input_format(tmp_path):
    tsv = tmp_path / "c.tsv"
    tsv.write_text(f"a\tpos\t{ZERO_SKIP_TEXT}\n", encoding="utf-8")
    out = tmp_path / "aug.jsonl"
    code = main(["augment", "--input", str(tsv), "--output", str(out), "--format", "tsv"])
    assert code == 0
    assert len(load_augmented(out)) == 6


def test_unknown_generator_is_a_config_error(tmp_path, corpus_file, capsys):
    code, _ = run_augment(tmp_path, corpus_file, "--generators", "speg,nope")
    assert code == 1
    assert "unknown generator" in capsys.readouterr().err


def test_missing_input_file_is_a_data_error(tmp_path, capsys):
    out = tmp_path / "aug.jsonl"
    code = main(["augment", "--input", str(tmp_path / "ghost.jsonl"), "--output", str(out)])
    assert code == 2


def test_malformed_corpus_is_a_data_error(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("not json\n", encoding="utf-8")
    out = tmp_path / "aug.jsonl"
    code = main(["augment", "--input", str(bad), "--output", str(out)])
    assert code == 2
    assert "data error" in capsys.readouterr().err


def test_missing_required_flag_is_a_usage_error(capsys):
    assert main(["augment"]) == 1


def test_unreachable_embedder_degrades_to_skip_records(tmp_path, corpus_file):
    code, out = run_augment(
        tmp_path, corpus_file, "--embedder", "http://127.0.0.1:9/embed"
    )
    assert code == 0
    skips = list(iter_skips(out.with_name("aug.skips.jsonl")))
    assert any(s.reason == "provider_error_fallback_unavailable" for s in skips)
    # word-order generators keep working without embeddings
    records = load_augmented(out)
    assert any(r.generator.value == "IREG" for r in records)


def test_env_var_configures_the_seed(tmp_path, corpus_file, monkeypatch):
    _, by_flag = run_augment(tmp_path, corpus_file, "--seed", "5")
    monkeypatch.setenv("SCDA_AUGMENT_SEED", "5")
    by_env = tmp_path / "env" / "aug.jsonl"
    code = main(["augment", "--input", str(corpus_file), "--output", str(by_env)])
    assert code == 0
    assert by_flag.read_bytes() == by_env.read_bytes()


def test_stats_renders_the_table(tmp_path, corpus_file, capsys):
    _, out = run_augment(tmp_path, corpus_file)
    report = tmp_path / "stats.json"
    code = main(
        [
            "stats",
            "--input",
            str(corpus_file),
            "--augmented",
            str(out),
            "--output",
            str(report),
        ]
    )
    assert code == 0
    table = capsys.readouterr().out
    assert "generator" in table
    assert "MDEEG" in table and "0.4868" in table
    payload = json.loads(report.read_text())
    assert payload["reference"]["MDEEG"] == {"mean": 0.4868, "std": 0.0417}
    assert set(payload["generators"]) <= {g for g in ("SPEG", "HMEG", "EEEG", "IREG", "DEG", "MDEEG")}


def test_stats_rejects_orphan_records(tmp_path, corpus_file, capsys):
    _, out = run_augment(tmp_path, corpus_file)
    partial = tmp_path / "partial.jsonl"
    partial.write_text(
        '{"id":"a","text":"服务员上菜拖泥带水，为这盘辣菜来个战歌","label":"pos"}\n',
        encoding="utf-8",
    )
    code = main(["stats", "--input", str(partial), "--augmented", str(out)])
    assert code == 2
    assert "unknown ids" in capsys.readouterr().err


def test_stats_with_unreachable_embedder_is_a_provider_failure(tmp_path, corpus_file, capsys):
    _, out = run_augment(tmp_path, corpus_file)
    code = main(
        [
            "stats",
            "--input",
            str(corpus_file),
            "--augmented",
            str(out),
            "--embedder",
            "http://127.0.0.1:9/embed",
        ]
    )
    assert code == 3
    assert "provider error" in capsys.readouterr().err


def test_verify_passes_on_clean_output(tmp_path, corpus_file, capsys):
    _, out = run_augment(tmp_path, corpus_file)
    report = tmp_path / "verify.json"
    code = main(
        [
            "verify",
            "--augmented",
            str(out),
            "--input",
            str(corpus_file),
            "--output",
            str(report),
        ]
    )
    assert code == 0
    assert "0 failed" in capsys.readouterr().out
    payload = json.loads(report.read_text())
    assert payload["failed"] == 0
    assert payload["checked"] == payload["passed"] > 0


def test_verify_catches_tampering(tmp_path, corpus_file, capsys):
    _, out = run_augment(tmp_path, corpus_file)
    lines = out.read_text(encoding="utf-8").splitlines()
    tampered = []
    for line in lines:
        obj = json.loads(line)
        if obj["generator"] == "IREG":
            obj["text"] = obj["text"] + "尾"
        tampered.append(json.dumps(obj, ensure_ascii=False))
    out.write_text("\n".join(tampered) + "\n", encoding="utf-8")
    code = main(["verify", "--augmented", str(out)])
    assert code == 2


def test_prep_cleans_and_formats(tmp_path, capsys):
    pairs = [
        {"theme": "菜品质量", "content": "这家店的菜" + "很好吃" * 35},
        {"theme": "菜品质量", "content": "这家店的菜" + "很好吃" * 35},  # duplicate
        {"theme": "服务态度", "content": "太短"},  # short content
        {"theme": "短", "content": "服务" + "员很热情" * 30},  # short theme
        {"theme": "环境不错", "content": "环境" + "超级安静" * 30},
    ]
    src = tmp_path / "pairs.jsonl"
    src.write_text(
        "".join(json.dumps(p, ensure_ascii=False) + "\n" for p in pairs), encoding="utf-8"
    )
    stream_path = tmp_path / "stream.txt"
    report_path = tmp_path / "prep.json"
    code = main(
        ["prep", "--input", str(src), "--output", str(stream_path), "--report", str(report_path)]
    )
    assert code == 0
    stdout = capsys.readouterr().out
    assert json.loads(stdout) == {
        "kept": 2,
        "dropped": {"dup": 1, "short_content": 1, "short_theme": 1},
    }
    stream = stream_path.read_text(encoding="utf-8")
    assert stream.endswith("[EOS]")
    assert stream.count("[SEP]") == 2
    assert json.loads(report_path.read_text())["kept"] == 2


def test_prep_custom_markers(tmp_path):
    src = tmp_path / "pairs.jsonl"
    src.write_text(
        json.dumps({"theme": "主题词", "content": "内" * 120}, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    stream_path = tmp_path / "stream.txt"
    code = main(
        ["prep", "--input", str(src), "--output", str(stream_path), "--sep", "#S#", "--eos", "#E#"]
    )
    assert code == 0
    assert stream_path.read_text(encoding="utf-8") == "内" * 120 + "#S#主题词#E#"


def test_prep_with_everything_dropped_is_a_data_error(tmp_path, capsys):
    src = tmp_path / "pairs.jsonl"
    src.write_text(json.dumps({"theme": "短", "content": "小"}) + "\n", encoding="utf-8")
    code = main(["prep", "--input", str(src), "--output", str(tmp_path / "s.txt")])
    assert code == 2
    assert "dropped every pair" in capsys.readouterr().err
