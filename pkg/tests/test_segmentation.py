import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scda.errors import ConfigError, ProviderError
from scda.segmentation import (
    LexiconSegmenter,
    PosTaggedToken,
    load_lexicon,
    tag_tokens,
)

LEXICON = {
    "服务员": "noun",
    "服务": "noun",
    "员": "noun",
    "上菜": "verb",
    "菜": "noun",
    "拖泥带水": "idiom",
    "辣": "adjective",
}


@pytest.fixture()
def seg():
    return LexiconSegmenter(LEXICON)


def surfaces(tokens):
    return [(t.surface, t.pos) for t in tokens]


def test_longest_match_wins(seg):
    toks = seg.tokens("服务员服务")
    assert surfaces(toks) == [("服务员", "noun"), ("服务", "noun")]


def test_tokens_tile_the_text_with_correct_offsets(seg):
    text = "辣菜 abc 拖泥带水"
    toks = seg.tokens(text)
    assert "".join(t.surface for t in toks) == text
    cursor = 0
    for t in toks:
        assert t.start == cursor
        assert t.end == cursor + len(t.surface)
        cursor = t.end


def test_unknown_ascii_run_is_one_token(seg):
    toks = seg.tokens("hello42 世界")
    assert surfaces(toks)[0] == ("hello42", "other")
    assert ("世", "other") in surfaces(toks)


def test_whitespace_run_collapses_to_one_token(seg):
    toks = seg.tokens("辣  \t 菜")
    kinds = surfaces(toks)
    assert kinds == [("辣", "adjective"), ("  \t ", "other"), ("菜", "noun")]


# alphabet mixes lexicon surfaces, unknown hanzi, ascii and spaces
_chunk = st.sampled_from(
    list(LEXICON) + ["好", "了", "x", "abc", " ", "，"]
)


@given(st.lists(_chunk, min_size=1, max_size=12).map("".join))
@settings(max_examples=200, deadline=None)
def test_any_text_reconstructs_exactly(text):
    toks = tag_tokens(text, LexiconSegmenter(LEXICON))
    assert "".join(t.surface for t in toks) == text


def test_tag_tokens_rejects_empty_text(seg):
    with pytest.raises(ValueError):
        tag_tokens("", seg)


def test_provider_failures_carry_the_segmenter_name():
    class Exploding:
        name = "boom-seg"

        def tokens(self, text):
            raise RuntimeError("tagger crashed")

    with pytest.raises(ProviderError, match="boom-seg"):
        tag_tokens("x", Exploding())


def test_non_tiling_segmenter_is_rejected():
    class Lossy:
        name = "lossy"

        def tokens(self, text):
            return [PosTaggedToken(text[:1], "other", 0, 1)]

    with pytest.raises(ProviderError, match="reconstruct"):
        tag_tokens("ab", Lossy())


def test_token_validation():
    with pytest.raises(ValueError):
        PosTaggedToken("x", "adverb", 0, 1)
    with pytest.raises(ValueError):
        PosTaggedToken("xy", "noun", 0, 1)


def test_lexicon_loader(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("# comment\n服务员\tnoun\n\n辣\tadjective\n", encoding="utf-8")
    assert load_lexicon(path) == {"服务员": "noun", "辣": "adjective"}


@pytest.mark.parametrize("body", ["服务员\n", "服务员\tnoun\textra\n", "好\tadverb\n", ""])
def test_lexicon_loader_rejects_bad_rows(tmp_path, body):
    path = tmp_path / "lex.tsv"
    path.write_text(body, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_lexicon(path)


def test_segmenter_requires_a_lexicon():
    with pytest.raises(ConfigError):
        LexiconSegmenter({})
