"""Word-list loading, merging and membership."""

from __future__ import annotations

import io

import pytest

from spellkit.errors import LexiconFormatError
from spellkit.lexicon import (
    build_from_corpus,
    contains,
    from_words,
    load_lexicon,
    merge,
    save_lexicon,
)

from props import prop_lexicon_union


class TestLoad:
    def test_basic_list(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("مایع\nتوده\n\n# comment\nمایع\n", encoding="utf-8")
        lex = load_lexicon(path, source="general")
        assert len(lex) == 2
        assert "مایع" in lex and "توده" in lex
        assert lex.source_counts == {"general": 2}

    def test_entries_normalized_on_load(self):
        # Arabic yeh/kaf variants fold into Persian forms
        lex = load_lexicon(io.BytesIO("علي\nكتاب\n".encode()), source="s")
        assert "علی" in lex
        assert "کتاب" in lex
        assert "علي" not in lex

    def test_invalid_utf8_reports_line(self):
        stream = io.BytesIO("اب\n".encode() + b"\xff\xfe\n")
        with pytest.raises(LexiconFormatError) as err:
            load_lexicon(stream)
        assert err.value.line_number == 2

    def test_save_roundtrip_sorted(self, tmp_path):
        lex = from_words(["ب", "ا", "ج"])
        path = tmp_path / "out.txt"
        save_lexicon(lex, path)
        assert path.read_text(encoding="utf-8") == "ا\nب\nج\n"
        assert load_lexicon(path).entries == lex.entries


class TestMerge:
    def test_union_no_duplicates(self):
        general = from_words(["مایع", "توده"], source="general")
        special = from_words(["توده", "اینتراداکتال"], source="clinical")
        merged = merge(general, special)
        assert merged.entries == {"مایع", "توده", "اینتراداکتال"}
        assert merged.source_counts == {"general": 2, "clinical": 2}

    def test_membership_follows_union(self):
        a = from_words(["اب"])
        b = from_words(["جد"])
        merged = merge(a, b)
        assert contains(merged, "اب") and contains(merged, "جد")
        assert not contains(merged, "ابجد")

    def test_union_property(self):
        prop_lexicon_union()


class TestBuildFromCorpus:
    def test_distinct_normalized_tokens(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("مایع مشاهده نشد. مایع در كبد!", encoding="utf-8")
        lex = build_from_corpus(path)
        assert lex.entries == {"مایع", "مشاهده", "نشد", "در", "کبد"}

    def test_invalid_utf8_rejected(self):
        with pytest.raises(LexiconFormatError):
            build_from_corpus(io.BytesIO(b"\xff\xfe"))
