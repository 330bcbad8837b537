"""Distance kernel, edit-type classification and candidate generation.

The distance oracle below is a direct memoized transcription of the
restricted Damerau-Levenshtein recurrence over string prefixes, kept
deliberately independent of the rolling-row kernels.  The classification
oracle enumerates minimal scripts without the greedy prefix shortcut the
implementation uses.
"""

from __future__ import annotations

import itertools
import sys
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spellkit.editops import (
    Candidate,
    CandidateIndex,
    EditType,
    PackedLexicon,
    classify_edit,
    full_scan_candidates,
    generate_candidates,
    lexicon_hash,
    osa_distance,
    osa_distance_bounded,
)
from spellkit.errors import ContractViolation
from spellkit.lexicon import from_words

FA = "ابجدهو"


@lru_cache(maxsize=None)
def osa_oracle(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    best = min(
        osa_oracle(a[:-1], b) + 1,
        osa_oracle(a, b[:-1]) + 1,
        osa_oracle(a[:-1], b[:-1]) + (a[-1] != b[-1]),
    )
    if len(a) >= 2 and len(b) >= 2 and a[-1] == b[-2] and a[-2] == b[-1]:
        best = min(best, osa_oracle(a[:-2], b[:-2]) + 1)
    return best


@lru_cache(maxsize=None)
def type_sets_oracle(a: str, b: str) -> frozenset[frozenset[str]]:
    """Operation-type sets over all minimal scripts, suffix recursion."""
    if not a and not b:
        return frozenset({frozenset()})
    best = osa_oracle(a, b)
    out: set[frozenset[str]] = set()
    if a and b and a[-1] == b[-1] and osa_oracle(a[:-1], b[:-1]) == best:
        out |= type_sets_oracle(a[:-1], b[:-1])
    if a and b and a[-1] != b[-1] and osa_oracle(a[:-1], b[:-1]) + 1 == best:
        out |= {s | {"substitution"} for s in type_sets_oracle(a[:-1], b[:-1])}
    if a and osa_oracle(a[:-1], b) + 1 == best:
        out |= {s | {"deletion"} for s in type_sets_oracle(a[:-1], b)}
    if b and osa_oracle(a, b[:-1]) + 1 == best:
        out |= {s | {"insertion"} for s in type_sets_oracle(a, b[:-1])}
    if (
        len(a) >= 2
        and len(b) >= 2
        and a[-1] == b[-2]
        and a[-2] == b[-1]
        and osa_oracle(a[:-2], b[:-2]) + 1 == best
    ):
        out |= {s | {"transposition"} for s in type_sets_oracle(a[:-2], b[:-2])}
    return frozenset(out)


def classify_oracle(a: str, b: str) -> EditType:
    homogeneous = {next(iter(s)) for s in type_sets_oracle(a, b) if len(s) == 1}
    for etype in (
        EditType.SUBSTITUTION,
        EditType.TRANSPOSITION,
        EditType.INSERTION,
        EditType.DELETION,
    ):
        if etype.value in homogeneous:
            return etype
    return EditType.MIXED


def all_strings(alphabet: str, max_len: int) -> list[str]:
    out = [""]
    for n in range(1, max_len + 1):
        out.extend("".join(p) for p in itertools.product(alphabet, repeat=n))
    return out


class TestDistance:
    def test_transposition_plus_insertion_worked_example(self):
        assert osa_distance("KC", "CKE") == 2

    def test_substring_never_edited_twice(self):
        # unrestricted Damerau-Levenshtein would give 2 here
        assert osa_distance("CA", "ABC") == 3

    def test_empty_and_identity(self):
        assert osa_distance("", "") == 0
        assert osa_distance("", "ابج") == 3
        assert osa_distance("ابج", "") == 3
        assert osa_distance("ابج", "ابج") == 0

    def test_single_operations(self):
        assert osa_distance("مایع", "مایغ") == 1  # substitution
        assert osa_distance("مایع", "مایعه") == 1  # insertion
        assert osa_distance("مایع", "ماع") == 1  # deletion
        assert osa_distance("مایع", "امیع") == 1  # adjacent transposition

    def test_matches_oracle_exhaustively_small(self):
        strings = all_strings("ابج", 3)
        for a in strings:
            for b in strings:
                assert osa_distance(a, b) == osa_oracle(a, b), (a, b)

    @given(
        st.text(alphabet=FA[:5], max_size=8),
        st.text(alphabet=FA[:5], max_size=8),
    )
    @settings(max_examples=500)
    def test_matches_oracle_random(self, a, b):
        assert osa_distance(a, b) == osa_oracle(a, b)

    @given(
        st.text(alphabet=FA[:4], max_size=6),
        st.text(alphabet=FA[:4], max_size=6),
        st.integers(0, 4),
    )
    @settings(max_examples=500)
    def test_bounded_agrees_with_exact(self, a, b, max_dist):
        full = osa_distance(a, b)
        bounded = osa_distance_bounded(a, b, max_dist)
        if full <= max_dist:
            assert bounded == full
        else:
            assert bounded == max_dist + 1

    def test_supplementary_plane_codepoints(self):
        assert osa_distance("a\U0001F600b", "ab") == 1


class TestClassify:
    def test_single_edit_fixtures(self):
        assert classify_edit("مایغ", "مایع") == EditType.SUBSTITUTION
        assert classify_edit("مایع", "مایعه") == EditType.INSERTION
        assert classify_edit("مایع", "ماع") == EditType.DELETION
        assert classify_edit("مایع", "امیع") == EditType.TRANSPOSITION

    def test_homogeneous_type_wins_over_mixed_script(self):
        # two substitutions reach it; so does transpose+substitute
        assert classify_edit("اب", "بج") == EditType.SUBSTITUTION

    def test_mixed_when_no_single_type_script(self):
        assert classify_edit("ابج", "جاب") == EditType.MIXED

    def test_double_single_type_edits(self):
        assert classify_edit("ابجد", "ابهو") == EditType.SUBSTITUTION
        assert classify_edit("ابجد", "باجد") == EditType.TRANSPOSITION
        assert classify_edit("اب", "ابجد") == EditType.INSERTION
        assert classify_edit("ابجد", "اب") == EditType.DELETION

    def test_rejects_distance_zero_and_three(self):
        with pytest.raises(ContractViolation):
            classify_edit("اب", "اب")
        with pytest.raises(ContractViolation):
            classify_edit("ابج", "دهو")

    def test_matches_enumeration_oracle_exhaustively(self):
        strings = all_strings("ابج", 3)
        checked = 0
        for a in strings:
            for b in strings:
                if 1 <= osa_oracle(a, b) <= 2:
                    assert classify_edit(a, b) == classify_oracle(a, b), (a, b)
                    checked += 1
        assert checked > 500

    @given(
        st.text(alphabet=FA[:4], min_size=1, max_size=5),
        st.text(alphabet=FA[:4], min_size=1, max_size=5),
    )
    @settings(max_examples=500)
    def test_matches_enumeration_oracle_random(self, a, b):
        if 1 <= osa_oracle(a, b) <= 2:
            assert classify_edit(a, b) == classify_oracle(a, b)


def _random_words(rng, n, lengths=(3, 8), alphabet=FA):
    words = set()
    while len(words) < n:
        ln = int(rng.integers(lengths[0], lengths[1] + 1))
        words.add("".join(alphabet[i] for i in rng.integers(0, len(alphabet), ln)))
    return sorted(words)


class TestCandidates:
    def test_index_equals_full_scan(self):
        rng = np.random.default_rng(np.random.PCG64(3))
        words = _random_words(rng, 400)
        lex = from_words(words)
        packed = PackedLexicon.build(lex)
        for max_dist in (1, 2):
            index = CandidateIndex(lex, max_dist=max_dist)
            for query in _random_words(rng, 40) + words[:40]:
                assert index.lookup(query) == full_scan_candidates(
                    query, packed, max_dist
                ), (query, max_dist)

    def test_query_excluded_and_sorted(self):
        lex = from_words(["ماست", "ماس", "مست", "است"])
        got = generate_candidates("ماست", lex, 2)
        assert "ماست" not in [c.word for c in got]
        keyed = [(c.distance, c.word) for c in got]
        assert keyed == sorted(keyed)

    def test_candidate_fields(self):
        lex = from_words(["مایع"])
        got = generate_candidates("مایغ", lex, 2)
        assert got == [
            Candidate(word="مایع", distance=1, edit_type=EditType.SUBSTITUTION)
        ]

    def test_max_dist_validated(self):
        lex = from_words(["اب"])
        with pytest.raises(ContractViolation):
            generate_candidates("اب", lex, 3)
        with pytest.raises(ContractViolation):
            CandidateIndex(lex, max_dist=0)

    def test_lookup_above_build_bound_rejected(self):
        index = CandidateIndex(from_words(["ابج"]), max_dist=1)
        with pytest.raises(ContractViolation):
            index.lookup("ابج", 2)

    def test_empty_lexicon(self):
        lex = from_words([])
        assert generate_candidates("اب", lex, 2) == []
        assert full_scan_candidates("اب", PackedLexicon.build(lex), 2) == []

    def test_index_save_load_roundtrip(self, tmp_path):
        rng = np.random.default_rng(np.random.PCG64(5))
        lex = from_words(_random_words(rng, 120))
        index = CandidateIndex(lex, max_dist=2)
        path = tmp_path / "index.bin"
        index.save(path)
        loaded = CandidateIndex.load(path, lex, max_dist=2)
        assert loaded.buckets == index.buckets
        assert loaded.lookup("ابجد") == index.lookup("ابجد")

    def test_stale_cache_rebuilt(self, tmp_path):
        lex_a = from_words(["ابج", "ابد"])
        lex_b = from_words(["ابج", "ابد", "اهو"])
        path = tmp_path / "index.bin"
        CandidateIndex(lex_a, max_dist=2).save(path)
        rebuilt = CandidateIndex.load(path, lex_b, max_dist=2)
        assert rebuilt.lookup("اهو") != []
        fresh = CandidateIndex(lex_b, max_dist=2)
        assert rebuilt.lookup("اهو") == fresh.lookup("اهو")

    def test_corrupt_cache_rebuilt(self, tmp_path):
        lex = from_words(["ابج"])
        path = tmp_path / "index.bin"
        path.write_bytes(b"not a pickle")
        rebuilt = CandidateIndex.load(path, lex, max_dist=2)
        assert rebuilt.lookup("ابد") == [("ابج", 1)]

    def test_lexicon_hash_distinguishes(self):
        assert lexicon_hash(from_words(["اب", "جد"])) != lexicon_hash(
            from_words(["ابجد"])
        )
        assert lexicon_hash(from_words(["اب"])) == lexicon_hash(from_words(["اب"]))


class TestPacked:
    def test_packed_layout_roundtrip(self):
        lex = from_words(["جد", "اب", "هوز"])
        packed = PackedLexicon.build(lex)
        assert packed.words == sorted(lex.entries)
        for w, s, ln in zip(packed.words, packed.starts, packed.lengths):
            assert "".join(chr(c) for c in packed.flat[s : s + ln]) == w
