from collections import Counter

import numpy as np
import pytest

from verseval.corpus import Verse
from verseval.errors import MetricError
from verseval.ngrams import (
    NgramTable,
    TokenSequence,
    extract_topk,
    load_stopwords,
    sentiment_topk,
    tokenize,
)

from helpers import make_set


def verse(text, chapter=1, index=1):
    return Verse("t", chapter, index, text)


class TestTokenize:
    def test_stopword_removal(self):
        seq = tokenize(verse("The cat sat on the mat"), frozenset({"the", "on"}))
        assert seq.tokens == ("cat", "sat", "mat")

    def test_punctuation_only(self):
        assert tokenize(verse("!!!")).tokens == ()

    def test_hyphen_splits_apostrophe_kept(self):
        seq = tokenize(verse("Ah-Q's quilt"))
        assert seq.tokens == ("ah", "q's", "quilt")

    def test_lowercasing_merges_case_variants(self):
        seq = tokenize(verse("Fake fake FAKE"))
        assert seq.tokens == ("fake",) * 3

    def test_typographic_apostrophe(self):
        seq = tokenize(verse("don’t stop"))
        assert seq.tokens == ("don’t", "stop")

    def test_key_carried(self):
        seq = tokenize(verse("a b", chapter=3, index=7))
        assert seq.key == (3, 7)


class TestStopwords:
    def test_bundled_list(self):
        words = load_stopwords()
        assert "the" in words and "and" in words
        assert "devil" not in words

    def test_file_with_comments(self, tmp_path):
        p = tmp_path / "stop.txt"
        p.write_text("# comment\nfoo\nBAR  # trailing\n\n", encoding="utf-8")
        assert load_stopwords(p) == {"foo", "bar"}


def seqs(*token_lists):
    return [
        TokenSequence(key=(1, i), tokens=tuple(tokens))
        for i, tokens in enumerate(token_lists, start=1)
    ]


class TestExtractTopk:
    def test_window_enumeration(self):
        table = extract_topk(seqs(["cat", "sat", "mat"]), 2, 10)
        assert dict(table.entries) == {("cat", "sat"): 1, ("sat", "mat"): 1}

    def test_short_verse_contributes_nothing(self):
        table = extract_topk(seqs(["lonely"]), 2, 10)
        assert table.entries == ()

    def test_count_accumulation(self):
        table = extract_topk(seqs(["foreign", "devil"], ["foreign", "devil"]), 2, 1)
        assert table.entries == ((("foreign", "devil"), 2),)

    def test_tie_broken_lexicographically(self):
        table = extract_topk(seqs(["b", "a"], ["a", "b"]), 2, 2)
        assert table.entries == ((("a", "b"), 1), (("b", "a"), 1))

    def test_windows_do_not_cross_verses(self):
        table = extract_topk(seqs(["a", "b"], ["c", "d"]), 2, 10)
        assert ("b", "c") not in dict(table.entries)

    def test_invalid_n(self):
        with pytest.raises(MetricError):
            extract_topk(seqs(["a", "b"]), 4, 1)

    def test_invalid_k(self):
        with pytest.raises(MetricError):
            extract_topk(seqs(["a", "b"]), 2, 0)

    def test_trigrams(self):
        table = extract_topk(seqs(["fake", "foreign", "devil", "temple"]), 3, 10)
        assert dict(table.entries) == {
            ("fake", "foreign", "devil"): 1,
            ("foreign", "devil", "temple"): 1,
        }


class TestSentimentTopk:
    def test_no_verse_carries_label(self):
        ann = make_set("t", [[{"sad"}]])
        table = sentiment_topk(seqs(["a", "b"]), ann, "joking", 2, 5)
        assert table.entries == ()
        assert table.condition == "joking"

    def test_restriction_then_enumeration(self):
        ann = make_set("t", [[{"joking"}, {"sad"}]])
        sequences = seqs(["fake", "foreign", "devil"], ["foreign", "devil", "temple"])
        table = sentiment_topk(sequences, ann, "joking", 3, 5)
        assert table.entries == ((("fake", "foreign", "devil"), 1),)

    def test_label_on_all_verses_is_identity(self):
        ann = make_set("t", [[{"annoyed"}, {"annoyed"}]])
        sequences = seqs(["a", "b", "a"], ["a", "b"])
        assert sentiment_topk(sequences, ann, "annoyed", 2, 10).entries == \
            extract_topk(sequences, 2, 10).entries

    def test_unknown_label(self):
        ann = make_set("t", [[set()]])
        with pytest.raises(Exception, match="unknown"):
            sentiment_topk(seqs(["a", "b"]), ann, "irony", 2, 5)


def random_sequences(rng, n_verses, vocab_size=12):
    vocab = [f"w{j}" for j in range(vocab_size)]
    out = []
    for i in range(n_verses):
        length = int(rng.integers(0, 9))
        out.append(TokenSequence(
            key=(1, i + 1),
            tokens=tuple(rng.choice(vocab, size=length)),
        ))
    return out


class TestProperties:
    def test_total_window_count(self):
        rng = np.random.default_rng(21)
        sequences = random_sequences(rng, 120)
        for n in (2, 3):
            table = extract_topk(sequences, n, 10**6)
            total = sum(c for _, c in table.entries)
            assert total == sum(max(0, len(s.tokens) - n + 1) for s in sequences)

    def test_brute_force_oracle(self):
        rng = np.random.default_rng(22)
        sequences = random_sequences(rng, 300)
        for n in (2, 3):
            oracle = Counter()
            for s in sequences:
                for i in range(len(s.tokens) - n + 1):
                    oracle[tuple(s.tokens[i : i + n])] += 1
            expected = sorted(oracle.items(), key=lambda kv: (-kv[1], kv[0]))[:10]
            assert list(extract_topk(sequences, n, 10).entries) == expected

    def test_conditioned_counts_bounded(self):
        rng = np.random.default_rng(23)
        sequences = random_sequences(rng, 80)
        labels = [{"sad"} if rng.random() < 0.5 else set() for _ in sequences]
        ann = make_set("t", [labels])
        full = dict(extract_topk(sequences, 2, 10**6).entries)
        conditioned = sentiment_topk(sequences, ann, "sad", 2, 10**6)
        for gram, count in conditioned.entries:
            assert count <= full[gram]
