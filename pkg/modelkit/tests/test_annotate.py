import json

import numpy as np
import pytest

from modelkit import HashingEmbedder, annotate_corpus, load_embedder, read_corpus
from modelkit.corpusio import CorpusFormatError
from modelkit.polarity import lexicon_polarity


class TestHashingEmbedder:
    def test_unit_norm(self):
        vectors = HashingEmbedder(64).encode(["one two three", "four"])
        np.testing.assert_allclose(np.linalg.norm(vectors, axis=1), 1.0, atol=1e-12)

    def test_deterministic_across_instances(self):
        a = HashingEmbedder(32).encode(["the village gate"])
        b = HashingEmbedder(32).encode(["the village gate"])
        np.testing.assert_array_equal(a, b)

    def test_punctuation_only_text_nonzero(self):
        vectors = HashingEmbedder(16).encode(["?!"])
        assert np.linalg.norm(vectors[0]) == pytest.approx(1.0)

    def test_different_texts_differ(self):
        v = HashingEmbedder(128).encode(["a calm morning", "a furious storm"])
        assert abs(float(v[0] @ v[1])) < 0.99

    def test_loader_parses_dimension(self):
        assert load_embedder("hash:48").dimension == 48


class TestPolarity:
    def test_range(self):
        assert -1.0 <= lexicon_polarity("terrible awful horrible misery") <= 1.0

    def test_signs(self):
        assert lexicon_polarity("a happy wonderful day") > 0
        assert lexicon_polarity("a sad terrible defeat") < 0
        assert lexicon_polarity("neutral words only here") == 0.0


class TestReadCorpus:
    def test_single_file_with_delimiters(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("### CHAPTER 1\na\nb\n### CHAPTER 2\nc\n", encoding="utf-8")
        assert read_corpus(p) == [["a", "b"], ["c"]]

    def test_directory_layout(self, tmp_path):
        (tmp_path / "chapter01.txt").write_text("a\n", encoding="utf-8")
        (tmp_path / "chapter02.txt").write_text("b\nc\n", encoding="utf-8")
        assert read_corpus(tmp_path) == [["a"], ["b", "c"]]

    def test_plain_file_is_one_chapter(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("a\nb\n", encoding="utf-8")
        assert read_corpus(p) == [["a", "b"]]

    def test_empty_corpus_rejected(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("\n\n", encoding="utf-8")
        with pytest.raises(CorpusFormatError):
            read_corpus(p)


class TestAnnotateCorpus:
    @pytest.fixture
    def corpus_file(self, tmp_path):
        p = tmp_path / "sample.txt"
        p.write_text(
            "### CHAPTER 1\nA happy festival opened the spring.\n"
            "The wretched defeat was terrible.\n"
            "### CHAPTER 2\nPlain words with no valence.\n",
            encoding="utf-8",
        )
        return p

    def test_emits_header_and_ordered_records(self, tiny_artifact, corpus_file, tmp_path):
        out = tmp_path / "out.jsonl"
        annotate_corpus(tiny_artifact, "hash:32", corpus_file, out, threshold=0.4)
        lines = out.read_text().splitlines()
        header = json.loads(lines[0])
        assert header == {"format_version": "1", "threshold": 0.4,
                          "dimension": 32, "normalized": True}
        records = [json.loads(ln) for ln in lines[1:]]
        assert [(r["chapter"], r["index"]) for r in records] == [(1, 1), (1, 2), (2, 1)]
        assert all(r["translation_id"] == "sample" for r in records)

    def test_probs_and_embeddings_well_formed(self, tiny_artifact, corpus_file, tmp_path):
        out = tmp_path / "out.jsonl"
        annotate_corpus(tiny_artifact, "hash:32", corpus_file, out)
        for line in out.read_text().splitlines()[1:]:
            record = json.loads(line)
            assert len(record["probs"]) == 9
            assert all(0.0 <= p <= 1.0 for p in record["probs"])
            norm = float(np.linalg.norm(record["embedding"]))
            assert abs(norm - 1.0) <= 1e-6

    def test_polarity_signs_follow_lexicon(self, tiny_artifact, corpus_file, tmp_path):
        out = tmp_path / "out.jsonl"
        annotate_corpus(tiny_artifact, "hash:16", corpus_file, out)
        records = [json.loads(ln) for ln in out.read_text().splitlines()[1:]]
        assert records[0]["polarity"] > 0
        assert records[1]["polarity"] < 0
        assert records[2]["polarity"] == 0.0

    def test_polarity_can_be_disabled(self, tiny_artifact, corpus_file, tmp_path):
        out = tmp_path / "out.jsonl"
        annotate_corpus(tiny_artifact, "hash:16", corpus_file, out, include_polarity=False)
        records = [json.loads(ln) for ln in out.read_text().splitlines()[1:]]
        assert all("polarity" not in r for r in records)

    def test_threshold_validated(self, tiny_artifact, corpus_file, tmp_path):
        with pytest.raises(ValueError, match="threshold"):
            annotate_corpus(tiny_artifact, "hash:16", corpus_file,
                            tmp_path / "x.jsonl", threshold=1.5)
