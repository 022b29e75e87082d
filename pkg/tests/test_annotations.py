import json

import numpy as np
import pytest

from verseval.annotations import (
    LABELS,
    AnnotationSet,
    read_annotations,
    threshold_labels,
    validate_against_corpus,
)
from verseval.errors import AnnotationError
from verseval.report import write_annotations

from helpers import make_set, make_text, probs_for


class TestThresholdLabels:
    def test_all_below(self):
        assert threshold_labels([0.0] * 9, 0.5) == frozenset()

    def test_two_above(self):
        probs = probs_for({"sad", "joking"}, hi=0.9, lo=0.1)
        probs = list(probs)
        probs[LABELS.index("joking")] = 0.6
        assert threshold_labels(probs, 0.5) == {"sad", "joking"}

    def test_saturation(self):
        assert threshold_labels([1.0] * 9, 0.5) == set(LABELS)

    def test_boundary_inclusive(self):
        probs = [0.0] * 9
        probs[LABELS.index("annoyed")] = 0.5
        assert threshold_labels(probs, 0.5) == {"annoyed"}

    def test_elementwise(self):
        probs = [0.4, 0.2, 0.1, 0.7, 0.3, 0.6, 0.8, 0.1, 0.55]
        assert threshold_labels(probs, 0.5) == {"pessimistic", "sad", "annoyed", "joking"}

    def test_out_of_range_prob(self):
        with pytest.raises(AnnotationError, match="out of range"):
            threshold_labels([1.5] + [0.0] * 8, 0.5)

    def test_out_of_range_threshold(self):
        for bad in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(AnnotationError, match="threshold"):
                threshold_labels([0.5] * 9, bad)

    def test_wrong_arity(self):
        with pytest.raises(AnnotationError, match="9"):
            threshold_labels([0.5] * 8, 0.5)

    def test_monotone_in_threshold(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            probs = rng.uniform(0, 1, size=9).tolist()
            t1, t2 = sorted(rng.uniform(0.01, 0.99, size=2).tolist())
            assert threshold_labels(probs, t1) >= threshold_labels(probs, t2)

    def test_subset_of_universe(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            labels = threshold_labels(rng.uniform(0, 1, size=9).tolist(), 0.5)
            assert labels <= set(LABELS)


class TestInterchange:
    def test_write_read_round_trip(self, tmp_path):
        pol = [[0.25, None], [-0.5]]
        original = make_set("t", [[{"sad"}, set()], [{"joking", "annoyed"}]],
                            dim=6, polarities=pol)
        path = tmp_path / "ann.jsonl"
        write_annotations(original, path)
        loaded = read_annotations(path)
        assert loaded.translation_id == "t"
        assert loaded.threshold == original.threshold
        assert loaded.dimension == original.dimension
        assert set(loaded.entries) == set(original.entries)
        for key, ann in original.entries.items():
            got = loaded.entries[key]
            assert got.labels == ann.labels
            assert got.probs == pytest.approx(ann.probs, rel=1e-8)
            assert got.embedding == pytest.approx(ann.embedding, rel=1e-8)
            if ann.external_polarity is None:
                assert got.external_polarity is None
            else:
                assert got.external_polarity == pytest.approx(ann.external_polarity, rel=1e-8)

    def test_second_write_is_byte_identical(self, tmp_path):
        original = make_set("t", [[{"sad"}, {"joking"}]], dim=16)
        first = tmp_path / "a.jsonl"
        second = tmp_path / "b.jsonl"
        write_annotations(original, first)
        write_annotations(read_annotations(first), second)
        assert first.read_bytes() == second.read_bytes()

    def test_threshold_override_relabels(self, tmp_path):
        original = make_set("t", [[{"sad"}]])  # probs 0.9 / 0.1
        path = tmp_path / "ann.jsonl"
        write_annotations(original, path)
        loaded = read_annotations(path, threshold=0.05)
        assert loaded.threshold == 0.05
        assert loaded.entries[(1, 1)].labels == set(LABELS)

    def test_labels_recomputed_not_trusted(self, tmp_path):
        header = {"format_version": "1", "threshold": 0.5, "dimension": 2, "normalized": False}
        record = {
            "translation_id": "t", "chapter": 1, "index": 1,
            "probs": [0.9] + [0.0] * 8, "embedding": [1.0, 0.0],
            "labels": ["joking"],  # wrong on purpose; must be ignored
        }
        path = tmp_path / "ann.jsonl"
        path.write_text(json.dumps(header) + "\n" + json.dumps(record) + "\n")
        loaded = read_annotations(path)
        assert loaded.entries[(1, 1)].labels == {"optimistic"}

    def test_unnormalized_input_is_normalized(self, tmp_path):
        header = {"format_version": "1", "threshold": 0.5, "dimension": 2, "normalized": False}
        record = {"translation_id": "t", "chapter": 1, "index": 1,
                  "probs": [0.0] * 9, "embedding": [3.0, 4.0]}
        path = tmp_path / "ann.jsonl"
        path.write_text(json.dumps(header) + "\n" + json.dumps(record) + "\n")
        loaded = read_annotations(path)
        assert loaded.entries[(1, 1)].embedding == pytest.approx([0.6, 0.8])
        assert loaded.normalized


def _write_file(tmp_path, header, records):
    path = tmp_path / "ann.jsonl"
    lines = [json.dumps(header)] + [
        r if isinstance(r, str) else json.dumps(r) for r in records
    ]
    path.write_text("\n".join(lines) + "\n")
    return path


GOOD_HEADER = {"format_version": "1", "threshold": 0.5, "dimension": 3, "normalized": False}


def good_record(**overrides):
    record = {"translation_id": "t", "chapter": 1, "index": 1,
              "probs": [0.1] * 9, "embedding": [1.0, 2.0, 2.0]}
    record.update(overrides)
    return record


class TestReadErrors:
    def test_malformed_record(self, tmp_path):
        path = _write_file(tmp_path, GOOD_HEADER, ["{not json"])
        with pytest.raises(AnnotationError, match="malformed"):
            read_annotations(path)

    def test_probability_out_of_range(self, tmp_path):
        path = _write_file(tmp_path, GOOD_HEADER, [good_record(probs=[1.5] + [0.1] * 8)])
        with pytest.raises(AnnotationError, match=r"\(1,1\).*out of range"):
            read_annotations(path)

    def test_dimension_mismatch(self, tmp_path):
        path = _write_file(tmp_path, GOOD_HEADER, [good_record(embedding=[1.0, 2.0])])
        with pytest.raises(AnnotationError, match="dimension mismatch"):
            read_annotations(path)

    def test_duplicate_key(self, tmp_path):
        path = _write_file(tmp_path, GOOD_HEADER, [good_record(), good_record()])
        with pytest.raises(AnnotationError, match=r"duplicate.*\(1, 1\)"):
            read_annotations(path)

    def test_zero_vector(self, tmp_path):
        path = _write_file(tmp_path, GOOD_HEADER, [good_record(embedding=[0.0, 0.0, 0.0])])
        with pytest.raises(AnnotationError, match="zero vector"):
            read_annotations(path)

    def test_missing_header_field(self, tmp_path):
        header = {"format_version": "1", "threshold": 0.5, "dimension": 3}
        path = _write_file(tmp_path, header, [good_record()])
        with pytest.raises(AnnotationError, match="normalized"):
            read_annotations(path)

    def test_unsupported_version(self, tmp_path):
        header = dict(GOOD_HEADER, format_version="99")
        path = _write_file(tmp_path, header, [good_record()])
        with pytest.raises(AnnotationError, match="format_version"):
            read_annotations(path)

    def test_mixed_translation_ids(self, tmp_path):
        path = _write_file(tmp_path, GOOD_HEADER, [
            good_record(), good_record(translation_id="u", index=2),
        ])
        with pytest.raises(AnnotationError, match="mixed translation_ids"):
            read_annotations(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "ann.jsonl"
        path.write_text("")
        with pytest.raises(AnnotationError, match="empty"):
            read_annotations(path)

    def test_header_only(self, tmp_path):
        path = _write_file(tmp_path, GOOD_HEADER, [])
        with pytest.raises(AnnotationError, match="no records"):
            read_annotations(path)


class TestValidateAgainstCorpus:
    def test_complete_set(self):
        text = make_text("t", [2, 1])
        ann = make_set("t", [[set(), {"sad"}], [{"joking"}]])
        report = validate_against_corpus(ann, text)
        assert report.ok
        assert report.missing == () and report.extraneous == ()

    def test_missing_key(self):
        text = make_text("t", [1, 5])
        chapters = [[set()], [set(), set(), set(), set(), set()]]
        ann = make_set("t", chapters)
        del ann.entries[(2, 5)]
        report = validate_against_corpus(ann, text)
        assert report.missing == ((2, 5),)
        assert not report.ok
        assert "(2,5)" in report.describe()

    def test_extraneous_key(self):
        text = make_text("t", [1])
        ann = make_set("t", [[set()]])
        proto = ann.entries[(1, 1)]
        ann.entries[(10, 1)] = type(proto)(
            translation_id="t", chapter=10, index=1, probs=proto.probs,
            labels=proto.labels, embedding=proto.embedding,
        )
        report = validate_against_corpus(ann, text)
        assert report.extraneous == ((10, 1),)

    def test_translation_id_mismatch(self):
        text = make_text("a", [1])
        ann = make_set("b", [[set()]])
        with pytest.raises(AnnotationError, match="mismatch"):
            validate_against_corpus(ann, text)
