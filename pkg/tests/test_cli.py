import json
import shutil

import pytest

from verseval.cli import EXIT_CONFIG, EXIT_INPUT, EXIT_OK, main

from helpers import FIXTURE_DIR


def run_cli(*args):
    return main([str(a) for a in args])


@pytest.fixture
def fixture_copy(tmp_path):
    """Mutable copy of the bundled fixture for corruption tests."""
    dest = tmp_path / "fixture"
    shutil.copytree(FIXTURE_DIR, dest)
    return dest


def read_config(path):
    return json.loads((path / "config.json").read_text())


def write_config(path, cfg):
    (path / "config.json").write_text(json.dumps(cfg, indent=1))


class TestRun:
    def test_full_run(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = run_cli("--config", FIXTURE_DIR / "config.json", "--out", out, "--no-charts")
        assert code == EXIT_OK
        for name in ("jaccard_table.csv", "cosine_table.csv", "summary.json",
                     "similarity_most.csv", "similarity_least.csv", "manifest.json",
                     "ngrams_mtrans.csv", "corpus_price.txt", "warnings.txt"):
            assert (out / name).exists(), name
        summary = json.loads((out / "summary.json").read_text())
        assert summary["metadata"]["threshold"] == 0.5
        assert summary["metadata"]["alignment_policy"] == "strict"

    def test_charts_emitted_by_default(self, tmp_path):
        out = tmp_path / "out"
        assert run_cli("--config", FIXTURE_DIR / "config.json", "--out", out) == EXIT_OK
        assert (out / "cumulative_counts.svg").exists()
        assert (out / "heatmap_norton.svg").exists()

    def test_validate_only(self, capsys):
        code = run_cli("--config", FIXTURE_DIR / "config.json", "--validate-only")
        assert code == EXIT_OK
        assert "consistent" in capsys.readouterr().out

    def test_threshold_override_changes_labels(self, tmp_path):
        out_lo = tmp_path / "lo"
        out_hi = tmp_path / "hi"
        run_cli("--config", FIXTURE_DIR / "config.json", "--out", out_lo,
                "--threshold", "0.05", "--no-charts")
        run_cli("--config", FIXTURE_DIR / "config.json", "--out", out_hi,
                "--threshold", "0.95", "--no-charts")
        lo = json.loads((out_lo / "summary.json").read_text())
        hi = json.loads((out_hi / "summary.json").read_text())
        lo_total = sum(lo["translations"][0]["cumulative_counts"].values())
        hi_total = sum(hi["translations"][0]["cumulative_counts"].values())
        assert lo_total > hi_total


class TestExitCodes:
    def test_threshold_out_of_range(self, fixture_copy, capsys):
        code = run_cli("--config", fixture_copy / "config.json", "--threshold", "1.5")
        assert code == EXIT_CONFIG
        assert "threshold out of range" in capsys.readouterr().err

    def test_missing_config(self, tmp_path, capsys):
        assert run_cli("--config", tmp_path / "nope.json") == EXIT_CONFIG

    def test_malformed_config(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        assert run_cli("--config", p) == EXIT_CONFIG

    def test_single_translation_config(self, fixture_copy, capsys):
        cfg = read_config(fixture_copy)
        cfg["translations"] = cfg["translations"][:1]
        write_config(fixture_copy, cfg)
        assert run_cli("--config", fixture_copy / "config.json") == EXIT_CONFIG
        assert "at least 2" in capsys.readouterr().err

    def test_missing_annotation_record(self, fixture_copy, capsys):
        ann = fixture_copy / "annotations" / "norton.jsonl"
        lines = ann.read_text().splitlines()
        kept = [ln for ln in lines if '"chapter": 2, "index": 5,' not in ln]
        assert len(kept) == len(lines) - 1
        ann.write_text("\n".join(kept) + "\n")
        code = run_cli("--config", fixture_copy / "config.json", "--validate-only")
        assert code == EXIT_INPUT
        assert "(2,5)" in capsys.readouterr().err

    def test_chapter_count_mismatch(self, fixture_copy, capsys):
        corpus = fixture_copy / "translations" / "price.txt"
        text = corpus.read_text()
        corpus.write_text(text.split("### CHAPTER 9")[0])
        # drop chapter 9 annotations so the per-translation validation passes
        ann = fixture_copy / "annotations" / "price.jsonl"
        kept = [ln for ln in ann.read_text().splitlines() if '"chapter": 9,' not in ln]
        ann.write_text("\n".join(kept) + "\n")
        code = run_cli("--config", fixture_copy / "config.json")
        assert code == EXIT_INPUT
        assert "chapter-count mismatch" in capsys.readouterr().err

    def test_out_of_range_probability(self, fixture_copy, capsys):
        ann = fixture_copy / "annotations" / "mtrans.jsonl"
        lines = ann.read_text().splitlines()
        lines[3] = lines[3].replace('"probs": [0.', '"probs": [7.', 1)
        ann.write_text("\n".join(lines) + "\n")
        code = run_cli("--config", fixture_copy / "config.json", "--validate-only")
        assert code == EXIT_INPUT
        assert "out of range" in capsys.readouterr().err

    def test_dimension_mismatch(self, fixture_copy, capsys):
        ann = fixture_copy / "annotations" / "price.jsonl"
        lines = ann.read_text().splitlines()
        record = json.loads(lines[1])
        record["embedding"] = record["embedding"][:-1]
        lines[1] = json.dumps(record)
        ann.write_text("\n".join(lines) + "\n")
        code = run_cli("--config", fixture_copy / "config.json", "--validate-only")
        assert code == EXIT_INPUT
        assert "dimension mismatch" in capsys.readouterr().err


class TestAlignmentPolicies:
    def test_truncate_warns(self, fixture_copy, tmp_path, capsys):
        # remove the last verse of chapter 1 from one translation only
        corpus = fixture_copy / "translations" / "mtrans.txt"
        lines = corpus.read_text().splitlines()
        end = lines.index("### CHAPTER 2")
        cut = next(i for i in range(end - 1, -1, -1) if lines[i].strip())
        del lines[cut]
        corpus.write_text("\n".join(lines) + "\n")
        ann = fixture_copy / "annotations" / "mtrans.jsonl"
        kept = [ln for ln in ann.read_text().splitlines()
                if '"chapter": 1, "index": 5,' not in ln]
        ann.write_text("\n".join(kept) + "\n")

        code = run_cli("--config", fixture_copy / "config.json")
        assert code == EXIT_INPUT  # strict default

        out = tmp_path / "out"
        code = run_cli("--config", fixture_copy / "config.json",
                       "--alignment", "truncate", "--out", out, "--no-charts")
        assert code == EXIT_OK
        warnings = (out / "warnings.txt").read_text()
        assert "chapter 1" in warnings and "dropped 2" in warnings
