import numpy as np
import pandas as pd
import pytest

from modelkit import create_tiny_base
from modelkit.labels import LABELS


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Print one PASS/FAIL line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {status}: {marker.args[0]}")

POSITIVE = ["happy", "hopeful", "grateful", "relieved", "joyful"]
NEGATIVE = ["worried", "angry", "sad", "afraid", "hopeless"]


def synthetic_training_table(rows: int, seed: int = 42) -> pd.DataFrame:
    """Labeled-tweet-style table with a learnable word/label correlation."""
    rng = np.random.default_rng(seed)
    records = []
    for i in range(rows):
        upbeat = rng.random() < 0.5
        word = (POSITIVE if upbeat else NEGATIVE)[int(rng.integers(0, 5))]
        labels = {L: 0 for L in LABELS}
        labels["optimistic" if upbeat else "pessimistic"] = 1
        if rng.random() < 0.3:
            labels["joking" if upbeat else "sad"] = 1
        records.append({
            "text": f"feeling {word} about the news today, post {i}",
            **labels,
        })
    return pd.DataFrame(records)


@pytest.fixture(scope="session")
def tiny_base(tmp_path_factory):
    """Small random-weight base encoder usable without network access."""
    return create_tiny_base(tmp_path_factory.mktemp("base"), seed=1)


@pytest.fixture(scope="session")
def tiny_artifact(tmp_path_factory, tiny_base):
    """Head-initialized classifier artifact (no training steps)."""
    from modelkit import FineTuneSpec, finetune

    spec = FineTuneSpec(base_model=str(tiny_base), epochs=0, batch_size=1, seed=3)
    return finetune(spec, synthetic_training_table(12), tmp_path_factory.mktemp("artifact"))
