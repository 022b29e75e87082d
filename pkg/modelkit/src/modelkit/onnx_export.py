"""Optional ONNX export of a trained classifier artifact.

Requires the ``onnx`` package (plus ``onnxscript`` on newer torch
versions); raises a clear error when the toolchain is absent so callers
can treat the export as an optional capability.
"""

from __future__ import annotations

from pathlib import Path


class OnnxUnavailable(RuntimeError):
    pass


def export_onnx(model_artifact, out_path, max_length: int = 128) -> Path:
    """Export the classifier to a single ONNX file taking
    (input_ids, attention_mask) and returning raw logits."""
    import torch
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    model = AutoModelForSequenceClassification.from_pretrained(model_artifact)
    tokenizer = AutoTokenizer.from_pretrained(model_artifact)
    model.eval()
    enc = tokenizer(["placeholder input"], truncation=True, padding="max_length",
                    max_length=max_length, return_tensors="pt")

    class Wrapper(torch.nn.Module):
        def __init__(self, inner):
            super().__init__()
            self.inner = inner

        def forward(self, input_ids, attention_mask):
            return self.inner(input_ids=input_ids, attention_mask=attention_mask).logits

    out_path = Path(out_path)
    try:
        torch.onnx.export(
            Wrapper(model),
            (enc["input_ids"], enc["attention_mask"]),
            str(out_path),
            input_names=["input_ids", "attention_mask"],
            output_names=["logits"],
            dynamic_axes={
                "input_ids": {0: "batch", 1: "sequence"},
                "attention_mask": {0: "batch", 1: "sequence"},
                "logits": {0: "batch"},
            },
        )
    except (ImportError, ModuleNotFoundError, RuntimeError) as exc:
        raise OnnxUnavailable(
            f"ONNX export needs the onnx/onnxscript toolchain: {exc}"
        ) from exc
    return out_path
