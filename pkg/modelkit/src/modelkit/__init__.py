"""modelkit: produces annotation interchange files for verseval.

Fine-tunes a multi-label sentiment classifier on a labeled-tweet
dataset, runs inference over translation corpora, computes sentence
embeddings and optional lexicon polarity, and emits everything in the
line-delimited annotation interchange format the verseval toolkit
consumes.  The two packages share only that file contract.
"""

__version__ = "0.1.0"

from .annotate import annotate_corpus, classify, write_interchange
from .basemodel import DEFAULT_BASE_MODEL, create_tiny_base
from .corpusio import read_corpus
from .embed import HashingEmbedder, TransformerEmbedder, load_embedder
from .labels import LABELS
from .polarity import lexicon_polarity
from .senwave import DatasetError, prepare_senwave
from .train import FineTuneSpec, TrainingError, finetune

__all__ = [
    "DEFAULT_BASE_MODEL",
    "DatasetError",
    "FineTuneSpec",
    "HashingEmbedder",
    "LABELS",
    "TrainingError",
    "TransformerEmbedder",
    "annotate_corpus",
    "classify",
    "create_tiny_base",
    "finetune",
    "lexicon_polarity",
    "load_embedder",
    "prepare_senwave",
    "read_corpus",
    "write_interchange",
]
