"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: input problems (corpus, annotations,
cross-validation) exit 2, configuration problems exit 3, I/O problems 4.
"""


class VersevalError(Exception):
    """Base class for all toolkit errors."""


class CorpusError(VersevalError):
    """Malformed or inconsistent translation text input."""


class AnnotationError(VersevalError):
    """Malformed or inconsistent annotation interchange input."""


class MetricError(VersevalError):
    """Invalid arguments to a metric computation."""


class ReportError(VersevalError):
    """A report cannot be emitted from the data at hand."""


class ConfigError(VersevalError):
    """Invalid run configuration or flag value."""
