"""Exception hierarchy shared across the toolkit.

Every error raised on a user-facing path derives from SentibenchError and
carries a short machine-parsable category used by the CLI for exit
reporting.
"""


class SentibenchError(Exception):
    """Base class for all toolkit errors."""

    category = "internal"


class DatasetError(SentibenchError):
    """Problems reading or interpreting the input CSV."""

    category = "dataset"


class ConfigError(SentibenchError):
    """Invalid experiment configuration (flags, files, ranges)."""

    category = "config"


class TrainingError(SentibenchError):
    """Training cannot proceed or diverged (bad data, non-finite loss)."""

    category = "training"


class DimensionMismatchError(SentibenchError):
    """Vector dimensionality does not match the fitted state."""

    category = "dimension"


class ArtifactError(SentibenchError):
    """Model / vectorizer artifact is missing, corrupt, or incompatible."""

    category = "artifact"
