"""Exception hierarchy shared across the package."""


class EffindexError(Exception):
    """Base class for all errors raised by effindex."""


class SeriesValidationError(EffindexError):
    """Input series violates a structural invariant (bad price, bad dates)."""


class SeriesTooShortError(EffindexError):
    """Series is shorter than an estimator's minimum length."""


class DegenerateSeriesError(EffindexError):
    """Series carries no usable signal (constant values, zero spectrum)."""


class DegeneratePathError(EffindexError):
    """Price path has degenerate increments at a scale (zero variation)."""


class EmbeddingFailureError(EffindexError):
    """Circulant embedding produced negative eigenvalues beyond tolerance."""


class GenerationError(EffindexError):
    """Synthetic generator left its invariant domain."""


class ReplicateFailureError(EffindexError):
    """Too many shuffle replicates failed; the series is marked failed."""

    def __init__(self, label: str, attempts: int, successes: int, last_error: Exception):
        self.label = label
        self.attempts = attempts
        self.successes = successes
        self.last_error = last_error
        super().__init__(
            f"series {label!r}: only {successes} usable replicates after "
            f"{attempts} attempts (last failure: {last_error})"
        )


class EmptyReportError(EffindexError):
    """Ranking requested for an empty collection of estimates."""


class IngestError(EffindexError):
    """CSV panel could not be read at all (missing file, bad header)."""
