"""Exception types shared across the package.

Each class marks a distinct failure contract so callers can tell apart
malformed files, out-of-range values, broken invariants, and misconfiguration.
"""


class SemrelError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SemrelError):
    """A run or operation was configured inconsistently."""


class FormatError(SemrelError):
    """A file or row does not match its expected format."""


class ValidationError(SemrelError):
    """A value is outside its allowed range or not finite."""


class IntegrityError(SemrelError):
    """A uniqueness or consistency invariant was violated."""


class AlignmentError(SemrelError):
    """Two sequences that must have matching lengths or ids do not."""


class CoverageError(SemrelError):
    """An embedding set does not cover every sentence of a dataset."""


class EmptyVocabularyError(SemrelError):
    """Vocabulary fitting or use ended up with no terms."""
