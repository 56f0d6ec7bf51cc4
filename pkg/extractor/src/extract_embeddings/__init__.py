"""Transformer sentence embedding extraction for pair-relatedness datasets."""

from .core import ExtractJob, ExtractResult, extract
from .dataset import read_pairs
from .errors import ExtractionError

__version__ = "0.1.0"

__all__ = [
    "ExtractJob",
    "ExtractResult",
    "ExtractionError",
    "extract",
    "read_pairs",
    "__version__",
]
