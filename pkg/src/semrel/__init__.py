"""Sentence-pair semantic relatedness toolkit.

Builds sentence embeddings (tf-idf, PPMI, or external files), turns
embedding pairs into features, fits linear regressors, and combines the
resulting scorers into weighted ensembles. Three run protocols cover
supervised, unsupervised, and cross-lingual setups.
"""

from .corpus import PairDataset, SentencePair, load_dataset, merge_train_sets
from .ensemble import EnsembleSpec, combine, dev_weighted_spec, uniform_spec
from .errors import (
    AlignmentError,
    ConfigError,
    CoverageError,
    EmptyVocabularyError,
    FormatError,
    IntegrityError,
    SemrelError,
    ValidationError,
)
from .featurize import (
    EmbeddingSet,
    PpmiModel,
    fit_ppmi,
    load_external_embeddings,
    ppmi_embed,
    save_embeddings,
    tfidf_embed,
)
from .metrics import CorrelationReport, average_ranks, spearman
from .pairsim import PairFeatures, build_pair_features, cosine
from .pipeline import (
    EmbeddingSource,
    RunConfig,
    RunReport,
    load_config,
    run,
    run_track_a,
    run_track_b,
    run_track_c,
)
from .regress import FitModel, clip_unit, fit_elasticnet, fit_ols, predict
from .tokenizer import Vocabulary, fit_vocab, tokenize

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "ConfigError",
    "CorrelationReport",
    "CoverageError",
    "EmbeddingSet",
    "EmbeddingSource",
    "EmptyVocabularyError",
    "EnsembleSpec",
    "FitModel",
    "FormatError",
    "IntegrityError",
    "PairDataset",
    "PairFeatures",
    "PpmiModel",
    "RunConfig",
    "RunReport",
    "SemrelError",
    "SentencePair",
    "ValidationError",
    "Vocabulary",
    "average_ranks",
    "build_pair_features",
    "clip_unit",
    "combine",
    "cosine",
    "dev_weighted_spec",
    "fit_elasticnet",
    "fit_ols",
    "fit_ppmi",
    "fit_vocab",
    "load_config",
    "load_dataset",
    "load_external_embeddings",
    "merge_train_sets",
    "ppmi_embed",
    "predict",
    "run",
    "run_track_a",
    "run_track_b",
    "run_track_c",
    "save_embeddings",
    "spearman",
    "tfidf_embed",
    "tokenize",
    "uniform_spec",
]
