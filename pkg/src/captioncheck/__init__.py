"""Consistency checking between line-chart data and natural-language captions."""

from .chart import (CaptionCheckError, ChartSpec, EmptyChartError, Granularity,
                    NormalizedPolyline, SeriesFormatError, TimeSeries, clip,
                    detect_granularity, normalize)
from .lexicon import (Lexicon, LexiconEntry, LexiconSimilarity,
                      SimilarityProvider, WordVectorSimilarity)
from .matching import (CheckResult, Diagnostic, GroundedReference, PointTarget,
                       TrendTarget, check, check_factual, ground, match_features,
                       resolve_point, resolve_trend)
from .prominence import (EPSILON_GRID, PERSISTENCE_CAP, ChartFeature,
                         PersistenceProfile, SplitNode, baseline_saliency,
                         build_split_tree, enumerate_features, features_to_json,
                         point_persistence, rdp_retained, trend_persistence)
from .refs import (DataDescription, ReferencePair, extract_data_descriptions,
                   pair_refs)
from .text import Sentence, Token, analyze, lemmatize, split_sentences, tokenize_and_lemmatize
from .timeexpr import TimeReference, canonical_text, extract_time_refs

__version__ = "0.1.0"

__all__ = [
    "CaptionCheckError", "ChartSpec", "EmptyChartError", "Granularity",
    "NormalizedPolyline", "SeriesFormatError", "TimeSeries", "clip",
    "detect_granularity", "normalize",
    "Lexicon", "LexiconEntry", "LexiconSimilarity", "SimilarityProvider",
    "WordVectorSimilarity",
    "CheckResult", "Diagnostic", "GroundedReference", "PointTarget",
    "TrendTarget", "check", "check_factual", "ground", "match_features",
    "resolve_point", "resolve_trend",
    "EPSILON_GRID", "PERSISTENCE_CAP", "ChartFeature", "PersistenceProfile",
    "SplitNode", "baseline_saliency", "build_split_tree", "enumerate_features",
    "features_to_json", "point_persistence", "rdp_retained", "trend_persistence",
    "DataDescription", "ReferencePair", "extract_data_descriptions", "pair_refs",
    "Sentence", "Token", "analyze", "lemmatize", "split_sentences",
    "tokenize_and_lemmatize",
    "TimeReference", "canonical_text", "extract_time_refs",
    "__version__",
]
