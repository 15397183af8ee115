"""Feature extractors mapping binary digit images to vectors in [0, 1]."""

from .angular import angular16
from .dcg import dcg40
from .octant import centroid16, shadow72
from .runs import run36
from .sets import (EXTRACTORS, FEATURE_SETS, SET_IDS, FeatureSetSpec, extract_matrix,
                   extract_set, get_set)
from .span import span8, span128

__all__ = [
    "EXTRACTORS", "FEATURE_SETS", "SET_IDS", "FeatureSetSpec", "angular16", "centroid16",
    "dcg40", "extract_matrix", "extract_set", "get_set", "run36", "shadow72", "span8",
    "span128",
]
