"""Feature-set registry: named, ordered concatenations of extractors."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .angular import angular16
from .dcg import dcg40
from .octant import centroid16, shadow72
from .runs import run36
from .span import span8, span128

EXTRACTORS = MappingProxyType({
    "shadow72": (shadow72, 72),
    "centroid16": (centroid16, 16),
    "angular16": (angular16, 16),
    "span8": (span8, 8),
    "span128": (span128, 128),
    "dcg40": (dcg40, 40),
    "run36": (run36, 36),
})


@dataclass(frozen=True)
class FeatureSetSpec:
    id: str
    extractors: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return sum(EXTRACTORS[name][1] for name in self.extractors)


FEATURE_SETS = MappingProxyType({
    fset.id: fset for fset in (
        FeatureSetSpec("Set1", ("shadow72", "centroid16")),
        FeatureSetSpec("Set2", ("angular16", "span8")),
        FeatureSetSpec("Set3", ("dcg40",)),
        FeatureSetSpec("Set4", ("run36",)),
        FeatureSetSpec("Set5", ("span128",)),
        FeatureSetSpec("Set6", ("run36", "dcg40", "angular16", "span8")),
        FeatureSetSpec("Set7", ("shadow72", "centroid16", "run36")),
    )
})

SET_IDS = tuple(FEATURE_SETS)


def get_set(set_id) -> FeatureSetSpec:
    if isinstance(set_id, FeatureSetSpec):
        return set_id
    key = str(set_id)
    if key.startswith("Set#"):
        key = "Set" + key[4:]
    try:
        return FEATURE_SETS[key]
    except KeyError:
        raise KeyError(f"unknown feature set {set_id!r}; expected one of {', '.join(SET_IDS)}") from None


def extract_set(img, feature_set) -> np.ndarray:
    fset = get_set(feature_set)
    parts = [EXTRACTORS[name][0](img) for name in fset.extractors]
    return np.concatenate(parts)


def extract_matrix(images, feature_set) -> np.ndarray:
    """Stack ``extract_set`` over many images into an ``(n, dimension)`` array."""
    fset = get_set(feature_set)
    out = np.empty((len(images), fset.dimension))
    for i, img in enumerate(images):
        out[i] = extract_set(img, fset)
    return out
