"""Labeled digit datasets: manifest ingestion, synthetic generation, splitting."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, NamedTuple

import numpy as np

from ..errors import (DigitFeatError, EmptyManifest, ImageError, InsufficientSamples,
                      ParseError)
from ..imaging import FRAME, binarize, crop_to_content, otsu_threshold, scale_to
from .netpbm import magic_of, parse_pbm, parse_pgm
from .synthetic import NUM_CLASSES, synthesize


class Sample(NamedTuple):
    image: np.ndarray
    label: int
    source: str


@dataclass(frozen=True)
class Dataset:
    samples: tuple[Sample, ...]

    def __post_init__(self):
        for s in self.samples:
            if s.image.shape != (FRAME, FRAME):
                raise ValueError(f"sample {s.source} is {s.image.shape}, expected {FRAME}x{FRAME}")
            if not 0 <= s.label < NUM_CLASSES:
                raise ValueError(f"sample {s.source} has label {s.label} outside 0..{NUM_CLASSES - 1}")

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[Sample]:
        return iter(self.samples)

    @property
    def images(self) -> list[np.ndarray]:
        return [s.image for s in self.samples]

    @property
    def labels(self) -> np.ndarray:
        return np.array([s.label for s in self.samples], dtype=np.int64)

    def class_counts(self) -> list[int]:
        return np.bincount(self.labels, minlength=NUM_CLASSES).tolist()


class SplitPair(NamedTuple):
    train: Dataset
    test: Dataset


def normalize_image(img) -> np.ndarray:
    """Bring a binary image into the 32x32 frame: crop to ink, then nearest-neighbor scale."""
    img = np.asarray(img, dtype=bool)
    if img.shape == (FRAME, FRAME):
        return img
    return scale_to(crop_to_content(img), FRAME, FRAME)


def read_image(data: bytes) -> np.ndarray:
    """Decode PBM directly, or PGM by scaling to the frame and Otsu thresholding."""
    magic = magic_of(data)
    if magic in (b"P1", b"P4"):
        return normalize_image(parse_pbm(data))
    if magic in (b"P2", b"P5"):
        gray = scale_to(parse_pgm(data), FRAME, FRAME)
        return binarize(gray, otsu_threshold(gray))
    raise ParseError(f"unsupported image format (magic {magic!r})")


def parse_manifest(text: str):
    """``(line number, path, label)`` entries; blank and ``#`` lines are skipped."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        path, sep, label = line.rpartition(",")
        if not sep or not path.strip():
            raise ParseError(f"expected 'path,label', got {line!r}", line=lineno)
        try:
            value = int(label.strip())
        except ValueError:
            raise ParseError(f"label {label.strip()!r} is not an integer", line=lineno) from None
        if not 0 <= value < NUM_CLASSES:
            raise ParseError(f"label {value} outside 0..{NUM_CLASSES - 1}", line=lineno)
        entries.append((lineno, path.strip(), value))
    return entries


def load_manifest(text: str, base=".") -> Dataset:
    entries = parse_manifest(text)
    if not entries:
        raise EmptyManifest("manifest lists no images")
    base = Path(base)
    samples = []
    for lineno, rel, label in entries:
        path = base / rel
        try:
            img = read_image(path.read_bytes())
        except OSError as exc:
            raise ImageError(path, exc.strerror or str(exc)) from None
        except DigitFeatError as exc:
            raise ImageError(path, str(exc)) from None
        samples.append(Sample(img, label, str(lineno)))
    return Dataset(tuple(samples))


def load_manifest_file(path) -> Dataset:
    path = Path(path)
    return load_manifest(path.read_text(encoding="utf-8"), path.parent)


def generate_synthetic(per_class: int, seed: int, noise: float = 0.02, max_shift: int = 2,
                       thicknesses=(1, 2)) -> Dataset:
    """``per_class`` perturbed renders of each template, class 0 first."""
    if per_class < 1:
        raise ValueError("per_class must be at least 1")
    samples = tuple(
        Sample(synthesize(label, seed, i, noise, max_shift, thicknesses), label, f"syn-{label}-{i}")
        for label in range(NUM_CLASSES) for i in range(per_class))
    return Dataset(samples)


def split(ds: Dataset, train_per_class: int, test_per_class: int, seed: int) -> SplitPair:
    """Per class, shuffle with ``seed`` and take the first ``train`` then the next ``test``."""
    rng = np.random.default_rng(seed)
    labels = ds.labels
    need = train_per_class + test_per_class
    train, test = [], []
    for label in range(NUM_CLASSES):
        idx = np.flatnonzero(labels == label)
        if idx.size < need:
            raise InsufficientSamples(label, idx.size, need)
        idx = rng.permutation(idx)
        train += [ds.samples[i] for i in idx[:train_per_class]]
        test += [ds.samples[i] for i in idx[train_per_class:need]]
    return SplitPair(Dataset(tuple(train)), Dataset(tuple(test)))
