"""Binary image plumbing shared by the feature extractors.

A binary image is a 2-D ``numpy`` boolean array where ``True`` marks a black
(ink) pixel. Gray images are 2-D integer arrays with intensities in [0, 255].
Pixel ``(r, c)`` covers the unit square ``[r, r+1) x [c, c+1)``; its center is
``(r + 0.5, c + 0.5)``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import EmptyImage

FRAME = 32


class BoundingBox(NamedTuple):
    top: int
    left: int
    h: int
    w: int

    @property
    def bottom(self) -> int:
        return self.top + self.h

    @property
    def right(self) -> int:
        return self.left + self.w

    def crop(self, img: np.ndarray) -> np.ndarray:
        return img[self.top:self.bottom, self.left:self.right]


def as_binary(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"binary image must be a non-empty 2-D array, got shape {arr.shape}")
    return arr.astype(bool, copy=False)


def as_gray(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"gray image must be a non-empty 2-D array, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("gray intensities must lie in [0, 255]")
    return arr.astype(np.int64, copy=False)


def binarize(img, threshold: int) -> np.ndarray:
    """Black where intensity is strictly below ``threshold``."""
    return as_gray(img) < threshold


def otsu_threshold(img) -> int:
    """Threshold maximizing between-class variance of the two intensity classes.

    Classes are ``{v < t}`` and ``{v >= t}`` for ``t`` in 0..255; ties go to
    the smaller ``t``. Images with no separable split (constant intensity)
    get 128.
    """
    gray = as_gray(img)
    hist = np.bincount(gray.ravel(), minlength=256).astype(np.float64)
    levels = np.arange(256, dtype=np.float64)
    total = hist.sum()
    # below[t] = pixels with intensity < t, for t = 0..255
    below = np.concatenate(([0.0], np.cumsum(hist)[:-1]))
    below_mass = np.concatenate(([0.0], np.cumsum(hist * levels)[:-1]))
    above = total - below
    above_mass = (hist * levels).sum() - below_mass
    with np.errstate(divide="ignore", invalid="ignore"):
        mu0 = np.where(below > 0, below_mass / below, 0.0)
        mu1 = np.where(above > 0, above_mass / above, 0.0)
    between = below * above * (mu0 - mu1) ** 2
    best = int(np.argmax(between))
    if between[best] <= 0.0:
        return 128
    return best


def scale_to(img, out_h: int, out_w: int) -> np.ndarray:
    """Nearest-neighbor resample; output (r, c) copies input (r*H//out_h, c*W//out_w)."""
    if out_h < 1 or out_w < 1:
        raise ValueError("output dimensions must be positive")
    arr = np.asarray(img)
    h, w = arr.shape
    rows = (np.arange(out_h) * h) // out_h
    cols = (np.arange(out_w) * w) // out_w
    return arr[np.ix_(rows, cols)]


def minimal_bounding_box(img) -> BoundingBox:
    arr = as_binary(img)
    rows = np.flatnonzero(arr.any(axis=1))
    if rows.size == 0:
        raise EmptyImage("image contains no black pixel")
    cols = np.flatnonzero(arr.any(axis=0))
    return BoundingBox(int(rows[0]), int(cols[0]),
                       int(rows[-1] - rows[0] + 1), int(cols[-1] - cols[0] + 1))


def _sector(dy2, dx2, h, w):
    """Octant index from doubled center offsets, exact integer arithmetic.

    The offset is rescaled by the box size so the box diagonals sit at 45
    degrees; comparisons are done on ``dy2 * w`` and ``dx2 * h``.
    """
    y = np.asarray(dy2, dtype=np.int64) * w
    x = np.asarray(dx2, dtype=np.int64) * h
    out = np.zeros(np.broadcast(y, x).shape, dtype=np.int64)
    q1 = (y >= 0) & (x > 0)
    q2 = (x <= 0) & (y > 0)
    q3 = (y <= 0) & (x < 0)
    q4 = (x >= 0) & (y < 0)
    out[q1] = np.where(y < x, 0, 1)[q1]
    out[q2] = np.where(-x < y, 2, 3)[q2]
    out[q3] = np.where(-y < -x, 4, 5)[q3]
    out[q4] = np.where(x < -y, 6, 7)[q4]
    return out


def octant_of(row: int, col: int, box: BoundingBox) -> int:
    """Octant (0..7) of pixel ``(row, col)`` inside ``box``.

    Angles grow from the +column direction toward +rows, measured in
    box-normalized coordinates, so the sectors are the 8 triangles cut by the
    box's midlines and diagonals. A pixel centered on the box center is in
    octant 0.
    """
    if not (box.top <= row < box.bottom and box.left <= col < box.right):
        raise ValueError(f"pixel ({row}, {col}) lies outside {box}")
    dy2 = 2 * (row - box.top) + 1 - box.h
    dx2 = 2 * (col - box.left) + 1 - box.w
    return int(_sector(dy2, dx2, box.h, box.w))


def octant_map(h: int, w: int) -> np.ndarray:
    """Octant index of every pixel of an ``h x w`` box, as an ``h x w`` array."""
    dy2 = 2 * np.arange(h)[:, None] + 1 - h
    dx2 = 2 * np.arange(w)[None, :] + 1 - w
    return _sector(dy2, dx2, h, w)


def crop_to_content(img) -> np.ndarray:
    return minimal_bounding_box(img).crop(as_binary(img))


# (mid-edge point, corner) of each octant's triangle, as fractions of (h, w).
_OCTANT_VERTICES = (
    ((0.5, 1.0), (1.0, 1.0)),
    ((1.0, 0.5), (1.0, 1.0)),
    ((1.0, 0.5), (1.0, 0.0)),
    ((0.5, 0.0), (1.0, 0.0)),
    ((0.5, 0.0), (0.0, 0.0)),
    ((0.0, 0.5), (0.0, 0.0)),
    ((0.0, 0.5), (0.0, 1.0)),
    ((0.5, 1.0), (0.0, 1.0)),
)


def octant_triangle(k: int, h: int, w: int):
    """Vertices ``(center, mid_edge, corner)`` of octant ``k`` in box-local coordinates."""
    (mr, mc), (kr, kc) = _OCTANT_VERTICES[k]
    return (h / 2, w / 2), (mr * h, mc * w), (kr * h, kc * w)
