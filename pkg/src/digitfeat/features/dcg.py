"""Dynamic centre of gravity: two levels of quad splits at ink centroids."""

from __future__ import annotations

import math

import numpy as np

from ..errors import EmptyImage
from ..imaging import FRAME
from .span import _frame


def centre_of_gravity(arr, region):
    """Mean ink pixel center of ``region`` = (top, bottom, left, right), ends exclusive.

    Regions without ink (or without area) report their geometric center.
    """
    top, bottom, left, right = region
    sub = arr[top:bottom, left:right]
    rr, cc = np.nonzero(sub)
    if rr.size == 0:
        return (top + bottom) / 2, (left + right) / 2
    return top + rr.mean() + 0.5, left + cc.mean() + 0.5


def _split_line(cg, lo, hi):
    line = math.floor(cg + 0.5)
    if hi - lo >= 2:
        line = min(max(line, lo + 1), hi - 1)
    return line


def quad_split(region, cg):
    """Children (top-left, top-right, bottom-left, bottom-right) split at the rounded cg."""
    top, bottom, left, right = region
    sr = _split_line(cg[0], top, bottom)
    sc = _split_line(cg[1], left, right)
    return [(top, sr, left, sc), (top, sr, sc, right),
            (sr, bottom, left, sc), (sr, bottom, sc, right)]


def dcg40(img) -> np.ndarray:
    arr = _frame(img)
    if not arr.any():
        raise EmptyImage("image contains no black pixel")
    root = (0, FRAME, 0, FRAME)
    level1 = quad_split(root, centre_of_gravity(arr, root))
    points = [centre_of_gravity(arr, reg) for reg in level1]
    for reg, cg in zip(level1, list(points)):
        points.extend(centre_of_gravity(arr, child) for child in quad_split(reg, cg))
    return np.array(points, dtype=np.float64).ravel() / FRAME
