"""Angular distance features: corner rays traced until they meet ink."""

from __future__ import annotations

import math

import numpy as np

from ..imaging import crop_to_content

ANGLES = (0.0, 22.5, 45.0, 67.5)
# intervals shorter than this are grid-corner touches, not pixel crossings
_MIN_SEGMENT = 1e-9


def corner_rays(h: int, w: int):
    """Yield ``(origin, direction)`` for the 16 rays, corners TL, TR, BR, BL.

    Each ray leaves its corner at the given angle from the adjacent
    horizontal edge, turned toward the box interior.
    """
    corners = (((0.0, 0.0), (1, 1)), ((0.0, float(w)), (1, -1)),
               ((float(h), float(w)), (-1, -1)), ((float(h), 0.0), (-1, 1)))
    for origin, (sr, sc) in corners:
        for deg in ANGLES:
            a = math.radians(deg)
            yield origin, (sr * math.sin(a), sc * math.cos(a))


def _exit_distance(origin, direction, h, w):
    t = math.inf
    for o, d, hi in ((origin[0], direction[0], h), (origin[1], direction[1], w)):
        if d > _MIN_SEGMENT:
            t = min(t, (hi - o) / d)
        elif d < -_MIN_SEGMENT:
            t = min(t, -o / d)
    return t


def _crossings(o, d, hi, t_end):
    if abs(d) <= _MIN_SEGMENT:
        return np.empty(0)
    k = np.arange(0, hi + 1)
    t = (k - o) / d
    return t[(t > 0) & (t < t_end)]


def first_hit(crop, origin, direction):
    """Distance along the ray to the first ink pixel it crosses, or None.

    The ray is cut at every grid-line crossing; each piece lies in a single
    pixel, read at the piece's midpoint (clamped into the box so rays running
    along the far edges read the edge pixels).
    """
    h, w = crop.shape
    t_end = _exit_distance(origin, direction, h, w)
    cuts = np.concatenate(([0.0], _crossings(origin[0], direction[0], h, t_end),
                           _crossings(origin[1], direction[1], w, t_end), [t_end]))
    cuts = np.unique(cuts)
    starts, ends = cuts[:-1], cuts[1:]
    keep = ends - starts > _MIN_SEGMENT
    starts, ends = starts[keep], ends[keep]
    mid = (starts + ends) / 2
    pr = np.clip(np.floor(origin[0] + mid * direction[0]), 0, h - 1).astype(np.int64)
    pc = np.clip(np.floor(origin[1] + mid * direction[1]), 0, w - 1).astype(np.int64)
    hits = np.flatnonzero(crop[pr, pc])
    if hits.size == 0:
        return None
    return float(starts[hits[0]])


def angular16(img) -> np.ndarray:
    """Distance from each box corner to the first ink along 4 rays, over the box diagonal.

    Rays that leave the box without crossing ink give 1.0.
    """
    crop = crop_to_content(img)
    h, w = crop.shape
    diag = math.hypot(h, w)
    out = []
    for origin, direction in corner_rays(h, w):
        t = first_hit(crop, origin, direction)
        out.append(1.0 if t is None else min(t / diag, 1.0))
    return np.array(out)
