"""Octant-based features: shadow projections and octant centroids.

Both work on the minimal bounding box of the glyph, split into the eight
triangles cut by the box midlines and diagonals.
"""

from __future__ import annotations

import math

import numpy as np

from ..imaging import crop_to_content, octant_map, octant_triangle

# Offsets keep exact-integer projections from landing one bin low after rounding.
_BIN_EPS = 1e-9


def _pixel_centers(h, w):
    rr, cc = np.mgrid[0:h, 0:w]
    return rr + 0.5, cc + 0.5


def _side_bins(p0, p1, rows, cols):
    """Unit-bin index of each point's perpendicular projection onto segment p0->p1."""
    dr, dc = p1[0] - p0[0], p1[1] - p0[1]
    length = math.hypot(dr, dc)
    nbins = math.ceil(length)
    s = ((rows - p0[0]) * dr + (cols - p0[1]) * dc) / length
    return np.clip(np.floor(s + _BIN_EPS), 0, nbins - 1).astype(np.int64)


def _shadow_triple(ref_bins, ink_bins):
    if ref_bins.size == 0 or ink_bins.size == 0:
        return (0.0, 0.0, 0.0)
    ref = np.unique(ref_bins)
    ink = np.unique(ink_bins)
    lo = ref[0]
    span = ref[-1] - lo + 1
    return (ink.size / ref.size, (ink[0] - lo) / span, (ink[-1] - lo + 1) / span)


def shadow72(img) -> np.ndarray:
    """Shadow features: 3 values for each of the 3 sides of each octant.

    Black pixel centers of an octant are projected perpendicularly onto each
    side of its triangle and binned into unit-length bins. The normalizing
    reference is the set of bins reached when the whole octant is black, so a
    solid glyph yields coverage 1, first 0, last 1 on every side. Per side the
    triple is (covered fraction, first covered bin, end of last covered bin),
    with bin positions taken relative to the reference span. Sides are listed
    perimeter, midline, diagonal; octants 0..7.
    """
    crop = crop_to_content(img)
    h, w = crop.shape
    octs = octant_map(h, w)
    rows, cols = _pixel_centers(h, w)
    out = []
    for k in range(8):
        center, mid, corner = octant_triangle(k, h, w)
        region = octs == k
        ink = region & crop
        for p0, p1 in ((mid, corner), (center, mid), (center, corner)):
            ref_bins = _side_bins(p0, p1, rows[region], cols[region])
            ink_bins = _side_bins(p0, p1, rows[ink], cols[ink])
            out.extend(_shadow_triple(ref_bins, ink_bins))
    return np.array(out, dtype=np.float64)


def centroid16(img) -> np.ndarray:
    """Mean black-pixel position per octant, normalized by box height/width.

    Empty octants report the centroid of their triangle.
    """
    crop = crop_to_content(img)
    h, w = crop.shape
    octs = octant_map(h, w)
    rows, cols = _pixel_centers(h, w)
    out = np.empty(16)
    for k in range(8):
        ink = crop & (octs == k)
        if ink.any():
            out[2 * k] = rows[ink].mean() / h
            out[2 * k + 1] = cols[ink].mean() / w
        else:
            verts = octant_triangle(k, h, w)
            out[2 * k] = sum(v[0] for v in verts) / 3 / h
            out[2 * k + 1] = sum(v[1] for v in verts) / 3 / w
    return out
