"""Deterministic synthetic digit glyphs drawn from stroke templates.

Templates loosely follow the Arabic-Indic digit shapes (٠١٢٣٤٥٦٧٨٩), drawn as
polylines in a 32x32 frame as (row, col) points.
"""

from __future__ import annotations

import math

import numpy as np

from ..imaging import FRAME
from ..rng import derive_seed


def _ring(cr, cc, rr, rc, n=12, start=0.0, stop=360.0):
    return [(cr + rr * math.sin(math.radians(a)), cc + rc * math.cos(math.radians(a)))
            for a in np.linspace(start, stop, n + 1)]


TEMPLATES: dict[int, list[list[tuple[float, float]]]] = {
    0: [_ring(16, 16, 4, 4, n=4), [(12.5, 16), (19.5, 16)], [(16, 12.5), (16, 19.5)]],
    1: [[(5, 18), (27, 14)]],
    2: [[(27, 13), (8, 13)], [(8, 13), (10, 17), (9, 21), (5, 23)]],
    3: [[(27, 11), (8, 11)], [(8, 11), (11, 14), (7, 17), (11, 20), (5, 24)]],
    4: [[(5, 21), (5, 13), (10, 10), (14, 16), (18, 10), (24, 11), (27, 21)]],
    5: [_ring(16, 16, 9, 8, n=16)],
    6: [[(6, 9), (6, 22), (27, 22)]],
    7: [[(6, 7), (27, 16), (6, 25)]],
    8: [[(27, 7), (6, 16), (27, 25)]],
    9: [_ring(11, 15, 5, 5, n=12), [(6, 20), (27, 20)]],
}

NUM_CLASSES = len(TEMPLATES)


def draw_polyline(img, points, thickness=1, shift=(0, 0)):
    """Stamp a ``thickness`` x ``thickness`` pen along each segment, in place."""
    h, w = img.shape
    dr, dc = shift
    for (r0, c0), (r1, c1) in zip(points, points[1:]):
        n = max(2, int(math.ceil(4 * math.hypot(r1 - r0, c1 - c0))) + 1)
        t = np.linspace(0.0, 1.0, n)
        rows = np.floor(r0 + t * (r1 - r0) + dr).astype(int)
        cols = np.floor(c0 + t * (c1 - c0) + dc).astype(int)
        for i in range(thickness):
            for j in range(thickness):
                rr, cc = rows + i, cols + j
                ok = (rr >= 0) & (rr < h) & (cc >= 0) & (cc < w)
                img[rr[ok], cc[ok]] = True
    return img


def render_template(label: int, thickness: int = 1, shift=(0, 0)) -> np.ndarray:
    img = np.zeros((FRAME, FRAME), dtype=bool)
    for stroke in TEMPLATES[label]:
        draw_polyline(img, stroke, thickness, shift)
    return img


def synthesize(label: int, seed: int, index: int, noise: float = 0.02, max_shift: int = 2,
               thicknesses=(1, 2)) -> np.ndarray:
    """One perturbed instance: random shift, pen thickness, then pixel-flip noise."""
    rng = np.random.default_rng(derive_seed(seed, label, index))
    shift = tuple(int(v) for v in rng.integers(-max_shift, max_shift + 1, size=2))
    thickness = int(thicknesses[rng.integers(len(thicknesses))])
    img = render_template(label, thickness, shift)
    flips = rng.random(img.shape) < noise
    return img ^ flips
