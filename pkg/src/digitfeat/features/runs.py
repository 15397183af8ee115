"""Longest-run features over 9 overlapping regions of the bounding box."""

from __future__ import annotations

import numpy as np

from ..imaging import crop_to_content


def _run_length_map(arr, dc):
    """Length of the maximal black run through each pixel along direction ``(1, dc)``.

    ``dc`` in {-1, 0, 1}; white pixels get 0.
    """
    h, w = arr.shape
    src = arr.astype(np.int64)

    def sweep(rows, dc):
        # acc[r, c] = ink run ending at (r, c) walking along (+-1, dc)
        acc = np.zeros((h, w), dtype=np.int64)
        prev_row = None
        for r in rows:
            prev = np.zeros(w, dtype=np.int64)
            if prev_row is not None:
                if dc == 0:
                    prev = prev_row
                elif dc > 0:
                    prev[1:] = prev_row[:-1]
                else:
                    prev[:-1] = prev_row[1:]
            acc[r] = (prev + 1) * src[r]
            prev_row = acc[r]
        return acc

    down = sweep(range(h), dc)
    up = sweep(range(h - 1, -1, -1), -dc)
    return np.where(arr, down + up - 1, 0)


def region_origins(h: int, w: int):
    """(top, left, height, width) of the 9 regions, row-major."""
    rh, rw = -(-h // 2), -(-w // 2)
    out = []
    for i in range(3):
        top = (i * h) // 4
        for j in range(3):
            left = (j * w) // 4
            out.append((top, left, min(rh, h - top), min(rw, w - left)))
    return out


def _line_max_sum(sub, index):
    acc = np.zeros(index.max() + 1, dtype=np.int64)
    np.maximum.at(acc, index.ravel(), sub.ravel())
    return acc.sum()


def run36(img) -> np.ndarray:
    """Per region: summed longest extended run along rows, columns and both diagonals.

    Runs may extend beyond the region along the full image line. Sums are
    divided by the box area and clamped to 1.
    """
    crop = crop_to_content(img)
    h, w = crop.shape
    maps = (
        _run_length_map(crop.T, 0).T,
        _run_length_map(crop, 0),
        _run_length_map(crop, -1),  # r + c constant
        _run_length_map(crop, 1),   # r - c constant
    )
    out = []
    for top, left, rh, rw in region_origins(h, w):
        win = np.s_[top:top + rh, left:left + rw]
        rr, cc = np.mgrid[0:rh, 0:rw]
        sums = (
            maps[0][win].max(axis=1).sum(),
            maps[1][win].max(axis=0).sum(),
            _line_max_sum(maps[2][win], rr + cc),
            _line_max_sum(maps[3][win], rr - cc + rw - 1),
        )
        out.extend(min(s / (h * w), 1.0) for s in sums)
    return np.array(out, dtype=np.float64)
