"""Effective span: background run lengths from the frame edges to the first ink."""

from __future__ import annotations

import numpy as np

from ..errors import WrongFrameSize
from ..imaging import FRAME, as_binary

BANDS = 4


def _frame(img) -> np.ndarray:
    arr = as_binary(img)
    if arr.shape != (FRAME, FRAME):
        raise WrongFrameSize(f"expected a {FRAME}x{FRAME} frame, got {arr.shape[0]}x{arr.shape[1]}")
    return arr


def leading_white(arr: np.ndarray) -> np.ndarray:
    """Per row, white pixels before the first black one (row length if none)."""
    first = np.argmax(arr, axis=1)
    return np.where(arr.any(axis=1), first, arr.shape[1])


def row_margins(arr):
    return leading_white(arr), leading_white(arr[:, ::-1])


def span8(img) -> np.ndarray:
    """Mean left/right margins over 4 horizontal bands of 8 rows."""
    arr = _frame(img)
    left, right = row_margins(arr)
    left = left.reshape(BANDS, -1).mean(axis=1) / FRAME
    right = right.reshape(BANDS, -1).mean(axis=1) / FRAME
    return np.column_stack([left, right]).ravel()


def span128(img) -> np.ndarray:
    """Left/right margin of every row, then top/bottom margin of every column."""
    arr = _frame(img)
    left, right = row_margins(arr)
    top, bottom = row_margins(arr.T)
    rows = np.column_stack([left, right]).ravel()
    cols = np.column_stack([top, bottom]).ravel()
    return np.concatenate([rows, cols]) / FRAME
