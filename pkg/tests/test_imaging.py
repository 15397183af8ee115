import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from digitfeat.errors import EmptyImage
from digitfeat.imaging import (BoundingBox, binarize, minimal_bounding_box, octant_map,
                               octant_of, otsu_threshold, scale_to)

from oracles import octant as octant_oracle

bool_images = arrays(bool, st.tuples(st.integers(1, 20), st.integers(1, 20)))


def test_binarize_constant_images():
    assert binarize(np.zeros((4, 5), int), 128).all()
    assert not binarize(np.full((4, 5), 255), 128).any()


def test_binarize_checkerboard():
    gray = (np.indices((6, 6)).sum(axis=0) % 2) * 255
    np.testing.assert_array_equal(binarize(gray, 128), gray == 0)


@given(arrays(np.int64, (5, 7), elements=st.integers(0, 255)), st.integers(0, 255))
def test_binarize_idempotent_on_induced_image(gray, t):
    once = binarize(gray, t)
    induced = np.where(once, 0, 255)
    np.testing.assert_array_equal(binarize(induced, t), once)


def _otsu_scan(values):
    """Exhaustive scan over all 256 thresholds, smallest maximizer wins."""
    values = list(values)
    best_t, best = None, -1.0
    for t in range(256):
        lo = [v for v in values if v < t]
        hi = [v for v in values if v >= t]
        if not lo or not hi:
            score = 0.0
        else:
            m0, m1 = sum(lo) / len(lo), sum(hi) / len(hi)
            score = len(lo) * len(hi) * (m0 - m1) ** 2
        if score > best + 1e-9:
            best_t, best = t, score
    return 128 if best <= 0 else best_t


def test_otsu_constant_image_is_128():
    assert otsu_threshold(np.full((3, 3), 77)) == 128


def test_otsu_bimodal_halves():
    gray = np.zeros((4, 4), int)
    gray[2:] = 255
    t = otsu_threshold(gray)
    np.testing.assert_array_equal(binarize(gray, t), gray == 0)
    assert t == _otsu_scan(gray.ravel())


def test_otsu_four_pixels():
    gray = np.array([[10, 10], [200, 200]])
    t = otsu_threshold(gray)
    assert t == _otsu_scan([10, 10, 200, 200]) == 11
    assert 10 < t <= 200


@settings(max_examples=60)
@given(arrays(np.int64, st.tuples(st.integers(1, 6), st.integers(1, 6)),
              elements=st.integers(0, 255)))
def test_otsu_matches_exhaustive_scan(gray):
    assert otsu_threshold(gray) == _otsu_scan(gray.ravel())


def test_scale_identity():
    img = np.random.default_rng(0).random((32, 32)) < 0.5
    np.testing.assert_array_equal(scale_to(img, 32, 32), img)


def test_scale_doubles_blocks():
    img = np.array([[True, False], [False, True]])
    expected = np.kron(img, np.ones((2, 2), bool))
    np.testing.assert_array_equal(scale_to(img, 4, 4), expected)


def test_scale_matches_index_oracle():
    img = np.random.default_rng(1).random((64, 48)) < 0.5
    out = scale_to(img, 32, 32)
    for r, c in itertools.product(range(32), range(32)):
        assert out[r, c] == img[(r * 64) // 32, (c * 48) // 32]


@given(bool_images, st.integers(1, 40), st.integers(1, 40))
def test_scale_output_shape(img, h, w):
    assert scale_to(img, h, w).shape == (h, w)


def test_bounding_box_examples():
    img = np.zeros((32, 32), bool)
    img[5, 7] = True
    assert minimal_bounding_box(img) == BoundingBox(5, 7, 1, 1)
    assert minimal_bounding_box(np.ones((32, 32), bool)) == BoundingBox(0, 0, 32, 32)
    img = np.zeros((32, 32), bool)
    img[2, 3] = img[10, 20] = True
    assert minimal_bounding_box(img) == BoundingBox(2, 3, 9, 18)


def test_bounding_box_empty():
    with pytest.raises(EmptyImage):
        minimal_bounding_box(np.zeros((4, 4), bool))


@given(bool_images)
def test_bounding_box_is_tight(img):
    if not img.any():
        return
    box = minimal_bounding_box(img)
    inner = box.crop(img)
    assert inner.sum() == img.sum()
    assert inner[0].any() and inner[-1].any() and inner[:, 0].any() and inner[:, -1].any()


def test_octant_right_of_center():
    box = BoundingBox(0, 0, 32, 32)
    assert octant_of(16, 30, box) == 0


def test_octant_below_center():
    box = BoundingBox(0, 0, 32, 32)
    # (30, 16) has its center half a pixel right of the box center: angle ~88 degrees
    assert octant_of(30, 16, box) == 1
    assert octant_of(30, 15, box) == 2


def test_octant_center_pixel_is_zero():
    assert octant_of(3, 3, BoundingBox(0, 0, 7, 7)) == 0
    assert octant_of(0, 0, BoundingBox(0, 0, 1, 1)) == 0


def test_octant_counts_16x16():
    counts = np.bincount(octant_map(16, 16).ravel(), minlength=8)
    assert counts.sum() == 256
    assert counts.max() - counts.min() <= 16
    expected = np.zeros(8, int)
    for r, c in itertools.product(range(16), range(16)):
        expected[octant_oracle(r, c, 0, 0, 16, 16)] += 1
    np.testing.assert_array_equal(counts, expected)


@settings(max_examples=80)
@given(st.integers(1, 25), st.integers(1, 25), st.integers(0, 5), st.integers(0, 5))
def test_octant_matches_angle_oracle(h, w, top, left):
    box = BoundingBox(top, left, h, w)
    for r, c in itertools.product(range(top, top + h), range(left, left + w)):
        assert octant_of(r, c, box) == octant_oracle(r, c, top, left, h, w)
    np.testing.assert_array_equal(
        octant_map(h, w),
        [[octant_of(r + top, c + left, box) for c in range(w)] for r in range(h)])


@given(st.integers(1, 16), st.integers(1, 16))
def test_octant_point_symmetry(hh, ww):
    h, w = 2 * hh, 2 * ww
    octs = octant_map(h, w)
    np.testing.assert_array_equal((octs + 4) % 8, octs[::-1, ::-1])


def test_octant_rejects_outside_pixel():
    with pytest.raises(ValueError):
        octant_of(5, 5, BoundingBox(0, 0, 4, 4))
