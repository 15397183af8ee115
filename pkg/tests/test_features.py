import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from digitfeat.errors import EmptyImage, WrongFrameSize
from digitfeat.features import (EXTRACTORS, FEATURE_SETS, angular16, centroid16, dcg40,
                                extract_set, get_set, run36, shadow72, span8, span128)

BOX_RELATIVE = ("shadow72", "centroid16", "angular16", "run36")

frames = arrays(bool, (32, 32)).filter(lambda a: a.any())
small = arrays(bool, st.tuples(st.integers(1, 14), st.integers(1, 14))).filter(lambda a: a.any())


def solid(h=32, w=32):
    return np.ones((h, w), bool)


# --- shadow -----------------------------------------------------------------

def test_shadow_all_black():
    f = shadow72(solid()).reshape(8, 3, 3)
    np.testing.assert_array_equal(f[..., 0], 1.0)
    np.testing.assert_array_equal(f[..., 1], 0.0)
    np.testing.assert_array_equal(f[..., 2], 1.0)


def test_shadow_single_octant():
    img = np.zeros((32, 32), bool)
    img[0, 0] = img[31, 31] = True  # fix a 32x32 box
    img[17:20, 26:30] = True        # right of center, below the midline: octant 0
    f = shadow72(img).reshape(8, 9)
    assert f[0].any()
    # the two box corners sit on diagonals and land in octants 1 and 5
    for k in (2, 3, 4, 6, 7):
        np.testing.assert_array_equal(f[k], 0.0)


def test_shadow_plus_sign_against_oracle():
    img = np.zeros((8, 8), bool)
    img[3:5, :] = True
    img[:, 3:5] = True
    np.testing.assert_allclose(shadow72(img), oracles.shadow(oracles.to_lists(img)), atol=1e-12)


def test_shadow_random_against_oracle():
    rng = np.random.default_rng(11)
    for _ in range(40):
        img = oracles.random_box_image(rng)
        np.testing.assert_allclose(shadow72(img), oracles.shadow(oracles.to_lists(img)),
                                   atol=1e-9)


# --- centroids --------------------------------------------------------------

def test_centroid_single_location():
    img = np.zeros((16, 16), bool)
    img[0, 15] = img[15, 0] = True  # box corners, octants 7 and 3
    img[10, 3] = True               # octant 3 as well
    f = centroid16(img).reshape(8, 2)
    np.testing.assert_allclose(f[3], [(15.5 + 10.5) / 2 / 16, (0.5 + 3.5) / 2 / 16])
    np.testing.assert_allclose(f[7], [0.5 / 16, 15.5 / 16])
    # empty octant 0 reports its triangle centroid: (C + R + BR) / 3
    np.testing.assert_allclose(f[0], [(0.5 + 0.5 + 1) / 3, (0.5 + 1 + 1) / 3])


def test_centroid_all_black_against_oracle():
    img = solid()
    np.testing.assert_allclose(centroid16(img), oracles.centroids(oracles.to_lists(img)),
                               atol=1e-12)


def test_centroid_random_against_oracle():
    rng = np.random.default_rng(12)
    for _ in range(40):
        img = oracles.random_box_image(rng)
        np.testing.assert_allclose(centroid16(img), oracles.centroids(oracles.to_lists(img)),
                                   atol=1e-9)


# --- angular distance -------------------------------------------------------

def test_angular_all_black():
    np.testing.assert_array_equal(angular16(solid()), 0.0)


def test_angular_two_corner_pixels():
    img = np.zeros((16, 16), bool)
    img[0, 0] = img[15, 15] = True
    diag = math.hypot(16, 16)
    f = angular16(img).reshape(4, 4)
    np.testing.assert_array_equal(f[0], 0.0)   # top-left corner pixel is ink
    np.testing.assert_array_equal(f[2], 0.0)   # bottom-right likewise
    # top-right: only the ray along the top edge reaches (0, 0); the rest miss
    np.testing.assert_allclose(f[1], [15 / diag, 1.0, 1.0, 1.0])
    np.testing.assert_allclose(f[3], [15 / diag, 1.0, 1.0, 1.0])


def test_angular_random_against_fine_step_oracle():
    rng = np.random.default_rng(13)
    for _ in range(30):
        img = oracles.random_box_image(rng)
        np.testing.assert_allclose(angular16(img), oracles.angular(oracles.to_lists(img)),
                                   atol=0.1)


# --- effective span ---------------------------------------------------------

def test_span8_examples():
    np.testing.assert_array_equal(span8(solid()), 0.0)
    np.testing.assert_array_equal(span8(np.zeros((32, 32), bool)), 1.0)
    img = np.zeros((32, 32), bool)
    img[:, 8] = True
    np.testing.assert_allclose(span8(img), [8 / 32, 23 / 32] * 4)


def test_span128_examples():
    np.testing.assert_array_equal(span128(np.zeros((32, 32), bool)), 1.0)
    np.testing.assert_array_equal(span128(solid()), 0.0)
    img = np.zeros((32, 32), bool)
    img[0, 0] = True
    f = span128(img)
    expected = [0, 31 / 32] + [1.0, 1.0] * 31 + [0, 31 / 32] + [1.0, 1.0] * 31
    np.testing.assert_allclose(f, expected)


@pytest.mark.parametrize("fn", [span8, span128, dcg40])
def test_frame_extractors_reject_other_sizes(fn):
    with pytest.raises(WrongFrameSize):
        fn(np.ones((16, 32), bool))


# --- dynamic centre of gravity ----------------------------------------------

def test_dcg_all_black_against_oracle():
    f = dcg40(solid())
    np.testing.assert_allclose(f[:8], np.array([8, 8, 8, 24, 24, 8, 24, 24]) / 32)
    np.testing.assert_allclose(f, oracles.dcg(oracles.to_lists(solid())), atol=1e-12)


def test_dcg_single_pixel():
    img = np.zeros((32, 32), bool)
    img[10, 10] = True
    f = dcg40(img).reshape(20, 2)
    # root split at (11, 11): the pixel sits in level-1 region 0
    np.testing.assert_allclose(f[0], [10.5 / 32, 10.5 / 32])
    np.testing.assert_allclose(f[3], [(11 + 32) / 2 / 32, (11 + 32) / 2 / 32])
    children_of_first = f[4:8]
    assert any(np.allclose(p, [10.5 / 32, 10.5 / 32]) for p in children_of_first)
    np.testing.assert_allclose(f.ravel(), oracles.dcg(oracles.to_lists(img)), atol=1e-12)


def test_dcg_empty_frame():
    with pytest.raises(EmptyImage):
        dcg40(np.zeros((32, 32), bool))


# --- longest runs -----------------------------------------------------------

def test_run36_all_black():
    f = run36(solid()).reshape(9, 4)
    np.testing.assert_allclose(f[:, 0], 0.5)
    np.testing.assert_allclose(f[:, 1], 0.5)
    np.testing.assert_allclose(f, np.reshape(oracles.longest_runs(oracles.to_lists(solid())),
                                             (9, 4)))


def test_run36_single_segment():
    img = np.zeros((16, 16), bool)
    img[0, 15] = img[15, 0] = True
    img[2, 1:6] = True
    f = run36(img).reshape(9, 4)
    assert f[0, 0] == 5 / (16 * 16)
    # region (2, 2) (rows and columns 8..15) holds no ink
    assert f[8, 0] == 0.0


def test_run36_random_against_oracle():
    rng = np.random.default_rng(14)
    for _ in range(60):
        img = oracles.random_image(rng, 12, 12)
        np.testing.assert_allclose(run36(img), oracles.longest_runs(oracles.to_lists(img)),
                                   atol=1e-9)


# --- shared contracts -------------------------------------------------------

@pytest.mark.parametrize("name", list(EXTRACTORS))
def test_dimension_contract(name):
    fn, dim = EXTRACTORS[name]
    rng = np.random.default_rng(3)
    assert fn(oracles.random_image(rng, 32, 32)).shape == (dim,)


@pytest.mark.parametrize("name", BOX_RELATIVE)
def test_box_relative_empty_image(name):
    with pytest.raises(EmptyImage):
        EXTRACTORS[name][0](np.zeros((32, 32), bool))


@settings(max_examples=40, deadline=None)
@given(frames)
def test_range_and_determinism(img):
    for fn, _ in EXTRACTORS.values():
        a = fn(img)
        assert np.all((a >= 0) & (a <= 1))
        np.testing.assert_array_equal(a, fn(img.copy()))


@settings(max_examples=30, deadline=None)
@given(small, st.integers(0, 18), st.integers(0, 18))
def test_translation_invariance(glyph, dr, dc):
    a = np.zeros((32, 32), bool)
    b = np.zeros((32, 32), bool)
    h, w = glyph.shape
    a[:h, :w] = glyph
    b[dr:dr + h, dc:dc + w] = glyph
    for name in BOX_RELATIVE:
        np.testing.assert_array_equal(EXTRACTORS[name][0](a), EXTRACTORS[name][0](b))


def test_span_shifts_with_translation():
    a = np.zeros((32, 32), bool)
    a[:, 8] = True
    b = np.roll(a, 3, axis=1)
    np.testing.assert_allclose(span8(b)[0::2] - span8(a)[0::2], 3 / 32)
    np.testing.assert_allclose(span8(b)[1::2] - span8(a)[1::2], -3 / 32)


# --- feature sets -----------------------------------------------------------

@pytest.mark.parametrize("set_id,dim", [("Set1", 88), ("Set2", 24), ("Set3", 40), ("Set4", 36),
                                        ("Set5", 128), ("Set6", 100), ("Set7", 124)])
def test_set_dimensions(set_id, dim):
    img = oracles.random_image(np.random.default_rng(5), 32, 32)
    assert get_set(set_id).dimension == dim
    assert extract_set(img, set_id).shape == (dim,)


def test_set6_starts_with_run36():
    img = oracles.random_image(np.random.default_rng(6), 32, 32)
    np.testing.assert_array_equal(extract_set(img, "Set6")[:36], run36(img))


def test_set_lookup():
    assert get_set("Set#7") is FEATURE_SETS["Set7"]
    with pytest.raises(KeyError):
        get_set("Set8")
