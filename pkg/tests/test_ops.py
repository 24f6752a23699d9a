import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swiim import ops
from swiim.errors import InvalidAngle, OutOfBounds, ParamOutOfRange
from swiim.raster import ChannelGains, HueShift, MeldSpec, PixelRect, Raster, ToneParams

from conftest import random_raster
from oracles import (
    crop_oracle,
    flip_h_oracle,
    flip_v_oracle,
    from_grid,
    meld_oracle,
    rotate_oracle,
    to_grid,
)

A = (10, 20, 30, 40)
B = (200, 150, 100, 50)


def small_raster(draw):
    w = draw(st.integers(1, 16))
    h = draw(st.integers(1, 16))
    pixels = draw(st.binary(min_size=w * h * 4, max_size=w * h * 4))
    return Raster(w, h, pixels)


raster_st = st.composite(small_raster)()


# --- crop -------------------------------------------------------------------

def test_crop_full_frame_is_identity(rng):
    img = random_raster(rng)
    assert ops.crop(img, PixelRect(0, 0, img.width, img.height)).pixels == img.pixels


def test_crop_matches_coordinate_formula():
    img = Raster.from_pixel_rows([
        [(1, 1, 1, 255), (2, 2, 2, 255), (3, 3, 3, 255)],
        [(4, 4, 4, 255), (5, 5, 5, 255), (6, 6, 6, 255)],
    ])
    out = ops.crop(img, PixelRect(1, 0, 2, 2))
    assert (out.width, out.height) == (2, 2)
    assert to_grid(out) == crop_oracle(to_grid(img), 1, 0, 2, 2)
    assert out.pixel(0, 0) == (2, 2, 2, 255)
    assert out.pixel(1, 1) == (6, 6, 6, 255)


def test_crop_out_of_bounds_reports_rect():
    img = Raster.filled(3, 2, A)
    with pytest.raises(OutOfBounds) as exc:
        ops.crop(img, PixelRect(2, 0, 2, 2))
    assert "x=2" in str(exc.value) and "3x2" in str(exc.value)


def test_crop_rect_validation():
    with pytest.raises(ParamOutOfRange):
        PixelRect(-1, 0, 1, 1)
    with pytest.raises(ParamOutOfRange):
        PixelRect(0, 0, 0, 1)


# --- rotate -----------------------------------------------------------------

def test_rotate_half_turn_is_involution(rng):
    img = random_raster(rng)
    assert ops.rotate(ops.rotate(img, 2), 2).pixels == img.pixels


def test_rotate_quarter_turn_permutation():
    img = Raster.from_pixel_rows([[A, B]])  # 2x1: A left, B right
    out = ops.rotate(img, 1)
    assert (out.width, out.height) == (1, 2)
    assert out.pixel(0, 0) == A and out.pixel(0, 1) == B  # A above B


def test_rotate_four_quarter_turns_is_identity(rng):
    img = random_raster(rng)
    out = img
    for _ in range(4):
        out = ops.rotate(out, 1)
    assert out.pixels == img.pixels


def test_rotate_rejects_other_angles():
    img = Raster.filled(2, 2, A)
    for turns in (0, 4, -1, 13):
        with pytest.raises(InvalidAngle):
            ops.rotate(img, turns)


@given(raster_st)
@settings(max_examples=40)
def test_rotate_composition_matches_oracle(img):
    grid = to_grid(img)
    for turns in (1, 2, 3):
        assert to_grid(ops.rotate(img, turns)) == rotate_oracle(grid, turns)


# --- flip -------------------------------------------------------------------

def test_flip_is_involution(rng):
    img = random_raster(rng)
    for axis in ("horizontal", "vertical"):
        assert ops.flip(ops.flip(img, axis), axis).pixels == img.pixels


def test_flip_horizontal_mirrors():
    img = Raster.from_pixel_rows([[A, B]])
    out = ops.flip(img, "horizontal")
    assert out.pixel(0, 0) == B and out.pixel(1, 0) == A


def test_flip_both_axes_equals_half_turn(rng):
    img = random_raster(rng)
    via_flips = ops.flip(ops.flip(img, "horizontal"), "vertical")
    assert via_flips.pixels == ops.rotate(img, 2).pixels


def test_flip_rejects_unknown_axis():
    with pytest.raises(ParamOutOfRange):
        ops.flip(Raster.filled(1, 1), "diagonal")


@given(raster_st)
@settings(max_examples=40)
def test_flip_matches_oracle(img):
    grid = to_grid(img)
    assert to_grid(ops.flip(img, "horizontal")) == flip_h_oracle(grid)
    assert to_grid(ops.flip(img, "vertical")) == flip_v_oracle(grid)


# --- brightness/contrast ------------------------------------------------------

def test_tone_identity_is_bit_exact(rng):
    img = random_raster(rng)
    assert ops.brightness_contrast(img, ToneParams(0.0, 0.0)).pixels == img.pixels


def test_tone_brightness_worked_scalar():
    img = Raster.filled(1, 1, (100, 100, 100, 255))
    out = ops.brightness_contrast(img, ToneParams(0.2, 0.0))
    assert out.pixel(0, 0) == (151, 151, 151, 255)


def test_tone_saturates_at_255():
    img = Raster.filled(1, 1, (255, 255, 255, 7))
    out = ops.brightness_contrast(img, ToneParams(0.5, 0.0))
    assert out.pixel(0, 0) == (255, 255, 255, 7)


def test_tone_params_validated():
    with pytest.raises(ParamOutOfRange):
        ToneParams(1.5, 0.0)
    with pytest.raises(ParamOutOfRange):
        ToneParams(0.0, 1.0)  # contrast range is open
    with pytest.raises(ParamOutOfRange):
        ToneParams(0.0, -1.0)


@given(raster_st, st.floats(-1, 1), st.floats(-0.999999, 0.999999))
@settings(max_examples=40)
def test_tone_preserves_alpha_and_dims(img, b, c):
    out = ops.brightness_contrast(img, ToneParams(b, c))
    assert (out.width, out.height) == (img.width, img.height)
    assert out.pixels[3::4] == img.pixels[3::4]


# --- color balance ------------------------------------------------------------

def test_gains_identity(rng):
    img = random_raster(rng)
    assert ops.color_balance(img, ChannelGains(1.0, 1.0, 1.0)).pixels == img.pixels


def test_gains_worked_scalar():
    img = Raster.filled(1, 1, (100, 50, 200, 255))
    out = ops.color_balance(img, ChannelGains(2.0, 1.0, 0.5))
    assert out.pixel(0, 0) == (200, 50, 100, 255)


def test_gains_zero_blacks_rgb_keeps_alpha():
    img = Raster.filled(2, 2, (9, 8, 7, 123))
    out = ops.color_balance(img, ChannelGains(0.0, 0.0, 0.0))
    assert out.pixel(1, 1) == (0, 0, 0, 123)


def test_gains_validated():
    with pytest.raises(ParamOutOfRange):
        ChannelGains(4.5, 1.0, 1.0)
    with pytest.raises(ParamOutOfRange):
        ChannelGains(1.0, -0.1, 1.0)


# --- hue ----------------------------------------------------------------------

def test_hue_zero_short_circuits(rng):
    img = random_raster(rng)
    assert ops.hue_rotate(img, HueShift(0.0)) is img


def test_hue_full_turn_short_circuits(rng):
    img = random_raster(rng)
    assert ops.hue_rotate(img, HueShift(360.0)).pixels == img.pixels
    assert ops.hue_rotate(img, HueShift(-720.0)).pixels == img.pixels


def test_hue_rotates_primaries():
    red = Raster.filled(1, 1, (255, 0, 0, 255))
    assert ops.hue_rotate(red, HueShift(120.0)).pixel(0, 0) == (0, 255, 0, 255)
    green = Raster.filled(1, 1, (0, 255, 0, 255))
    assert ops.hue_rotate(green, HueShift(120.0)).pixel(0, 0) == (0, 0, 255, 255)


@given(raster_st, st.floats(-720, 720, allow_nan=False))
@settings(max_examples=40)
def test_hue_preserves_alpha_and_grays(img, deg):
    out = ops.hue_rotate(img, HueShift(deg))
    assert out.pixels[3::4] == img.pixels[3::4]
    for i in range(0, len(img.pixels), 4):
        r, g, b = img.pixels[i:i + 3]
        if r == g == b:
            assert out.pixels[i:i + 3] == img.pixels[i:i + 3]


# --- threshold ------------------------------------------------------------------

def test_threshold_zero_is_all_white(rng):
    img = random_raster(rng)
    out = ops.threshold(img, 0.0)
    assert set(out.pixels[0::4]) == {255}
    assert set(out.pixels[1::4]) == {255}
    assert set(out.pixels[2::4]) == {255}


def test_threshold_worked_scalar():
    img = Raster.filled(1, 1, (100, 100, 100, 255))
    assert ops.threshold(img, 0.5).pixel(0, 0) == (0, 0, 0, 255)


def test_threshold_outputs_two_colors(rng):
    img = random_raster(rng)
    out = ops.threshold(img, 0.5)
    triples = {tuple(out.pixels[i:i + 3]) for i in range(0, len(out.pixels), 4)}
    assert triples <= {(0, 0, 0), (255, 255, 255)}
    assert out.pixels[3::4] == img.pixels[3::4]


def test_threshold_validated():
    with pytest.raises(ParamOutOfRange):
        ops.threshold(Raster.filled(1, 1), 1.1)


# --- equalize -------------------------------------------------------------------

def test_equalize_constant_image_unchanged():
    img = Raster.filled(5, 4, (77, 77, 77, 3))
    assert ops.equalize_histogram(img).pixels == img.pixels


def test_equalize_worked_values():
    img = Raster.from_pixel_rows([
        [(10, 10, 10, 255), (10, 10, 10, 255)],
        [(20, 20, 20, 255), (30, 30, 30, 255)],
    ])
    out = ops.equalize_histogram(img)
    assert out.pixel(0, 0) == (0, 0, 0, 255)      # value 10 -> 0
    assert out.pixel(1, 0) == (0, 0, 0, 255)      # value 10 -> 0
    assert out.pixel(0, 1) == (170, 170, 170, 255)  # value 20 -> 170
    assert out.pixel(1, 1) == (255, 255, 255, 255)  # value 30 -> 255


@given(raster_st)
@settings(max_examples=40)
def test_equalize_mapping_is_monotone(img):
    out = ops.equalize_histogram(img)
    for ch in range(3):
        pairs = sorted(zip(img.pixels[ch::4], out.pixels[ch::4]))
        for (v1, m1), (v2, m2) in zip(pairs, pairs[1:]):
            assert m1 <= m2
            if v1 == v2:
                assert m1 == m2


# --- meld -----------------------------------------------------------------------

def test_meld_full_overwrite():
    base = Raster.filled(3, 3, A)
    insert = Raster.filled(3, 3, B)
    out = ops.meld(base, insert, MeldSpec(0, 0, 0, (0, 0, 0, 255)))
    assert out.pixels == insert.pixels


def test_meld_border_ring():
    base = Raster.filled(3, 3, (9, 9, 9, 255))
    insert = Raster.filled(1, 1, (1, 2, 3, 4))
    out = ops.meld(base, insert, MeldSpec(1, 1, 1, (0, 0, 0, 255)))
    assert out.pixel(1, 1) == (1, 2, 3, 4)
    ring = [(x, y) for y in range(3) for x in range(3) if (x, y) != (1, 1)]
    assert all(out.pixel(x, y) == (0, 0, 0, 255) for x, y in ring)


def test_meld_out_of_bounds():
    base = Raster.filled(3, 3, A)
    insert = Raster.filled(2, 2, B)
    with pytest.raises(OutOfBounds):
        ops.meld(base, insert, MeldSpec(2, 2, 0, (0, 0, 0, 255)))
    with pytest.raises(OutOfBounds):
        ops.meld(base, insert, MeldSpec(0, 0, 1, (0, 0, 0, 255)))


def test_meld_identity_on_self(rng):
    img = random_raster(rng)
    out = ops.meld(img, img, MeldSpec(0, 0, 0, (0, 0, 0, 0)))
    assert out.pixels == img.pixels


def test_meld_matches_oracle(rng):
    for _ in range(30):
        base = random_raster(rng, rng.randint(3, 9), rng.randint(3, 9))
        bw = rng.randint(0, min(2, (base.width - 1) // 2, (base.height - 1) // 2))
        iw = rng.randint(1, base.width - 2 * bw)
        ih = rng.randint(1, base.height - 2 * bw)
        insert = random_raster(rng, iw, ih)
        x = rng.randint(bw, base.width - iw - bw)
        y = rng.randint(bw, base.height - ih - bw)
        color = tuple(rng.randrange(256) for _ in range(4))
        out = ops.meld(base, insert, MeldSpec(x, y, bw, color))
        assert to_grid(out) == meld_oracle(to_grid(base), to_grid(insert), x, y, bw, color)


# --- cross-op properties -----------------------------------------------------

@given(raster_st)
@settings(max_examples=40)
def test_geometry_preserves_pixel_multiset(img):
    start = Counter(img.pixels[i:i + 4] for i in range(0, len(img.pixels), 4))
    for turns in (1, 2, 3):
        out = ops.rotate(img, turns)
        assert Counter(out.pixels[i:i + 4] for i in range(0, len(out.pixels), 4)) == start
    for axis in ("horizontal", "vertical"):
        out = ops.flip(img, axis)
        assert Counter(out.pixels[i:i + 4] for i in range(0, len(out.pixels), 4)) == start


def test_ops_do_not_mutate_input(rng):
    img = random_raster(rng, 8, 8)
    before = bytes(img.pixels)
    ops.rotate(img, 1)
    ops.flip(img, "horizontal")
    ops.brightness_contrast(img, ToneParams(0.3, 0.2))
    ops.threshold(img, 0.4)
    ops.equalize_histogram(img)
    ops.hue_rotate(img, HueShift(45.0))
    assert img.pixels == before
