"""Backend agreement: the compiled kernels and the pure-Python fallback
must be byte-for-byte interchangeable, float paths included."""

import random

import pytest

from swiim.kernels import _pure

_hot = pytest.importorskip("swiim.kernels._hot",
                           reason="compiled kernels not built")


def _random_buf(rng, w, h):
    return rng.randbytes(w * h * 4)


@pytest.mark.parametrize("seed", range(5))
def test_geometry_kernels_agree(seed):
    rng = random.Random(seed)
    for _ in range(20):
        w, h = rng.randint(1, 17), rng.randint(1, 17)
        buf = _random_buf(rng, w, h)
        for turns in (1, 2, 3):
            assert _pure.rotate(buf, w, h, turns) == _hot.rotate(buf, w, h, turns)
        for horizontal in (True, False):
            assert _pure.flip(buf, w, h, horizontal) == _hot.flip(buf, w, h, horizontal)
        x, y = rng.randrange(w), rng.randrange(h)
        cw, ch = rng.randint(1, w - x), rng.randint(1, h - y)
        assert (_pure.crop(buf, w, h, x, y, cw, ch)
                == _hot.crop(buf, w, h, x, y, cw, ch))


def test_lut_and_histogram_kernels_agree():
    rng = random.Random(99)
    for _ in range(20):
        w, h = rng.randint(1, 17), rng.randint(1, 17)
        buf = _random_buf(rng, w, h)
        luts = [rng.randbytes(256) for _ in range(3)]
        assert _pure.apply_luts(buf, w, h, *luts) == _hot.apply_luts(buf, w, h, *luts)
        assert _pure.channel_histograms(buf, w, h) == _hot.channel_histograms(buf, w, h)


def test_threshold_kernel_agrees_across_cutoffs():
    rng = random.Random(7)
    buf = _random_buf(rng, 16, 16)
    for k in range(0, 2551):
        cutoff = k * 0.1
        assert _pure.threshold(buf, 16, 16, cutoff) == _hot.threshold(buf, 16, 16, cutoff)


def test_hue_kernel_agrees_across_angles():
    rng = random.Random(8)
    buf = _random_buf(rng, 12, 12)
    for k in range(1, 1440):
        shift = k * 0.25
        if shift % 360.0 == 0.0:
            continue
        assert (_pure.hue_rotate(buf, 12, 12, shift % 360.0)
                == _hot.hue_rotate(buf, 12, 12, shift % 360.0))


def test_hue_kernel_agrees_on_extreme_pixels():
    # saturated primaries, near-gray pairs, half-intensity boundaries
    pixels = []
    for r in (0, 1, 127, 128, 254, 255):
        for g in (0, 127, 128, 255):
            for b in (0, 128, 255):
                pixels.append((r, g, b, 255))
    buf = b"".join(bytes(p) for p in pixels)
    n = len(pixels)
    for shift in (0.1, 59.999999, 60.0, 119.5, 180.0, 240.0, 300.0, 359.999999):
        assert _pure.hue_rotate(buf, n, 1, shift) == _hot.hue_rotate(buf, n, 1, shift)


def test_meld_kernel_agrees():
    rng = random.Random(11)
    for _ in range(30):
        bw_, bh_ = rng.randint(3, 12), rng.randint(3, 12)
        base = _random_buf(rng, bw_, bh_)
        border = rng.randint(0, min(2, (bw_ - 1) // 2, (bh_ - 1) // 2))
        iw = rng.randint(1, bw_ - 2 * border)
        ih = rng.randint(1, bh_ - 2 * border)
        insert = _random_buf(rng, iw, ih)
        x = rng.randint(border, bw_ - iw - border)
        y = rng.randint(border, bh_ - ih - border)
        color = [rng.randrange(256) for _ in range(4)]
        assert (_pure.meld(base, bw_, bh_, insert, iw, ih, x, y, border, *color)
                == _hot.meld(base, bw_, bh_, insert, iw, ih, x, y, border, *color))
