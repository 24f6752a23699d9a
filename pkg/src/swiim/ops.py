"""The scientific editing operations.

Every function is a total, deterministic map from (Raster, params) to a
new Raster; nothing here mutates its inputs. Fixed conventions, chosen
once so that replays are bit-exact everywhere:

* channel math runs in IEEE double, then rounds half away from zero
  after clamping to [0, 1];
* brightness/contrast use the canonical [-1, 1] ranges with slope
  ``tan((contrast + 1) * pi / 4)``;
* hue adjustment is a rotation of the HSL hue angle, short-circuited to
  a bit-exact identity at 0 (mod 360);
* threshold compares Rec.601 luma against ``t * 255``;
* equalization maps each channel value through
  ``round(255 * rank_below / (N - 1))`` where ``rank_below`` counts
  strictly smaller samples; constant channels pass through unchanged.

Value-indexed mappings (tone, gains, equalize) are materialized as
256-entry lookup tables here, in one place, so both kernel backends
apply literally the same tables.
"""

from __future__ import annotations

import math

from . import kernels
from .errors import InvalidAngle, OutOfBounds, ParamOutOfRange
from .raster import ChannelGains, HueShift, MeldSpec, PixelRect, Raster, ToneParams


def crop(img: Raster, rect: PixelRect) -> Raster:
    if rect.x + rect.w > img.width or rect.y + rect.h > img.height:
        raise OutOfBounds(
            f"crop rect (x={rect.x}, y={rect.y}, w={rect.w}, h={rect.h}) "
            f"exceeds {img.width}x{img.height} image")
    if rect.w == img.width and rect.h == img.height:
        return img  # rect.x == rect.y == 0 is implied by the bounds check
    return Raster(rect.w, rect.h,
                  kernels.crop(img.pixels, img.width, img.height,
                               rect.x, rect.y, rect.w, rect.h))


def rotate(img: Raster, quarter_turns: int) -> Raster:
    if quarter_turns not in (1, 2, 3):
        raise InvalidAngle(
            f"quarter_turns must be 1, 2 or 3 (clockwise), got {quarter_turns!r}")
    out = kernels.rotate(img.pixels, img.width, img.height, quarter_turns)
    if quarter_turns == 2:
        return Raster(img.width, img.height, out)
    return Raster(img.height, img.width, out)


HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def flip(img: Raster, axis: str) -> Raster:
    if axis not in (HORIZONTAL, VERTICAL):
        raise ParamOutOfRange(f"flip axis must be 'horizontal' or 'vertical', got {axis!r}")
    return Raster(img.width, img.height,
                  kernels.flip(img.pixels, img.width, img.height, axis == HORIZONTAL))


def brightness_contrast(img: Raster, p: ToneParams) -> Raster:
    s = math.tan((p.contrast + 1.0) * math.pi / 4.0)
    lut = bytes(_round01((v / 255.0 - 0.5) * s + 0.5 + p.brightness)
                for v in range(256))
    return Raster(img.width, img.height,
                  kernels.apply_luts(img.pixels, img.width, img.height, lut, lut, lut))


def color_balance(img: Raster, g: ChannelGains) -> Raster:
    luts = [bytes(_round01(v / 255.0 * gain) for v in range(256))
            for gain in (g.r_gain, g.g_gain, g.b_gain)]
    return Raster(img.width, img.height,
                  kernels.apply_luts(img.pixels, img.width, img.height, *luts))


def hue_rotate(img: Raster, h: HueShift) -> Raster:
    shift = math.fmod(h.degrees, 360.0)
    if shift < 0.0:
        shift += 360.0
    if shift == 0.0:
        return img
    return Raster(img.width, img.height,
                  kernels.hue_rotate(img.pixels, img.width, img.height, shift))


def threshold(img: Raster, t: float) -> Raster:
    if not 0.0 <= t <= 1.0:
        raise ParamOutOfRange(f"threshold {t} outside [0, 1]")
    return Raster(img.width, img.height,
                  kernels.threshold(img.pixels, img.width, img.height, t * 255.0))


def equalize_histogram(img: Raster) -> Raster:
    hists = kernels.channel_histograms(img.pixels, img.width, img.height)
    n = img.width * img.height
    luts = [_equalize_lut(hist, n) for hist in hists]
    return Raster(img.width, img.height,
                  kernels.apply_luts(img.pixels, img.width, img.height, *luts))


def _equalize_lut(hist: list[int], n: int) -> bytes:
    if max(hist) == n:  # constant channel: leave it alone
        return bytes(range(256))
    lut = bytearray(256)
    below = 0
    for v in range(256):
        # only reaches 255 * n / (n - 1) for values above the channel max,
        # which never occur in the image; clamp keeps the table a valid byte
        lut[v] = min(255, math.floor(255.0 * below / (n - 1.0) + 0.5))
        below += hist[v]
    return bytes(lut)


def meld(base: Raster, insert: Raster, spec: MeldSpec) -> Raster:
    bw = spec.border_width
    if (spec.x - bw < 0 or spec.y - bw < 0
            or spec.x + insert.width + bw > base.width
            or spec.y + insert.height + bw > base.height):
        raise OutOfBounds(
            f"melded {insert.width}x{insert.height} image at ({spec.x}, {spec.y}) "
            f"with border {bw} exceeds {base.width}x{base.height} base")
    return Raster(base.width, base.height,
                  kernels.meld(base.pixels, base.width, base.height,
                               insert.pixels, insert.width, insert.height,
                               spec.x, spec.y, bw, *spec.border_color))


def _round01(v: float) -> int:
    if v < 0.0:
        v = 0.0
    elif v > 1.0:
        v = 1.0
    return math.floor(v * 255.0 + 0.5)


def apply_by_name(img: Raster, op: str, params, insert: Raster | None = None) -> Raster:
    """Execute an image op given its journal name and journal-shaped params.

    The session and the replay engine both route through here, so an
    interactive edit and its re-execution are literally the same code path.
    ``insert`` supplies the second image for MELD.
    """
    from . import journal  # late import: journal does not depend on ops

    if op == journal.CROP:
        return crop(img, PixelRect(params["x"], params["y"], params["w"], params["h"]))
    if op == journal.ROTATE:
        return rotate(img, params["turns"])
    if op == journal.FLIP:
        return flip(img, params["axis"])
    if op == journal.BRIGHTNESS_CONTRAST:
        return brightness_contrast(img, ToneParams(params["b"], params["c"]))
    if op == journal.COLOR_BALANCE:
        return color_balance(img, ChannelGains(params["r"], params["g"], params["b"]))
    if op == journal.HUE:
        return hue_rotate(img, HueShift(params["deg"]))
    if op == journal.THRESHOLD:
        return threshold(img, params["t"])
    if op == journal.EQUALIZE:
        return equalize_histogram(img)
    if op == journal.MELD:
        if insert is None:
            raise ParamOutOfRange("MELD requires the inserted image")
        spec = MeldSpec(params["x"], params["y"], params["bw"],
                        hex_to_color(params["bcolor"]))
        return meld(img, insert, spec)
    raise ParamOutOfRange(f"{op!r} is not an image operation")


def hex_to_color(s: str) -> tuple[int, int, int, int]:
    """rrggbbaa hex (journal form) to an RGBA tuple."""
    return (int(s[0:2], 16), int(s[2:4], 16), int(s[4:6], 16), int(s[6:8], 16))


def color_to_hex(color) -> str:
    return "%02x%02x%02x%02x" % tuple(color)
