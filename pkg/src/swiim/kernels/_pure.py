"""Pure-Python pixel kernels; fallback when the compiled backend is absent.

Every function here must produce byte-for-byte the same output as its
twin in ``_hot.pyx``. The float kernels (hue_rotate, threshold) therefore
mirror the compiled expression trees exactly: plain IEEE double adds,
multiplies, divides and compares, evaluated in the same order. Anything
that can be phrased as a per-byte table lookup goes through
``bytes.translate`` on strided slices, which runs at C speed anyway.
"""

from __future__ import annotations

from math import floor

NAME = "pure"


def crop(src: bytes, w: int, h: int, x: int, y: int, cw: int, ch: int) -> bytes:
    out = bytearray(cw * ch * 4)
    row_len = cw * 4
    for row in range(ch):
        s = ((y + row) * w + x) * 4
        out[row * row_len:(row + 1) * row_len] = src[s:s + row_len]
    return bytes(out)


def rotate(src: bytes, w: int, h: int, turns: int) -> bytes:
    if turns == 2:
        # whole-buffer reverse flips pixel order and channel order; the
        # strided reassignment puts the channels back
        rev = src[::-1]
        out = bytearray(len(src))
        out[0::4] = rev[3::4]
        out[1::4] = rev[2::4]
        out[2::4] = rev[1::4]
        out[3::4] = rev[0::4]
        return bytes(out)
    out = bytearray(len(src))
    if turns == 1:  # out(xo, yo) = in(yo, h - 1 - xo); output is h x w
        for yo in range(w):
            for xo in range(h):
                s = (((h - 1 - xo) * w) + yo) * 4
                d = (yo * h + xo) * 4
                out[d:d + 4] = src[s:s + 4]
    else:  # turns == 3: out(xo, yo) = in(w - 1 - yo, xo)
        for yo in range(w):
            for xo in range(h):
                s = ((xo * w) + (w - 1 - yo)) * 4
                d = (yo * h + xo) * 4
                out[d:d + 4] = src[s:s + 4]
    return bytes(out)


def flip(src: bytes, w: int, h: int, horizontal: bool) -> bytes:
    out = bytearray(len(src))
    row_len = w * 4
    if horizontal:
        for row in range(h):
            rev = src[row * row_len:(row + 1) * row_len][::-1]
            base = row * row_len
            out[base + 0:base + row_len:4] = rev[3::4]
            out[base + 1:base + row_len:4] = rev[2::4]
            out[base + 2:base + row_len:4] = rev[1::4]
            out[base + 3:base + row_len:4] = rev[0::4]
    else:
        for row in range(h):
            s = (h - 1 - row) * row_len
            out[row * row_len:(row + 1) * row_len] = src[s:s + row_len]
    return bytes(out)


def apply_luts(src: bytes, w: int, h: int,
               lut_r: bytes, lut_g: bytes, lut_b: bytes) -> bytes:
    out = bytearray(len(src))
    out[0::4] = src[0::4].translate(lut_r)
    out[1::4] = src[1::4].translate(lut_g)
    out[2::4] = src[2::4].translate(lut_b)
    out[3::4] = src[3::4]
    return bytes(out)


def threshold(src: bytes, w: int, h: int, cutoff: float) -> bytes:
    out = bytearray(src)
    n = w * h * 4
    for i in range(0, n, 4):
        luma = (0.299 * src[i] + 0.587 * src[i + 1]) + 0.114 * src[i + 2]
        v = 255 if luma >= cutoff else 0
        out[i] = v
        out[i + 1] = v
        out[i + 2] = v
    return bytes(out)


def channel_histograms(src: bytes, w: int, h: int) -> tuple[list[int], list[int], list[int]]:
    hists = []
    for ch in range(3):
        counts = [0] * 256
        for v in src[ch::4]:
            counts[v] += 1
        hists.append(counts)
    return hists[0], hists[1], hists[2]


def meld(base: bytes, bw_img: int, bh_img: int, insert: bytes, iw: int, ih: int,
         x: int, y: int, border: int, br: int, bg: int, bb: int, ba: int) -> bytes:
    out = bytearray(base)
    row_len = bw_img * 4
    border_px = bytes((br, bg, bb, ba))
    # border frame, drawn as full rows above/below and side runs beside
    if border > 0:
        top_row = border_px * (iw + 2 * border)
        for row in range(y - border, y):
            d = (row * bw_img + (x - border)) * 4
            out[d:d + len(top_row)] = top_row
        for row in range(y + ih, y + ih + border):
            d = (row * bw_img + (x - border)) * 4
            out[d:d + len(top_row)] = top_row
        side = border_px * border
        for row in range(y, y + ih):
            d = (row * bw_img + (x - border)) * 4
            out[d:d + len(side)] = side
            d = (row * bw_img + (x + iw)) * 4
            out[d:d + len(side)] = side
    for row in range(ih):
        s = row * iw * 4
        d = ((y + row) * bw_img + x) * 4
        out[d:d + iw * 4] = insert[s:s + iw * 4]
    return bytes(out)


def hue_rotate(src: bytes, w: int, h: int, shift: float) -> bytes:
    # shift is in (0, 360); the 0 (mod 360) identity short-circuits upstream
    out = bytearray(src)
    n = w * h * 4
    for i in range(0, n, 4):
        r = src[i]
        g = src[i + 1]
        b = src[i + 2]
        if r == g == b:
            continue  # achromatic: hue undefined, rotation is a no-op
        r01 = r / 255.0
        g01 = g / 255.0
        b01 = b / 255.0
        mx = r01 if r01 > g01 else g01
        if b01 > mx:
            mx = b01
        mn = r01 if r01 < g01 else g01
        if b01 < mn:
            mn = b01
        l = (mx + mn) / 2.0
        d = mx - mn
        if l > 0.5:
            s = d / (2.0 - mx - mn)
        else:
            s = d / (mx + mn)
        if mx == r01:
            hue = (g01 - b01) / d
            if hue < 0.0:
                hue += 6.0
        elif mx == g01:
            hue = (b01 - r01) / d + 2.0
        else:
            hue = (r01 - g01) / d + 4.0
        hdeg = hue * 60.0 + shift
        if hdeg >= 360.0:
            hdeg -= 360.0
        hk = hdeg / 360.0
        if l < 0.5:
            q = l * (1.0 + s)
        else:
            q = l + s - l * s
        p = 2.0 * l - q
        out[i] = _round_channel(_hue_to_rgb(p, q, hk + 1.0 / 3.0))
        out[i + 1] = _round_channel(_hue_to_rgb(p, q, hk))
        out[i + 2] = _round_channel(_hue_to_rgb(p, q, hk - 1.0 / 3.0))
    return bytes(out)


def _hue_to_rgb(p: float, q: float, t: float) -> float:
    if t < 0.0:
        t += 1.0
    if t > 1.0:
        t -= 1.0
    if t < 1.0 / 6.0:
        return p + (q - p) * 6.0 * t
    if t < 0.5:
        return q
    if t < 2.0 / 3.0:
        return p + (q - p) * (2.0 / 3.0 - t) * 6.0
    return p


def _round_channel(v01: float) -> int:
    if v01 < 0.0:
        v01 = 0.0
    elif v01 > 1.0:
        v01 = 1.0
    return floor(v01 * 255.0 + 0.5)
