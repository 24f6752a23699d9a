# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pixel kernels.

Byte-compatible with ``_pure``: identical expression trees for the float
paths, strict IEEE double math (built without -ffast-math and with
-ffp-contract=off), so replays hash identically whichever backend runs.
"""

from libc.math cimport floor
from libc.string cimport memcpy

NAME = "compiled"


def crop(const unsigned char[::1] src, int w, int h, int x, int y, int cw, int ch):
    out = bytearray(cw * ch * 4)
    cdef unsigned char[::1] dst = out
    cdef int row, s, d, row_len = cw * 4
    for row in range(ch):
        s = ((y + row) * w + x) * 4
        d = row * row_len
        memcpy(&dst[d], &src[s], row_len)
    return bytes(out)


def rotate(const unsigned char[::1] src, int w, int h, int turns):
    out = bytearray(w * h * 4)
    cdef unsigned char[::1] dst = out
    cdef int xo, yo, s, d
    if turns == 1:
        for yo in range(w):
            for xo in range(h):
                s = ((h - 1 - xo) * w + yo) * 4
                d = (yo * h + xo) * 4
                memcpy(&dst[d], &src[s], 4)
    elif turns == 2:
        for yo in range(h):
            for xo in range(w):
                s = ((h - 1 - yo) * w + (w - 1 - xo)) * 4
                d = (yo * w + xo) * 4
                memcpy(&dst[d], &src[s], 4)
    else:
        for yo in range(w):
            for xo in range(h):
                s = (xo * w + (w - 1 - yo)) * 4
                d = (yo * h + xo) * 4
                memcpy(&dst[d], &src[s], 4)
    return bytes(out)


def flip(const unsigned char[::1] src, int w, int h, bint horizontal):
    out = bytearray(w * h * 4)
    cdef unsigned char[::1] dst = out
    cdef int xo, row, s, d, row_len = w * 4
    if horizontal:
        for row in range(h):
            for xo in range(w):
                s = (row * w + (w - 1 - xo)) * 4
                d = (row * w + xo) * 4
                memcpy(&dst[d], &src[s], 4)
    else:
        for row in range(h):
            s = (h - 1 - row) * row_len
            d = row * row_len
            memcpy(&dst[d], &src[s], row_len)
    return bytes(out)


def apply_luts(const unsigned char[::1] src, int w, int h,
               const unsigned char[::1] lut_r,
               const unsigned char[::1] lut_g,
               const unsigned char[::1] lut_b):
    out = bytearray(w * h * 4)
    cdef unsigned char[::1] dst = out
    cdef int i, n = w * h * 4
    for i in range(0, n, 4):
        dst[i] = lut_r[src[i]]
        dst[i + 1] = lut_g[src[i + 1]]
        dst[i + 2] = lut_b[src[i + 2]]
        dst[i + 3] = src[i + 3]
    return bytes(out)


def threshold(const unsigned char[::1] src, int w, int h, double cutoff):
    out = bytearray(src)
    cdef unsigned char[::1] dst = out
    cdef int i, n = w * h * 4
    cdef double luma
    cdef unsigned char v
    for i in range(0, n, 4):
        luma = (0.299 * src[i] + 0.587 * src[i + 1]) + 0.114 * src[i + 2]
        v = 255 if luma >= cutoff else 0
        dst[i] = v
        dst[i + 1] = v
        dst[i + 2] = v
    return bytes(out)


def channel_histograms(const unsigned char[::1] src, int w, int h):
    cdef long[256] hr, hg, hb
    cdef int i, n = w * h * 4
    for i in range(256):
        hr[i] = 0
        hg[i] = 0
        hb[i] = 0
    for i in range(0, n, 4):
        hr[src[i]] += 1
        hg[src[i + 1]] += 1
        hb[src[i + 2]] += 1
    return ([hr[i] for i in range(256)],
            [hg[i] for i in range(256)],
            [hb[i] for i in range(256)])


def meld(const unsigned char[::1] base, int bw_img, int bh_img,
         const unsigned char[::1] insert, int iw, int ih,
         int x, int y, int border, int br, int bg, int bb, int ba):
    out = bytearray(base)
    cdef unsigned char[::1] dst = out
    cdef int row, col, d, s
    if border > 0:
        for row in range(y - border, y + ih + border):
            for col in range(x - border, x + iw + border):
                if y <= row < y + ih and x <= col < x + iw:
                    continue
                d = (row * bw_img + col) * 4
                dst[d] = br
                dst[d + 1] = bg
                dst[d + 2] = bb
                dst[d + 3] = ba
    for row in range(ih):
        s = row * iw * 4
        d = ((y + row) * bw_img + x) * 4
        memcpy(&dst[d], &insert[s], iw * 4)
    return bytes(out)


cdef inline double _hue_to_rgb(double p, double q, double t) noexcept:
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


cdef inline unsigned char _round_channel(double v01) noexcept:
    if v01 < 0.0:
        v01 = 0.0
    elif v01 > 1.0:
        v01 = 1.0
    return <unsigned char>floor(v01 * 255.0 + 0.5)


def hue_rotate(const unsigned char[::1] src, int w, int h, double shift):
    out = bytearray(src)
    cdef unsigned char[::1] dst = out
    cdef int i, n = w * h * 4
    cdef unsigned char r, g, b
    cdef double r01, g01, b01, mx, mn, l, d, s, hue, hdeg, hk, p, q
    for i in range(0, n, 4):
        r = src[i]
        g = src[i + 1]
        b = src[i + 2]
        if r == g and g == b:
            continue
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
        dst[i] = _round_channel(_hue_to_rgb(p, q, hk + 1.0 / 3.0))
        dst[i + 1] = _round_channel(_hue_to_rgb(p, q, hk))
        dst[i + 2] = _round_channel(_hue_to_rgb(p, q, hk - 1.0 / 3.0))
    return bytes(out)
