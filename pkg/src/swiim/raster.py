"""Canonical in-memory pixel model and the parameter types of the edit ops.

A :class:`Raster` is the one representation every codec decodes into and
every operation transforms: RGBA, 8 bits per channel, row-major, alpha
defaulting to 255. Keeping pixels as immutable ``bytes`` makes rasters
safe to share across sessions/threads and trivially hashable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParamOutOfRange

RGBA = tuple[int, int, int, int]


@dataclass(frozen=True)
class Raster:
    width: int
    height: int
    pixels: bytes  # RGBA8, row-major, len == width * height * 4

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ParamOutOfRange(
                f"raster dimensions must be >= 1, got {self.width}x{self.height}")
        expected = self.width * self.height * 4
        if len(self.pixels) != expected:
            raise ParamOutOfRange(
                f"pixel buffer is {len(self.pixels)} bytes, "
                f"expected {expected} for {self.width}x{self.height} RGBA")
        if not isinstance(self.pixels, bytes):
            object.__setattr__(self, "pixels", bytes(self.pixels))

    @classmethod
    def filled(cls, width: int, height: int, color: RGBA = (0, 0, 0, 255)) -> "Raster":
        return cls(width, height, bytes(color) * (width * height))

    @classmethod
    def from_pixel_rows(cls, rows: list[list[RGBA]]) -> "Raster":
        """Build a raster from rows of (r, g, b, a) tuples; handy in tests."""
        height = len(rows)
        width = len(rows[0]) if rows else 0
        buf = bytearray()
        for row in rows:
            if len(row) != width:
                raise ParamOutOfRange("ragged pixel rows")
            for px in row:
                buf.extend(px)
        return cls(width, height, bytes(buf))

    def pixel(self, x: int, y: int) -> RGBA:
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height}")
        i = (y * self.width + x) * 4
        p = self.pixels
        return (p[i], p[i + 1], p[i + 2], p[i + 3])


@dataclass(frozen=True)
class PixelRect:
    """Crop window; bounds against a concrete raster are checked at use."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ParamOutOfRange(f"rect origin must be >= 0, got ({self.x}, {self.y})")
        if self.w < 1 or self.h < 1:
            raise ParamOutOfRange(f"rect size must be >= 1, got {self.w}x{self.h}")


@dataclass(frozen=True)
class ToneParams:
    """Brightness in [-1, 1], contrast in (-1, 1); (0, 0) is the identity."""

    brightness: float
    contrast: float

    def __post_init__(self):
        if not -1.0 <= self.brightness <= 1.0:
            raise ParamOutOfRange(f"brightness {self.brightness} outside [-1, 1]")
        if not -1.0 < self.contrast < 1.0:
            raise ParamOutOfRange(f"contrast {self.contrast} outside (-1, 1)")


@dataclass(frozen=True)
class ChannelGains:
    """Per-channel multipliers in [0, 4]; (1, 1, 1) is the identity."""

    r_gain: float
    g_gain: float
    b_gain: float

    def __post_init__(self):
        for name, g in (("r", self.r_gain), ("g", self.g_gain), ("b", self.b_gain)):
            if not 0.0 <= g <= 4.0:
                raise ParamOutOfRange(f"{name} gain {g} outside [0, 4]")


@dataclass(frozen=True)
class HueShift:
    """Hue rotation in degrees, interpreted modulo 360; 0 is the identity."""

    degrees: float


@dataclass(frozen=True)
class MeldSpec:
    """Placement of an inserted image: origin of the insert in the base
    image, plus an explicit border drawn around it."""

    x: int
    y: int
    border_width: int
    border_color: RGBA

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ParamOutOfRange(f"meld origin must be >= 0, got ({self.x}, {self.y})")
        if self.border_width < 0:
            raise ParamOutOfRange(f"border width {self.border_width} < 0")
        if len(self.border_color) != 4 or any(not 0 <= c <= 255 for c in self.border_color):
            raise ParamOutOfRange(f"border color {self.border_color!r} is not RGBA8")
