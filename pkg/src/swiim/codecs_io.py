"""Decode/encode the four supported file formats and hash canonical pixels.

All codecs normalize into the canonical RGBA8 raster on import; the
content hash is computed over that raster's canonical serialization
(4-byte big-endian width, 4-byte big-endian height, then the RGBA
buffer), never over encoded file bytes. Two encodings of the same
pixels therefore hash identically regardless of container format.

PNG, JPEG and TIFF go through Pillow. BMP is implemented here directly:
Pillow writes 24-bit BMPs, which silently drops alpha and would break
the lossless round-trip contract, so we emit 32-bit BI_BITFIELDS BMPs
(BITMAPV4HEADER with an explicit alpha mask) and read the common 24/32
bit variants back.

Format detection goes by magic bytes only; a declared format is merely
cross-checked. Extensions lie.
"""

from __future__ import annotations

import hashlib
import io
import struct
import warnings as _warnings

from PIL import Image, ImageFile

from .errors import CorruptFile, EncodeError, FormatMismatch, ParamOutOfRange, UnsupportedFormat
from .raster import Raster

PNG = "png"
JPEG = "jpeg"
BMP = "bmp"
TIFF = "tiff"

SUPPORTED_FORMATS = (PNG, JPEG, BMP, TIFF)

#: accepted spellings on input (CLI flags, EXPORT entries, declared formats)
_FORMAT_ALIASES = {
    "png": PNG,
    "jpg": JPEG,
    "jpeg": JPEG,
    "bmp": BMP,
    "tif": TIFF,
    "tiff": TIFF,
}

DEFAULT_JPEG_QUALITY = 95

# Pillow refuses truncated files mid-decode by default; keep that strict
# behaviour (a corrupt upload must error, never yield a half image).
ImageFile.LOAD_TRUNCATED_IMAGES = False


def content_hash(r: Raster) -> str:
    """sha-256 over the canonical serialization; the raster's identity."""
    head = struct.pack(">II", r.width, r.height)
    return hashlib.sha256(head + r.pixels).hexdigest()


def normalize_format(name: str) -> str:
    try:
        return _FORMAT_ALIASES[name.strip().lower()]
    except KeyError:
        raise UnsupportedFormat(
            f"format {name!r} not supported (expected one of jpg, tiff, png, bmp)") from None


def detect_format(data: bytes) -> str:
    if data.startswith(b"\x89PNG\r\n\x1a\n"):
        return PNG
    if data.startswith(b"\xff\xd8\xff"):
        return JPEG
    if data.startswith(b"BM"):
        return BMP
    if data.startswith(b"II*\x00") or data.startswith(b"MM\x00*"):
        return TIFF
    raise UnsupportedFormat("unrecognized image data (supported: jpg, tiff, png, bmp)")


def import_image(data: bytes, declared_format: str | None = None
                 ) -> tuple[Raster, str, list[str]]:
    """Decode bytes into a canonical raster.

    Returns (raster, detected_format, warnings). ``declared_format`` is
    cross-checked against the magic bytes and a FormatMismatch raised if
    they disagree.
    """
    detected = detect_format(data)
    if declared_format is not None:
        declared = normalize_format(declared_format)
        if declared != detected:
            raise FormatMismatch(
                f"declared format {declared} but magic bytes say {detected}")

    if detected == BMP:
        raster, warnings = _decode_bmp(data)
        return raster, detected, warnings

    warnings: list[str] = []
    try:
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore")  # structured warnings are our API
            img = Image.open(io.BytesIO(data))
            img.load()
    except Exception as exc:
        raise CorruptFile(f"cannot decode {detected} data: {exc}") from exc

    if detected == PNG and len(data) > 24 and data[24] == 16:
        warnings.append("16-bit samples downconverted to 8-bit (high byte)")
    if detected == TIFF:
        bits = img.tag_v2.get(258) if hasattr(img, "tag_v2") else None
        if bits and max(bits) > 8:
            warnings.append("16-bit samples downconverted to 8-bit (high byte)")
    if img.info.get("icc_profile") or img.info.get("exif"):
        warnings.append("embedded metadata stripped on import")

    raster = _to_raster(img)
    return raster, detected, warnings


def _to_raster(img: Image.Image) -> Raster:
    if img.mode in ("I;16", "I;16L"):
        # little-endian 16-bit gray: high byte is the second of each pair
        high = img.tobytes()[1::2]
        img = Image.frombytes("L", img.size, high)
    elif img.mode in ("I;16B", "I;16N"):
        high = img.tobytes()[0::2]
        img = Image.frombytes("L", img.size, high)
    elif img.mode == "I":
        img = img.point(lambda v: v >> 8, mode="L")
    if img.mode != "RGBA":
        img = img.convert("RGBA")
    w, h = img.size
    return Raster(w, h, img.tobytes())


def export_image(r: Raster, format: str, quality: int = DEFAULT_JPEG_QUALITY) -> bytes:
    """Encode a raster; png/bmp/tiff are lossless, jpeg honours ``quality``."""
    fmt = normalize_format(format)
    if not 1 <= quality <= 100:
        raise ParamOutOfRange(f"jpeg quality {quality} outside [1, 100]")
    if fmt == BMP:
        return _encode_bmp(r)

    img = Image.frombytes("RGBA", (r.width, r.height), r.pixels)
    buf = io.BytesIO()
    try:
        if fmt == PNG:
            img.save(buf, "PNG")
        elif fmt == TIFF:
            img.save(buf, "TIFF", compression=None)
        else:
            # jpeg: alpha is dropped, not blended. Subsampling pinned to
            # 4:4:4 so the recorded quality fully determines the encode
            # (and chroma error stays bounded on fine detail).
            img.convert("RGB").save(buf, "JPEG", quality=quality, subsampling=0)
    except Exception as exc:
        raise EncodeError(f"cannot encode {fmt}: {exc}") from exc
    return buf.getvalue()


# --- BMP (32-bit, BI_BITFIELDS, bottom-up) ---------------------------------

_BI_RGB = 0
_BI_BITFIELDS = 3


def _encode_bmp(r: Raster) -> bytes:
    # BITMAPV4HEADER: the oldest header that can declare an alpha mask
    row_len = r.width * 4
    image_size = row_len * r.height
    data_offset = 14 + 108
    header = struct.pack("<2sIHHI", b"BM", data_offset + image_size, 0, 0, data_offset)
    v4 = struct.pack(
        "<IiiHHIIiiII4I",
        108, r.width, r.height, 1, 32, _BI_BITFIELDS, image_size,
        2835, 2835, 0, 0,
        0x00FF0000, 0x0000FF00, 0x000000FF, 0xFF000000)
    v4 += struct.pack("<I", 0x73524742)  # LCS 'sRGB'
    v4 += bytes(36 + 12)  # endpoints + gammas, unused for sRGB
    rows = []
    px = r.pixels
    for y in range(r.height - 1, -1, -1):
        row = bytearray(row_len)
        base = y * row_len
        row[0::4] = px[base + 2:base + row_len:4]  # B
        row[1::4] = px[base + 1:base + row_len:4]  # G
        row[2::4] = px[base + 0:base + row_len:4]  # R
        row[3::4] = px[base + 3:base + row_len:4]  # A
        rows.append(bytes(row))
    return header + v4 + b"".join(rows)


def _decode_bmp(data: bytes) -> tuple[Raster, list[str]]:
    warnings: list[str] = []
    try:
        if len(data) < 54:
            raise CorruptFile("BMP data truncated")
        magic, _file_size, _r1, _r2, data_offset = struct.unpack_from("<2sIHHI", data, 0)
        if magic != b"BM":
            raise CorruptFile("not a BMP file")
        header_size = struct.unpack_from("<I", data, 14)[0]
        if header_size < 40:
            raise CorruptFile(f"unsupported BMP header size {header_size}")
        width, height, _planes, bpp, compression = struct.unpack_from(
            "<iiHHI", data, 18)
        top_down = height < 0
        height = abs(height)
        if width < 1 or height < 1:
            raise CorruptFile(f"invalid BMP dimensions {width}x{height}")
        if bpp not in (24, 32):
            raise CorruptFile(f"unsupported BMP bit depth {bpp}")
        has_alpha = False
        if compression == _BI_BITFIELDS:
            if bpp != 32:
                raise CorruptFile("BI_BITFIELDS BMP must be 32-bit")
            masks = struct.unpack_from("<4I", data, 54)
            if masks[:3] != (0x00FF0000, 0x0000FF00, 0x000000FF):
                raise CorruptFile("unsupported BMP channel masks")
            has_alpha = masks[3] == 0xFF000000
        elif compression != _BI_RGB:
            raise CorruptFile(f"unsupported BMP compression {compression}")

        bytes_per_px = bpp // 8
        stride = (width * bytes_per_px + 3) & ~3
        need = data_offset + stride * height
        if len(data) < need:
            raise CorruptFile("BMP pixel data truncated")

        out = bytearray(width * height * 4)
        for row in range(height):
            src_row = row if top_down else height - 1 - row
            s = data_offset + src_row * stride
            d = row * width * 4
            line = data[s:s + width * bytes_per_px]
            if bpp == 32:
                out[d + 0:d + width * 4:4] = line[2::4]
                out[d + 1:d + width * 4:4] = line[1::4]
                out[d + 2:d + width * 4:4] = line[0::4]
                if has_alpha:
                    out[d + 3:d + width * 4:4] = line[3::4]
                else:
                    out[d + 3:d + width * 4:4] = b"\xff" * width
            else:
                out[d + 0:d + width * 4:4] = line[2::3]
                out[d + 1:d + width * 4:4] = line[1::3]
                out[d + 2:d + width * 4:4] = line[0::3]
                out[d + 3:d + width * 4:4] = b"\xff" * width
        return Raster(width, height, bytes(out)), warnings
    except CorruptFile:
        raise
    except Exception as exc:
        raise CorruptFile(f"cannot decode BMP data: {exc}") from exc


def load_raster(path: str) -> tuple[Raster, str, list[str]]:
    """Convenience wrapper: read a file and import it."""
    with open(path, "rb") as fh:
        return import_image(fh.read())
