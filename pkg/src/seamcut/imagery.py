"""Image and mask containers plus bit-exact file I/O.

Pixel data lives in NumPy arrays: RGB images as float64 intensities in
[0, 1] (8-bit channels map to ``c / 255`` on load and ``round(v * 255)``
half-up on save; no gamma or color management), instance masks as integer
ids with 0 meaning background.

Supported formats are deliberately narrow: 8-bit RGB PNG and binary PPM
(P6, maxval 255) for images; 8/16-bit grayscale PNG and binary PGM (P5,
maxval <= 65535) for masks. PNG files are written by an in-process encoder
with fixed settings (no scanline filtering, one zlib stream), so identical
pixels always produce identical bytes; decoding is delegated to Pillow
after the header has been validated against the allowed bit depths and
color types.
"""
from __future__ import annotations

import io
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import CorruptDataError, UnsupportedFormatError

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


@dataclass(frozen=True)
class RgbImage:
    """An H x W x 3 grid of float64 channel intensities in [0, 1]."""

    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"expected an (H, W, 3) array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if np.any(data < 0.0) or np.any(data > 1.0) or not np.all(np.isfinite(data)):
            raise ValueError("channel values must lie in [0, 1]")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class InstanceMask:
    """An H x W grid of instance ids; 0 is background, k > 0 is instance k."""

    ids: np.ndarray

    def __post_init__(self):
        ids = np.array(self.ids)
        if ids.ndim != 2:
            raise ValueError(f"expected an (H, W) array, got shape {ids.shape}")
        if ids.shape[0] < 1 or ids.shape[1] < 1:
            raise ValueError("mask must be at least 1x1")
        if not np.issubdtype(ids.dtype, np.integer):
            raise ValueError("instance ids must be integers")
        if np.any(ids < 0):
            raise ValueError("instance ids must be nonnegative")
        ids = ids.astype(np.int64)
        ids.setflags(write=False)
        object.__setattr__(self, "ids", ids)

    @property
    def height(self) -> int:
        return self.ids.shape[0]

    @property
    def width(self) -> int:
        return self.ids.shape[1]

    def instance_ids(self) -> np.ndarray:
        """Sorted distinct nonzero ids present in the mask."""
        ids = np.unique(self.ids)
        return ids[ids > 0]


def quantize(img: RgbImage) -> np.ndarray:
    """Map [0, 1] intensities to uint8 bytes, rounding halves up."""
    return np.clip(np.floor(img.data * 255.0 + 0.5), 0.0, 255.0).astype(np.uint8)


def load_image(path: str | Path) -> RgbImage:
    """Load an 8-bit RGB PNG or binary PPM (P6, maxval 255) image.

    Each 8-bit channel byte c becomes the float64 value c / 255 with no
    further transformation.

    Raises
    ------
    FileNotFoundError
        The path does not exist.
    UnsupportedFormatError
        Neither of the two accepted formats (wrong bit depth, wrong color
        type, ASCII or non-255-maxval PPM, ...).
    CorruptDataError
        The header checks out but the pixel payload does not.
    """
    raw = Path(path).read_bytes()
    if raw.startswith(_PNG_SIGNATURE):
        arr = _decode_png_rgb8(raw)
    elif raw[:2] == b"P6":
        arr = _decode_ppm(raw)
    elif len(raw) >= 2 and raw[0:1] == b"P" and raw[1:2].isdigit():
        raise UnsupportedFormatError(
            f"{path}: only binary P6 PPM is supported, got {raw[:2].decode('ascii')}"
        )
    else:
        raise UnsupportedFormatError(f"{path}: not a PNG or binary PPM file")
    return RgbImage(arr.astype(np.float64) / 255.0)


def save_image(img: RgbImage, path: str | Path, format: str | None = None) -> None:
    """Write an image as 8-bit RGB PNG or binary PPM (P6, maxval 255).

    Channels are quantized as round(v * 255) with halves rounding up. When
    `format` is omitted it is inferred from the file suffix.
    """
    fmt = _resolve_format(path, format, {"png", "ppm"})
    q = quantize(img)
    if fmt == "png":
        payload = _encode_png(q, color_type=2)
    else:
        payload = b"P6\n%d %d\n255\n" % (img.width, img.height) + q.tobytes()
    Path(path).write_bytes(payload)


def load_mask(path: str | Path) -> InstanceMask:
    """Load an instance mask from grayscale PNG (8/16-bit) or binary PGM (P5).

    Pixel values are taken verbatim as instance ids; no remapping occurs.

    Raises
    ------
    FileNotFoundError, UnsupportedFormatError, CorruptDataError
        As for :func:`load_image`; in particular an RGB PNG is rejected.
    """
    raw = Path(path).read_bytes()
    if raw.startswith(_PNG_SIGNATURE):
        arr = _decode_png_gray(raw)
    elif raw[:2] == b"P5":
        arr = _decode_pgm(raw)
    elif len(raw) >= 2 and raw[0:1] == b"P" and raw[1:2].isdigit():
        raise UnsupportedFormatError(
            f"{path}: only binary P5 PGM is supported, got {raw[:2].decode('ascii')}"
        )
    else:
        raise UnsupportedFormatError(f"{path}: not a PNG or binary PGM file")
    return InstanceMask(arr.astype(np.int64))


def save_mask(mask: InstanceMask, path: str | Path, format: str | None = None) -> None:
    """Write an instance mask as grayscale PNG or binary PGM, ids verbatim.

    8-bit output is used when every id fits in a byte, 16-bit otherwise;
    ids above 65535 cannot be represented in either carrier.
    """
    fmt = _resolve_format(path, format, {"png", "pgm"})
    max_id = int(mask.ids.max())
    if max_id > 65535:
        raise ValueError(f"mask ids up to {max_id} exceed the 16-bit file formats")
    wide = max_id > 255
    samples = mask.ids.astype(np.uint16 if wide else np.uint8)
    if fmt == "png":
        payload = _encode_png(samples, color_type=0)
    else:
        header = b"P5\n%d %d\n%d\n" % (mask.width, mask.height, 65535 if wide else 255)
        body = samples.astype(">u2").tobytes() if wide else samples.tobytes()
        payload = header + body
    Path(path).write_bytes(payload)


def _resolve_format(path: str | Path, format: str | None, allowed: set[str]) -> str:
    fmt = format if format is not None else Path(path).suffix.lstrip(".").lower()
    if fmt not in allowed:
        raise ValueError(f"format must be one of {sorted(allowed)}, got {fmt!r}")
    return fmt


def _parse_ihdr(raw: bytes) -> tuple[int, int, int, int]:
    """Return (width, height, bit_depth, color_type) from a PNG IHDR."""
    if len(raw) < 33:
        raise CorruptDataError("PNG truncated before IHDR")
    length, tag = struct.unpack(">I4s", raw[8:16])
    if tag != b"IHDR" or length != 13:
        raise CorruptDataError("PNG missing IHDR chunk")
    width, height, bit_depth, color_type = struct.unpack(">IIBB", raw[16:26])
    if width < 1 or height < 1:
        raise CorruptDataError("PNG with empty dimensions")
    return width, height, bit_depth, color_type


def _pillow_decode(raw: bytes) -> np.ndarray:
    try:
        with Image.open(io.BytesIO(raw)) as im:
            return np.asarray(im)
    except Exception as exc:
        raise CorruptDataError(f"undecodable PNG payload: {exc}") from exc


def _decode_png_rgb8(raw: bytes) -> np.ndarray:
    width, height, bit_depth, color_type = _parse_ihdr(raw)
    if color_type != 2 or bit_depth != 8:
        raise UnsupportedFormatError(
            f"PNG images must be 8-bit RGB (color type 2), got bit depth "
            f"{bit_depth}, color type {color_type}"
        )
    arr = _pillow_decode(raw)
    if arr.shape != (height, width, 3):
        raise CorruptDataError("PNG payload does not match its header")
    return arr


def _decode_png_gray(raw: bytes) -> np.ndarray:
    width, height, bit_depth, color_type = _parse_ihdr(raw)
    if color_type != 0 or bit_depth not in (8, 16):
        raise UnsupportedFormatError(
            f"mask PNGs must be 8- or 16-bit grayscale (color type 0), got bit "
            f"depth {bit_depth}, color type {color_type}"
        )
    arr = _pillow_decode(raw)
    if arr.shape != (height, width):
        raise CorruptDataError("PNG payload does not match its header")
    return arr


def _read_pnm_header(raw: bytes, magic: bytes) -> tuple[int, int, int, int]:
    """Parse '<magic> width height maxval' allowing comments; return values
    plus the offset of the first sample byte."""
    if raw[:2] != magic:
        raise CorruptDataError(f"expected {magic.decode()} header")
    pos = 2
    fields = []
    while len(fields) < 3:
        if pos >= len(raw):
            raise CorruptDataError("truncated PNM header")
        c = raw[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < len(raw) and raw[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isdigit():
            start = pos
            while pos < len(raw) and raw[pos : pos + 1].isdigit():
                pos += 1
            fields.append(int(raw[start:pos]))
        else:
            raise CorruptDataError(f"unexpected byte {c!r} in PNM header")
    if pos >= len(raw) or not raw[pos : pos + 1].isspace():
        raise CorruptDataError("PNM header not terminated by whitespace")
    pos += 1  # single whitespace byte separates header from samples
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise CorruptDataError("PNM with empty dimensions")
    return width, height, maxval, pos


def _decode_ppm(raw: bytes) -> np.ndarray:
    width, height, maxval, pos = _read_pnm_header(raw, b"P6")
    if maxval != 255:
        raise UnsupportedFormatError(f"PPM maxval must be 255, got {maxval}")
    expected = width * height * 3
    body = raw[pos : pos + expected]
    if len(body) < expected:
        raise CorruptDataError("PPM pixel data truncated")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3)


def _decode_pgm(raw: bytes) -> np.ndarray:
    width, height, maxval, pos = _read_pnm_header(raw, b"P5")
    if not 1 <= maxval <= 65535:
        raise UnsupportedFormatError(f"PGM maxval must be in [1, 65535], got {maxval}")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    expected = width * height * dtype.itemsize
    body = raw[pos : pos + expected]
    if len(body) < expected:
        raise CorruptDataError("PGM pixel data truncated")
    return np.frombuffer(body, dtype=dtype).reshape(height, width).astype(np.uint16)


def _encode_png(samples: np.ndarray, color_type: int) -> bytes:
    """Encode uint8 RGB (color type 2) or uint8/uint16 grayscale (color
    type 0) scanlines with filter 0 and a single zlib stream."""
    height = samples.shape[0]
    width = samples.shape[1]
    if samples.dtype == np.uint16:
        bit_depth = 16
        row_bytes = samples.astype(">u2").view(np.uint8).reshape(height, -1)
    else:
        bit_depth = 8
        row_bytes = samples.reshape(height, -1)
    scanlines = np.empty((height, 1 + row_bytes.shape[1]), dtype=np.uint8)
    scanlines[:, 0] = 0
    scanlines[:, 1:] = row_bytes

    def chunk(tag: bytes, data: bytes) -> bytes:
        return (
            struct.pack(">I", len(data))
            + tag
            + data
            + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)
        )

    ihdr = struct.pack(">IIBBBBB", width, height, bit_depth, color_type, 0, 0, 0)
    idat = zlib.compress(scanlines.tobytes(), 9)
    return (
        _PNG_SIGNATURE
        + chunk(b"IHDR", ihdr)
        + chunk(b"IDAT", idat)
        + chunk(b"IEND", b"")
    )
