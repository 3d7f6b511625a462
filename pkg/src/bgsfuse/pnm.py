"""Bit-exact PGM (P5) and PBM (P4) decoding and encoding for mask frames.

Only the binary PNM variants are supported, which keeps decoding free of
third-party image libraries and reproducible byte-for-byte. Sources in other
formats (PNG, JPEG) must be converted beforehand; see the README.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DecodeError

# Ground-truth label codes, also used by the histogram kernels.
BG = 0
FG = 1
IGNORE = 2

# CDnet 2014 ground-truth gray values: 255 moving object, 0 static background,
# 50 hard shadow (scored as background), 85 outside region of interest,
# 170 unknown motion. Overridable wherever a label_map argument is accepted.
DEFAULT_GT_LABEL_MAP = {0: BG, 50: BG, 85: IGNORE, 170: IGNORE, 255: FG}


@dataclass(frozen=True)
class BinaryMask:
    """A detector output frame: flat row-major bits, 1 = foreground."""

    width: int
    height: int
    bits: np.ndarray  # uint8 of length width*height, values in {0, 1}


@dataclass(frozen=True)
class GtMask:
    """A ground-truth frame: flat row-major labels over {BG, FG, IGNORE}."""

    width: int
    height: int
    labels: np.ndarray  # uint8 of length width*height


def _parse_header(data: bytes, expect: tuple[str, ...]):
    """Parse a PNM header, returning (magic, fields, payload_offset).

    ``fields`` is (width, height) for P4 and (width, height, maxval) for P5.
    Whitespace runs and '#' comment lines are allowed between tokens, per the
    PNM specification; exactly one whitespace byte separates the header from
    the payload.
    """
    pos = 0

    def error(msg):
        raise DecodeError(msg, offset=pos)

    def next_token():
        nonlocal pos
        while pos < len(data):
            c = data[pos : pos + 1]
            if c.isspace():
                pos += 1
            elif c == b"#":
                nl = data.find(b"\n", pos)
                if nl < 0:
                    error("unterminated comment in header")
                pos = nl + 1
            else:
                break
        if pos >= len(data):
            error("truncated header")
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        return data[start:pos]

    magic = next_token().decode("ascii", "replace")
    if magic not in expect:
        error(f"unsupported magic {magic!r}, expected one of {expect}")
    n_fields = 2 if magic == "P4" else 3
    fields = []
    for name in ("width", "height", "maxval")[:n_fields]:
        tok = next_token()
        try:
            value = int(tok)
        except ValueError:
            error(f"non-numeric {name} field {tok!r}")
        if value <= 0:
            error(f"non-positive {name} {value}")
        fields.append(value)
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        error("missing whitespace after header")
    pos += 1
    if magic == "P5" and fields[2] > 65535:
        error(f"maxval {fields[2]} out of range")
    return magic, fields, pos


def _read_gray(data: bytes, expect=("P5",)) -> tuple[int, int, np.ndarray]:
    """Decode a P5 payload into (width, height, uint16 gray values)."""
    magic, (width, height, maxval), pos = _parse_header(data, expect)
    count = width * height
    if maxval < 256:
        expected = count
        if len(data) - pos < expected:
            raise DecodeError(
                f"payload truncated: need {expected} bytes for {width}x{height}, "
                f"have {len(data) - pos}",
                offset=len(data),
            )
        values = np.frombuffer(data, np.uint8, count=count, offset=pos).astype(np.uint16)
    else:
        expected = 2 * count
        if len(data) - pos < expected:
            raise DecodeError(
                f"payload truncated: need {expected} bytes for 16-bit {width}x{height}, "
                f"have {len(data) - pos}",
                offset=len(data),
            )
        # 16-bit PNM samples are big-endian, most significant byte first.
        values = np.frombuffer(data, ">u2", count=count, offset=pos).astype(np.uint16)
    return width, height, values


def decode_mask(data: bytes) -> BinaryMask:
    """Decode a detector mask from P5 or P4 bytes.

    P5 pixels map to foreground iff the gray value is >= 128; P4 bits map
    1 -> foreground.
    """
    magic, _, _ = _parse_header(data, ("P5", "P4"))
    if magic == "P5":
        width, height, values = _read_gray(data)
        bits = (values >= 128).astype(np.uint8)
        return BinaryMask(width, height, bits)

    _, (width, height), pos = _parse_header(data, ("P4",))
    row_bytes = (width + 7) // 8
    expected = row_bytes * height
    if len(data) - pos < expected:
        raise DecodeError(
            f"payload truncated: need {expected} bytes for {width}x{height} bitmap, "
            f"have {len(data) - pos}",
            offset=len(data),
        )
    raw = np.frombuffer(data, np.uint8, count=expected, offset=pos)
    rows = np.unpackbits(raw.reshape(height, row_bytes), axis=1)[:, :width]
    return BinaryMask(width, height, rows.reshape(-1).astype(np.uint8))


def decode_groundtruth(data: bytes, label_map=None) -> GtMask:
    """Decode a P5 ground-truth frame, mapping gray values through label_map.

    Gray values absent from the map raise a DecodeError naming the value and
    the first pixel index where it occurs.
    """
    if label_map is None:
        label_map = DEFAULT_GT_LABEL_MAP
    width, height, values = _read_gray(data)
    lut = np.full(65536, 255, np.uint8)
    for gray, label in label_map.items():
        lut[gray] = label
    labels = lut[values]
    bad = np.nonzero(labels == 255)[0]
    if bad.size:
        raise DecodeError(
            f"gray value {int(values[bad[0]])} at pixel {int(bad[0])} is not in the "
            f"ground-truth label map"
        )
    return GtMask(width, height, labels)


def encode_mask(mask: BinaryMask) -> bytes:
    """Encode a BinaryMask as 8-bit P5, foreground = 255."""
    values = np.where(mask.bits != 0, 255, 0).astype(np.uint8)
    return _encode_gray(values, mask.width, mask.height)


def encode_groundtruth(gt: GtMask, fg_gray=255, bg_gray=0, ignore_gray=85) -> bytes:
    """Encode a GtMask as 8-bit P5 using the given gray values."""
    values = np.empty(gt.labels.shape, np.uint8)
    values[gt.labels == BG] = bg_gray
    values[gt.labels == FG] = fg_gray
    values[gt.labels == IGNORE] = ignore_gray
    return _encode_gray(values, gt.width, gt.height)


def _encode_gray(values: np.ndarray, width: int, height: int) -> bytes:
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + values.astype(np.uint8).tobytes()


def read_dimensions(data: bytes) -> tuple[int, int]:
    """Read (width, height) from a P5/P4 header without touching the payload."""
    _, fields, _ = _parse_header(data, ("P5", "P4"))
    return fields[0], fields[1]
