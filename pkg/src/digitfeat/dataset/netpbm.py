"""Reading and writing PBM (P1/P4) and PGM (P2/P5) images."""

from __future__ import annotations

import re

import numpy as np

from ..errors import ParseError
from ..imaging import as_binary

_WS = b" \t\r\n\v\f"


class _Header:
    """Cursor over the header tokens of a netpbm file, skipping ``#`` comments."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip(self):
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos:self.pos + 1]
            if ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif ch in _WS:
                self.pos += 1
            else:
                break

    def token(self, what: str) -> bytes:
        self._skip()
        m = re.compile(rb"[^\s#]+").match(self.data, self.pos)
        if not m:
            raise ParseError(f"truncated header: missing {what}")
        self.pos = m.end()
        return m.group()

    def integer(self, what: str) -> int:
        tok = self.token(what)
        if not tok.isdigit():
            raise ParseError(f"bad {what}: {tok[:20]!r}")
        value = int(tok)
        if value < 1:
            raise ParseError(f"{what} must be positive, got {value}")
        return value

    def raster_start(self) -> int:
        # exactly one whitespace byte separates the header from a binary raster
        if self.pos >= len(self.data) or self.data[self.pos:self.pos + 1] not in _WS:
            raise ParseError("missing whitespace before raster")
        return self.pos + 1


def magic_of(data: bytes) -> bytes:
    return bytes(data[:2])


def parse_pbm(data: bytes) -> np.ndarray:
    """Decode a P1 or P4 bitmap; 1-bits are black (``True``)."""
    data = bytes(data)
    hdr = _Header(data)
    magic = hdr.token("magic")
    if magic not in (b"P1", b"P4"):
        raise ParseError(f"not a PBM file (magic {magic[:8]!r})")
    w = hdr.integer("width")
    h = hdr.integer("height")
    if magic == b"P4":
        start = hdr.raster_start()
        stride = (w + 7) // 8
        raw = np.frombuffer(data[start:], dtype=np.uint8)
        if raw.size < stride * h:
            raise ParseError(f"truncated raster: need {stride * h} bytes, got {raw.size}")
        bits = np.unpackbits(raw[:stride * h].reshape(h, stride), axis=1)
        return bits[:, :w].astype(bool)
    digits = []
    need = w * h
    while len(digits) < need:
        hdr._skip()
        if hdr.pos >= len(data):
            raise ParseError(f"truncated raster: need {need} pixels, got {len(digits)}")
        ch = data[hdr.pos:hdr.pos + 1]
        if ch not in (b"0", b"1"):
            raise ParseError(f"bad raster character {ch!r}")
        digits.append(ch == b"1")
        hdr.pos += 1
    return np.array(digits, dtype=bool).reshape(h, w)


def write_pbm(img, variant: str = "P4") -> bytes:
    arr = as_binary(img)
    h, w = arr.shape
    header = f"{variant}\n{w} {h}\n".encode("ascii")
    if variant == "P1":
        rows = (" ".join("1" if v else "0" for v in row) for row in arr)
        return header + "".join(r + "\n" for r in rows).encode("ascii")
    if variant == "P4":
        return header + np.packbits(arr, axis=1).tobytes()
    raise ValueError(f"unknown PBM variant {variant!r}")


def parse_pgm(data: bytes) -> np.ndarray:
    """Decode a P2 or P5 graymap, rescaled to intensities in [0, 255]."""
    data = bytes(data)
    hdr = _Header(data)
    magic = hdr.token("magic")
    if magic not in (b"P2", b"P5"):
        raise ParseError(f"not a PGM file (magic {magic[:8]!r})")
    w = hdr.integer("width")
    h = hdr.integer("height")
    maxval = hdr.integer("maxval")
    if maxval > 65535:
        raise ParseError(f"maxval {maxval} out of range")
    if magic == b"P5":
        start = hdr.raster_start()
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
        need = w * h * dtype.itemsize
        if len(data) - start < need:
            raise ParseError(f"truncated raster: need {need} bytes, got {max(len(data) - start, 0)}")
        values = np.frombuffer(data, dtype=dtype, count=w * h, offset=start).astype(np.int64)
    else:
        values = _ascii_values(hdr, w * h)
    if values.max(initial=0) > maxval:
        raise ParseError("pixel value exceeds maxval")
    gray = values.reshape(h, w)
    if maxval != 255:
        gray = (gray * 255 + maxval // 2) // maxval
    return gray


def _ascii_values(hdr: _Header, n: int) -> np.ndarray:
    out = []
    for _ in range(n):
        hdr._skip()
        m = re.compile(rb"\d+").match(hdr.data, hdr.pos)
        if not m:
            raise ParseError(f"truncated raster: need {n} values, got {len(out)}")
        out.append(int(m.group()))
        hdr.pos = m.end()
    return np.array(out, dtype=np.int64)
