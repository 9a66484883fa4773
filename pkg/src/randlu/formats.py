"""File formats: the RLUM binary matrix container, header-free CSV
matrices, and 8-bit binary PGM images.

RLUM layout: magic bytes "RLUM", u8 version (1), u8 scalar kind
(0 = real64, 1 = complex128), u32 little-endian row and column counts,
then the row-major little-endian IEEE-754 payload (complex entries are
interleaved real, imag pairs).
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .core import COMPLEX, REAL, as_matrix
from .errors import FormatError

RLUM_MAGIC = b"RLUM"
RLUM_VERSION = 1
_KIND_REAL = 0
_KIND_COMPLEX = 1


def write_rlum(path, a) -> None:
    a = as_matrix(a)
    if not np.all(np.isfinite(a)):
        raise FormatError("refusing to write non-finite entries")
    kind = _KIND_COMPLEX if np.iscomplexobj(a) else _KIND_REAL
    dtype = "<c16" if kind == _KIND_COMPLEX else "<f8"
    header = RLUM_MAGIC + struct.pack("<BBII", RLUM_VERSION, kind, a.shape[0], a.shape[1])
    Path(path).write_bytes(header + np.ascontiguousarray(a).astype(dtype).tobytes())


def read_rlum(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < 14 or raw[:4] != RLUM_MAGIC:
        raise FormatError(f"{path}: not an RLUM file")
    version, kind, rows, cols = struct.unpack("<BBII", raw[4:14])
    if version != RLUM_VERSION:
        raise FormatError(f"{path}: unsupported RLUM version {version}")
    if kind not in (_KIND_REAL, _KIND_COMPLEX):
        raise FormatError(f"{path}: unknown scalar kind {kind}")
    if rows < 1 or cols < 1:
        raise FormatError(f"{path}: bad dimensions {rows}x{cols}")
    itemsize = 16 if kind == _KIND_COMPLEX else 8
    expected = 14 + rows * cols * itemsize
    if len(raw) != expected:
        raise FormatError(f"{path}: payload is {len(raw) - 14} bytes, expected {expected - 14}")
    dtype = "<c16" if kind == _KIND_COMPLEX else "<f8"
    a = np.frombuffer(raw[14:], dtype=dtype).reshape(rows, cols)
    a = a.astype(COMPLEX if kind == _KIND_COMPLEX else REAL)
    if not np.all(np.isfinite(a)):
        raise FormatError(f"{path}: non-finite entries")
    return a


def write_csv_matrix(path, a) -> None:
    a = as_matrix(a)
    if np.iscomplexobj(a):
        raise FormatError("CSV matrices are real-only")
    if not np.all(np.isfinite(a)):
        raise FormatError("refusing to write non-finite entries")
    lines = [",".join(repr(float(v)) for v in row) for row in a]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_csv_matrix(path) -> np.ndarray:
    rows = []
    width = None
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    for ln, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = [float(tok) for tok in line.split(",")]
        except ValueError as exc:
            raise FormatError(f"{path}:{ln}: {exc}") from exc
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"{path}:{ln}: ragged row ({len(row)} vs {width} columns)")
        rows.append(row)
    if not rows:
        raise FormatError(f"{path}: empty matrix")
    a = np.asarray(rows, dtype=REAL)
    if not np.all(np.isfinite(a)):
        raise FormatError(f"{path}: non-finite entries")
    return a


def write_index_csv(path, indices) -> None:
    Path(path).write_text("\n".join(str(int(i)) for i in indices) + "\n", encoding="utf-8")


def read_pgm(path) -> np.ndarray:
    """Read a binary (P5) 8-bit PGM into a float64 matrix."""
    raw = Path(path).read_bytes()
    if raw[:2] != b"P5":
        raise FormatError(f"{path}: not a binary PGM (P5) file")
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if pos < len(raw) and raw[pos : pos + 1] == b"#":
            while pos < len(raw) and raw[pos : pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(raw) and not raw[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError(f"{path}: truncated header")
        fields.append(raw[start:pos])
    pos += 1  # single whitespace after maxval
    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError as exc:
        raise FormatError(f"{path}: bad header field") from exc
    if width < 1 or height < 1:
        raise FormatError(f"{path}: bad dimensions {width}x{height}")
    if not (0 < maxval < 256):
        raise FormatError(f"{path}: only 8-bit PGM supported (maxval {maxval})")
    payload = raw[pos : pos + width * height]
    if len(payload) != width * height:
        raise FormatError(f"{path}: payload is {len(payload)} bytes, expected {width * height}")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).astype(REAL)


def write_pgm(path, a) -> None:
    """Write a matrix as binary 8-bit PGM, clamping to [0, 255] and rounding."""
    a = as_matrix(a)
    if np.iscomplexobj(a):
        raise FormatError("PGM images are real-only")
    pixels = np.clip(np.rint(a), 0, 255).astype(np.uint8)
    header = f"P5\n{a.shape[1]} {a.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + pixels.tobytes())
