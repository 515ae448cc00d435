"""Grayscale image files and CSV sample lists.

Binary PGM (P5, 8- or 16-bit) is read and written by hand so malformed
files can be reported with byte offsets.  PNG goes through Pillow; color
PNGs are converted to luma with the BT.601 weights 0.299/0.587/0.114.
"""

import csv
import re

import numpy as np

from .errors import InvalidArgument, ParseError, UnsupportedFormatError
from .formatting import fmt
from .lattices import SampleSet

__all__ = [
    "read_image",
    "write_image",
    "read_pgm",
    "write_pgm",
    "write_mask",
    "read_mask",
    "write_samples_csv",
    "read_samples_csv",
]

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def read_image(path):
    """Read a grayscale PGM or PNG file into a float array."""
    with open(path, "rb") as f:
        data = f.read()
    if data[:2] == b"P5":
        return parse_pgm(data)
    if data.startswith(PNG_MAGIC):
        return _read_png(path)
    if data[:2] in (b"P1", b"P2", b"P3", b"P4", b"P6"):
        raise UnsupportedFormatError(f"{path}: netpbm variant {data[:2].decode()} is not supported, use binary P5")
    raise UnsupportedFormatError(f"{path}: not a PGM (P5) or PNG file")


def write_image(image, path, maxval=None):
    """Write ``image`` as PGM or PNG, chosen by the file extension.

    Values are rounded and clipped to ``[0, maxval]``.  For PGM, ``maxval``
    defaults to 255 unless values exceed that, in which case 16-bit output
    is used.  PNG output is always 8-bit.
    """
    path = str(path)
    if path.lower().endswith(".png"):
        _write_png(image, path)
    else:
        write_pgm(image, path, maxval)


def _next_token(data, pos):
    """Return ``(token, start, end)`` skipping whitespace and ``#`` comments."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c in (b" ", b"\t", b"\r", b"\n"):
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in (b" ", b"\t", b"\r", b"\n", b"#"):
        pos += 1
    return data[start:pos], start, pos


def parse_pgm(data):
    """Parse the bytes of a binary PGM file."""
    if data[:2] != b"P5":
        raise ParseError("missing P5 magic number", offset=0)
    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        tok, start, pos = _next_token(data, pos)
        if not tok:
            raise ParseError(f"header ends before {name}", offset=start)
        if not re.fullmatch(rb"[0-9]+", tok):
            raise ParseError(f"invalid {name} {tok!r}", offset=start)
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ParseError(f"invalid image size {width}x{height}", offset=2)
    if not 1 <= maxval <= 65535:
        raise ParseError(f"maxval {maxval} outside 1..65535", offset=pos)
    if pos >= len(data) or data[pos : pos + 1] not in (b" ", b"\t", b"\r", b"\n"):
        raise ParseError("expected a single whitespace byte after maxval", offset=pos)
    pos += 1
    bps = 1 if maxval < 256 else 2
    expected = width * height * bps
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise ParseError(
            f"truncated pixel data: expected {expected} bytes, got {len(payload)}",
            offset=pos + len(payload),
        )
    pixels = np.frombuffer(payload, dtype=np.uint8 if bps == 1 else ">u2").reshape(height, width)
    if pixels.max(initial=0) > maxval:
        bad = int(np.argmax(pixels.ravel() > maxval))
        raise ParseError(f"pixel value exceeds maxval {maxval}", offset=pos + bad * bps)
    return pixels.astype(float)


def read_pgm(path):
    with open(path, "rb") as f:
        return parse_pgm(f.read())


def _to_levels(image, maxval):
    return np.clip(np.rint(np.asarray(image, dtype=float)), 0, maxval)


def write_pgm(image, path, maxval=None):
    image = np.asarray(image, dtype=float)
    if image.ndim != 2 or image.size == 0:
        raise InvalidArgument(f"image must be a non-empty 2D array, got shape {image.shape}")
    if not np.all(np.isfinite(image)):
        raise InvalidArgument("image contains non-finite values")
    if maxval is None:
        maxval = 255 if np.rint(image.max()) <= 255 else 65535
    levels = _to_levels(image, maxval)
    dtype = np.uint8 if maxval < 256 else ">u2"
    h, w = image.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n%d\n" % (w, h, maxval))
        f.write(levels.astype(dtype).tobytes())


def _read_png(path):
    from PIL import Image

    with Image.open(path) as im:
        mode = im.mode
        if mode == "P":
            im = im.convert("RGBA" if "transparency" in im.info else "RGB")
            mode = im.mode
        if mode in ("L", "LA"):
            return np.asarray(im.getchannel(0), dtype=float)
        if mode in ("I;16", "I;16B", "I"):
            return np.asarray(im, dtype=float)
        if mode in ("RGB", "RGBA"):
            rgb = np.asarray(im, dtype=float)[..., :3]
            return rgb @ np.array([0.299, 0.587, 0.114])
    raise UnsupportedFormatError(f"{path}: unsupported PNG mode {mode}")


def _write_png(image, path):
    from PIL import Image

    levels = _to_levels(image, 255).astype(np.uint8)
    Image.fromarray(levels, mode="L").save(path)


def write_mask(mask, path):
    """Save a boolean mask as an 8-bit PGM (255 inside)."""
    write_pgm(np.where(mask, 255.0, 0.0), path, maxval=255)


def read_mask(path):
    """Load a mask image; any nonzero pixel is inside."""
    return read_image(path) > 0


def write_samples_csv(samples, path):
    """Write ``row,col,value`` lines preceded by a header."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["row", "col", "value"])
        for r, c, v in zip(samples.rows, samples.cols, samples.values):
            w.writerow([int(r), int(c), fmt(v)])


def read_samples_csv(path, dims):
    """Read a sample list written by :func:`write_samples_csv`."""
    rows, cols, values = [], [], []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["row", "col", "value"]:
            raise ParseError(f"{path}: expected header row,col,value")
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            try:
                rows.append(int(rec[0]))
                cols.append(int(rec[1]))
                values.append(float(rec[2]))
            except (IndexError, ValueError):
                raise ParseError(f"{path}: malformed line {lineno}: {','.join(rec)}") from None
    return SampleSet(dims, rows, cols, values)
