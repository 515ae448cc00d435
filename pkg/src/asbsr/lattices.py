"""Sampling-position generators and sample extraction.

Three lattice kinds are provided:

* ``quasi_uniform``: one sample at the center of each primary cell, rounded
  to the nearest grid node.  Deterministic.
* ``jittered``: one sample per primary cell at an offset drawn uniformly and
  independently per coordinate inside the cell.
* ``random``: ``M`` distinct nodes drawn uniformly without replacement.

Primary cells come from an ``my x mx`` grid with
``mx = ceil(sqrt(M * Nx / Ny))`` and ``my = ceil(sqrt(M * Ny / Nx))``.
A node belongs to the cell containing its center, so cells partition the
grid and two cells can never produce the same node.  When ``mx * my > M``
the surplus cells are left empty; they are spread evenly over the grid in
row-major order.

Random streams use :func:`numpy.random.default_rng` (PCG64) seeded with the
lattice seed.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument

__all__ = [
    "KINDS",
    "LatticeSpec",
    "SampleSet",
    "positions_quasi_uniform",
    "positions_jittered",
    "positions_random",
    "generate_positions",
    "primary_cells",
    "sample_image",
]

KINDS = ("quasi_uniform", "jittered", "random")


@dataclass(frozen=True)
class LatticeSpec:
    kind: str
    M: int
    dims: tuple
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown lattice kind {self.kind!r}; expected one of {KINDS}")
        ny, nx = (int(d) for d in self.dims)
        if ny < 1 or nx < 1:
            raise InvalidArgument(f"invalid dims {self.dims}")
        object.__setattr__(self, "dims", (ny, nx))
        if not 1 <= int(self.M) <= ny * nx:
            raise InvalidArgument(f"sample budget M={self.M} must be in [1, {ny * nx}]")
        object.__setattr__(self, "M", int(self.M))

    def to_dict(self):
        return {"kind": self.kind, "M": self.M, "dims": list(self.dims), "seed": self.seed}


@dataclass
class SampleSet:
    """Acquired samples: parallel ``rows``, ``cols``, ``values`` arrays."""

    dims: tuple
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.dims = (int(self.dims[0]), int(self.dims[1]))
        self.rows = np.asarray(self.rows, dtype=np.int64).ravel()
        self.cols = np.asarray(self.cols, dtype=np.int64).ravel()
        self.values = np.asarray(self.values, dtype=float).ravel()
        if not len(self.rows) == len(self.cols) == len(self.values):
            raise InvalidArgument("rows, cols and values must have equal length")
        if len(self.rows) == 0:
            raise InvalidArgument("sample set is empty")
        ny, nx = self.dims
        if (self.rows < 0).any() or (self.rows >= ny).any() or (self.cols < 0).any() or (self.cols >= nx).any():
            raise InvalidArgument(f"sample position outside {ny}x{nx} grid")
        flat = self.rows * nx + self.cols
        if len(np.unique(flat)) != len(flat):
            raise InvalidArgument("sample positions contain duplicates")

    def __len__(self):
        return len(self.values)

    @property
    def positions(self):
        return np.column_stack([self.rows, self.cols])

    @property
    def support(self):
        """Boolean grid marking sampled positions."""
        s = np.zeros(self.dims, dtype=bool)
        s[self.rows, self.cols] = True
        return s

    def restore(self, image):
        """Copy of ``image`` with the known sample values written back."""
        out = np.array(image, dtype=float, copy=True)
        out[self.rows, self.cols] = self.values
        return out

    def to_image(self, fill=0.0):
        return self.restore(np.full(self.dims, fill, dtype=float))


def primary_cells(M, dims):
    """Per-axis primary-cell counts ``(my, mx)`` for a budget of ``M`` samples."""
    ny, nx = dims
    mx = min(nx, math.ceil(math.sqrt(M * nx / ny)))
    my = min(ny, math.ceil(math.sqrt(M * ny / nx)))
    # the ceils guarantee mx * my >= M; keep the guarantee after clamping
    while mx * my < M:
        if mx < nx:
            mx += 1
        else:
            my += 1
    return my, mx


def _cell_node_ranges(n, m):
    """First and last node of each of ``m`` cells along an axis of ``n`` nodes."""
    delta = n / m
    i = np.arange(m)
    # node j belongs to cell floor((j + 0.5) / delta)
    first = np.ceil(i * delta - 0.5).astype(np.int64)
    last = np.ceil((i + 1) * delta - 0.5).astype(np.int64) - 1
    return first, last, delta


def _kept_cells(M, my, mx):
    """Row-major indices of the cells that receive a sample."""
    total = my * mx
    surplus = total - M
    keep = np.ones(total, dtype=bool)
    if surplus:
        keep[np.floor((np.arange(surplus) + 0.5) * total / surplus).astype(np.int64)] = False
    return np.flatnonzero(keep)


def _cell_positions(spec, offsets):
    my, mx = primary_cells(spec.M, spec.dims)
    fy, ly, dy = _cell_node_ranges(spec.dims[0], my)
    fx, lx, dx = _cell_node_ranges(spec.dims[1], mx)
    cells = _kept_cells(spec.M, my, mx)
    ci, cj = np.divmod(cells, mx)
    oy, ox = offsets(len(cells))
    # the nearest node center to coordinate y is floor(y); clip keeps it in the cell
    rows = np.clip(np.floor((ci + oy) * dy).astype(np.int64), fy[ci], ly[ci])
    cols = np.clip(np.floor((cj + ox) * dx).astype(np.int64), fx[cj], lx[cj])
    return np.column_stack([rows, cols])


def _require_kind(spec, kind):
    if spec.kind != kind:
        raise InvalidArgument(f"expected a {kind} lattice spec, got {spec.kind}")


def positions_quasi_uniform(spec):
    """Cell centers rounded to grid nodes; ``spec.seed`` is unused."""
    _require_kind(spec, "quasi_uniform")
    return _cell_positions(spec, lambda n: (np.full(n, 0.5), np.full(n, 0.5)))


def positions_jittered(spec):
    """One node per primary cell at a uniformly random offset inside the cell."""
    _require_kind(spec, "jittered")
    rng = np.random.default_rng(spec.seed)
    return _cell_positions(spec, lambda n: (rng.random(n), rng.random(n)))


def positions_random(spec):
    """``M`` distinct nodes drawn uniformly without replacement."""
    _require_kind(spec, "random")
    rng = np.random.default_rng(spec.seed)
    ny, nx = spec.dims
    flat = rng.choice(ny * nx, size=spec.M, replace=False)
    return np.column_stack(np.divmod(flat, nx))


_GENERATORS = {
    "quasi_uniform": positions_quasi_uniform,
    "jittered": positions_jittered,
    "random": positions_random,
}


def generate_positions(spec):
    """Dispatch to the generator for ``spec.kind``; returns an ``(M, 2)`` array."""
    return _GENERATORS[spec.kind](spec)


def sample_image(image, positions):
    """Read ``image`` at ``positions`` (an iterable of ``(row, col)``)."""
    image = np.asarray(image, dtype=float)
    if image.ndim != 2:
        raise InvalidArgument(f"image must be 2D, got shape {image.shape}")
    pos = np.asarray(positions, dtype=np.int64).reshape(-1, 2)
    ny, nx = image.shape
    if (pos < 0).any() or (pos[:, 0] >= ny).any() or (pos[:, 1] >= nx).any():
        raise InvalidArgument(f"sample position outside {ny}x{nx} image")
    return SampleSet(image.shape, pos[:, 0], pos[:, 1], image[pos[:, 0], pos[:, 1]])
