"""Standard spectrum-bounding shapes anchored at the DC corner.

A cell ``(u, v)`` of an ``Ny x Nx`` spectrum has normalized coordinates
``p = (u + 0.5) / Ny`` (vertical frequency) and ``q = (v + 0.5) / Nx``
(horizontal frequency).  Shapes have half-extent ``a = scale`` along ``q``
and ``b = scale * aspect_ratio`` along ``p``.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InfeasibleError, InvalidArgument
from .spectral import check_mask

__all__ = ["FAMILIES", "ShapeSpec", "make_mask", "fit_shape_to_budget", "mask_area"]

FAMILIES = ("rectangle", "triangle", "ellipse", "pie_sector")


@dataclass(frozen=True)
class ShapeSpec:
    family: str
    scale: float
    aspect_ratio: float = 1.0
    angular_span: tuple = (0.0, 90.0)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidArgument(f"unknown shape family {self.family!r}; expected one of {FAMILIES}")
        if not self.scale > 0 or not self.aspect_ratio > 0:
            raise InvalidArgument("scale and aspect_ratio must be positive")
        # small slack so bisection end points at the band edge stay valid
        if self.scale > 1 + 1e-12 or self.scale * self.aspect_ratio > 1 + 1e-12:
            raise InvalidArgument(
                f"shape does not fit the band: scale={self.scale}, aspect_ratio={self.aspect_ratio}"
            )
        lo, hi = (float(a) for a in self.angular_span)
        if not 0.0 <= lo <= hi <= 90.0:
            raise InvalidArgument(f"angular_span must satisfy 0 <= lo <= hi <= 90, got {self.angular_span}")
        object.__setattr__(self, "angular_span", (lo, hi))

    def to_dict(self):
        d = asdict(self)
        d["angular_span"] = list(self.angular_span)
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "angular_span" in d:
            d["angular_span"] = tuple(d["angular_span"])
        return cls(**d)


def _normalized_grid(dims):
    ny, nx = int(dims[0]), int(dims[1])
    if ny < 1 or nx < 1:
        raise InvalidArgument(f"invalid dims {dims}")
    p = ((np.arange(ny) + 0.5) / ny)[:, None]
    q = ((np.arange(nx) + 0.5) / nx)[None, :]
    return p, q


def _membership(family, p, q, a, b, span):
    if family == "rectangle":
        return (q < a) & (p < b)
    if family == "triangle":
        return q / a + p / b <= 1.0
    if family == "ellipse":
        return (q / a) ** 2 + (p / b) ** 2 <= 1.0
    x, y = q / a, p / b
    inside = np.hypot(x, y) <= 1.0
    angle = np.degrees(np.arctan2(y, x))
    return inside & (angle >= span[0]) & (angle <= span[1])


def make_mask(spec, dims):
    """Boolean spectrum mask for ``spec`` on an ``(Ny, Nx)`` grid.

    The DC cell is always included.
    """
    p, q = _normalized_grid(dims)
    a = spec.scale
    b = spec.scale * spec.aspect_ratio
    mask = _membership(spec.family, p, q, a, b, spec.angular_span)
    mask = np.broadcast_to(mask, (p.shape[0], q.shape[1])).copy()
    mask[0, 0] = True
    return mask


def mask_area(mask):
    """Return ``(cells, fraction)`` covered by ``mask``."""
    mask = check_mask(mask)
    cells = int(mask.sum())
    return cells, cells / mask.size


def fit_shape_to_budget(family, dims, target_fraction, aspect_ratio=1.0, angular_span=(0.0, 90.0)):
    """Smallest-scale shape whose mask covers at least ``target_fraction``.

    Bisects on ``scale`` with family, aspect ratio and angular span fixed.
    Masks are nested in ``scale``, so the returned shape never under-covers;
    how far it over-covers is limited by how many cells enter the shape at
    once as it grows.

    Raises
    ------
    InfeasibleError
        If the largest shape fitting the band is still too small.
    """
    ny, nx = int(dims[0]), int(dims[1])
    n = ny * nx
    if not 0 < target_fraction <= 1:
        raise InvalidArgument(f"target_fraction must be in (0, 1], got {target_fraction}")
    needed = max(1, math.ceil(target_fraction * n - 1e-9))

    def cells(scale):
        return int(make_mask(ShapeSpec(family, scale, aspect_ratio, angular_span), dims).sum())

    hi = min(1.0, 1.0 / aspect_ratio)
    if cells(hi) < needed:
        raise InfeasibleError(
            f"{family} with aspect_ratio={aspect_ratio} covers at most {cells(hi)} of {n} cells, "
            f"fewer than the {needed} requested"
        )
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if cells(mid) >= needed:
            hi = mid
        else:
            lo = mid
    return ShapeSpec(family, hi, aspect_ratio, angular_span)
