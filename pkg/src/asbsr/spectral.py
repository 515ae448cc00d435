"""MSED-zone extraction, spectrum sparsity and bounded-spectrum approximation.

Masks are plain boolean arrays with the spectrum's shape.  Errors are
per-pixel: ``mse = sum(dropped coefficients**2) / N`` and ``rmse = sqrt(mse)``
in gray levels.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .transforms import _as_image

__all__ = [
    "BsApproximation",
    "check_mask",
    "msed_zone",
    "sparsity",
    "truncate_spectrum",
    "dropped_energy_mse",
]


def check_mask(mask, dims=None):
    """Validate a spectrum mask and return it as a boolean array."""
    mask = np.asarray(mask)
    if mask.ndim != 2 or mask.size == 0:
        raise InvalidArgument(f"mask must be a non-empty 2D array, got shape {mask.shape}")
    if mask.dtype != bool:
        if not np.isin(mask, (0, 1)).all():
            raise InvalidArgument("mask must be boolean")
        mask = mask.astype(bool)
    if not mask.any():
        raise InvalidArgument("mask has no cells")
    if dims is not None and mask.shape != tuple(dims):
        raise InvalidArgument(f"mask shape {mask.shape} does not match {tuple(dims)}")
    return mask


def _target_mse(mse, rmse):
    if (mse is None) == (rmse is None):
        raise InvalidArgument("give exactly one of mse= or rmse=")
    if mse is None:
        if rmse < 0:
            raise InvalidArgument(f"rmse target must be >= 0, got {rmse}")
        return float(rmse) ** 2
    if mse < 0:
        raise InvalidArgument(f"mse target must be >= 0, got {mse}")
    return float(mse)


def msed_zone(spectrum, *, mse=None, rmse=None):
    """Smallest set of largest coefficients meeting an error budget.

    Coefficients are ranked by squared magnitude (ties in row-major order)
    and added until the per-pixel energy of the excluded ones drops to the
    target.  The DC coefficient is always part of the zone.

    Parameters
    ----------
    spectrum : array_like
        2D transform coefficients.
    mse, rmse : float
        Error budget, either as mean squared error or as RMS error in gray
        levels.  Exactly one must be given.

    Returns
    -------
    numpy.ndarray of bool
    """
    spectrum = _as_image(spectrum, "spectrum")
    target = _target_mse(mse, rmse)
    n = spectrum.size
    energy = spectrum.ravel() ** 2

    rest = np.ones(n, dtype=bool)
    rest[0] = False
    idx = np.flatnonzero(rest)
    order = idx[np.argsort(-energy[idx], kind="stable")]
    sorted_energy = energy[order]
    # residual[j]: energy left out after taking the first j ranked cells.
    # Built as a reverse cumulative sum so it is exactly 0 once only zeros remain.
    residual = np.concatenate([np.cumsum(sorted_energy[::-1])[::-1], [0.0]]) / n
    j = int(np.argmax(residual <= target))

    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    mask[order[:j]] = True
    return mask.reshape(spectrum.shape)


def sparsity(mask):
    """Fraction of the spectrum occupied by ``mask``."""
    mask = check_mask(mask)
    return float(mask.sum()) / mask.size


@dataclass
class BsApproximation:
    """Spectrum zeroed outside a mask, with the resulting per-pixel MSE."""

    spectrum: np.ndarray
    mse: float

    @property
    def rmse(self):
        return float(np.sqrt(self.mse))


def dropped_energy_mse(spectrum, mask):
    """Per-pixel MSE of keeping only ``mask``: mean of squared dropped coefficients."""
    spectrum = np.asarray(spectrum, dtype=float)
    return float(np.sum(spectrum[~mask] ** 2)) / spectrum.size


def truncate_spectrum(spectrum, mask):
    """Bounded-spectrum approximation of ``spectrum`` to ``mask``."""
    spectrum = _as_image(spectrum, "spectrum")
    mask = check_mask(mask)
    if mask.shape != spectrum.shape:
        raise InvalidArgument(f"mask shape {mask.shape} does not match spectrum {spectrum.shape}")
    kept = np.where(mask, spectrum, 0.0)
    return BsApproximation(spectrum=kept, mse=dropped_energy_mse(spectrum, mask))
