"""Synthetic test images with natural-image-like spectra."""

import numpy as np

from .spectral import check_mask
from .transforms import _dct2, _idct2


def natural_noise_image(dims, seed=0, falloff=1.0, value_range=(0.0, 255.0)):
    """Gaussian noise shaped to a ``1 / (1 + rho) ** falloff`` amplitude spectrum.

    ``rho`` is the radial DCT index distance from DC.  The result is
    rescaled linearly onto ``value_range``.
    """
    ny, nx = dims
    rng = np.random.default_rng(seed)
    spec = _dct2(rng.standard_normal((ny, nx)))
    rho = np.hypot(np.arange(ny)[:, None], np.arange(nx)[None, :])
    img = _idct2(spec / (1.0 + rho) ** falloff)
    lo, hi = value_range
    span = img.max() - img.min()
    if span == 0:
        return np.full((ny, nx), 0.5 * (lo + hi))
    return lo + (img - img.min()) * (hi - lo) / span


def bound_spectrum(image, mask):
    """Project ``image`` onto the images whose DCT vanishes outside ``mask``."""
    image = np.asarray(image, dtype=float)
    mask = check_mask(mask, image.shape)
    spec = _dct2(image)
    spec[~mask] = 0.0
    return _idct2(spec)
