"""Orthonormal DCT-II / DCT-III transforms and sub-transform matrices.

The forward transform is

.. math::
    \\gamma_u = \\alpha(u) \\sum_k x_k \\cos\\left(\\frac{\\pi (2k+1) u}{2N}\\right),
    \\quad \\alpha(0) = \\sqrt{1/N},\\ \\alpha(u>0) = \\sqrt{2/N}

so the transform matrix is orthogonal and energy is preserved.  2D
transforms are separable (rows, then columns).  Any length is supported.
"""

import numpy as np
from scipy import fft

from .errors import InvalidArgument

__all__ = [
    "dct1_forward",
    "dct1_inverse",
    "dct2_forward",
    "dct2_inverse",
    "dct_basis",
    "dct_matrix",
    "build_subtransform",
]


def _as_signal(x, name):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidArgument(f"{name} must be one-dimensional, got shape {x.shape}")
    if x.size == 0:
        raise InvalidArgument(f"{name} is empty")
    if not np.all(np.isfinite(x)):
        raise InvalidArgument(f"{name} contains non-finite values")
    return x


def _as_image(x, name):
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.size == 0:
        raise InvalidArgument(f"{name} must be a non-empty 2D array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidArgument(f"{name} contains non-finite values")
    return x


def dct1_forward(signal):
    """Orthonormal 1D DCT-II of ``signal``."""
    return fft.dct(_as_signal(signal, "signal"), type=2, norm="ortho")


def dct1_inverse(spectrum):
    """Inverse of :func:`dct1_forward` (orthonormal DCT-III)."""
    return fft.idct(_as_signal(spectrum, "spectrum"), type=2, norm="ortho")


def dct2_forward(image):
    """Separable orthonormal 2D DCT-II; index (0, 0) is the DC term."""
    return fft.dctn(_as_image(image, "image"), type=2, norm="ortho")


def dct2_inverse(spectrum):
    """Inverse of :func:`dct2_forward`."""
    return fft.idctn(_as_image(spectrum, "spectrum"), type=2, norm="ortho")


# Unchecked variants for inner loops where inputs are known to be valid.
def _dct2(x):
    return fft.dctn(x, type=2, norm="ortho")


def _idct2(x):
    return fft.idctn(x, type=2, norm="ortho")


def dct_basis(n, u, k):
    """Value of the ``u``-th orthonormal DCT basis function of length ``n`` at ``k``.

    ``u`` and ``k`` broadcast against each other.
    """
    u = np.asarray(u)
    k = np.asarray(k)
    alpha = np.where(u == 0, np.sqrt(1.0 / n), np.sqrt(2.0 / n))
    return alpha * np.cos(np.pi * (2 * k + 1) * u / (2.0 * n))


def dct_matrix(n):
    """Dense ``n x n`` DCT-II matrix ``C`` with ``C @ x == dct1_forward(x)``."""
    u = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    return dct_basis(n, u, k)


def _index_array(indices, dims, name):
    arr = np.asarray(list(indices), dtype=np.int64)
    if arr.size == 0:
        raise InvalidArgument(f"{name} is empty")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidArgument(f"{name} must be a collection of (row, col) pairs")
    ny, nx = dims
    if (arr[:, 0] < 0).any() or (arr[:, 0] >= ny).any() or (arr[:, 1] < 0).any() or (arr[:, 1] >= nx).any():
        raise InvalidArgument(f"{name} has an index outside {ny}x{nx}")
    flat = arr[:, 0] * nx + arr[:, 1]
    order = np.argsort(flat, kind="stable")
    flat = flat[order]
    if (np.diff(flat) == 0).any():
        raise InvalidArgument(f"{name} contains duplicate entries")
    return arr[order]


def build_subtransform(dims, coeff_indices, sample_positions):
    """Sub-transform matrix of selected 2D basis functions at sample positions.

    Parameters
    ----------
    dims : tuple of int
        Grid size ``(Ny, Nx)``.
    coeff_indices : iterable of (u, v)
        Selected basis-function indices (``u`` along rows, ``v`` along columns).
    sample_positions : iterable of (row, col)
        Positions at which the basis functions are evaluated.

    Returns
    -------
    numpy.ndarray
        ``M x M`` matrix whose entry ``[m, n]`` is basis function ``n``
        evaluated at position ``m``.  Both index sets are sorted row-major
        first, so the result does not depend on input order.
    """
    ny, nx = int(dims[0]), int(dims[1])
    if ny < 1 or nx < 1:
        raise InvalidArgument(f"invalid dims {dims}")
    coeffs = _index_array(coeff_indices, (ny, nx), "coeff_indices")
    pos = _index_array(sample_positions, (ny, nx), "sample_positions")
    if len(coeffs) != len(pos):
        raise InvalidArgument(
            f"need as many coefficients as samples, got {len(coeffs)} and {len(pos)}"
        )
    rows = dct_basis(ny, coeffs[None, :, 0], pos[:, None, 0])
    cols = dct_basis(nx, coeffs[None, :, 1], pos[:, None, 1])
    return rows * cols
