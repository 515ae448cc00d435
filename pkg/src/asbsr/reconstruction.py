"""Bounded-spectrum reconstruction from sparse samples.

Two routes are provided:

* :func:`iterative_reconstruct` alternates between the bounded-spectrum
  subspace (DCT, zero outside the mask, inverse DCT) and the set of images
  that agree with the known samples (write the samples back).
* :func:`direct_reconstruct` solves the square sub-transform system for the
  selected coefficients and inverse-transforms the zero-filled spectrum.
"""

import csv
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import InvalidArgument, SingularSystemError
from .formatting import fmt
from .lattices import SampleSet
from .spectral import check_mask
from .transforms import _dct2, _idct2, _index_array, build_subtransform

__all__ = [
    "INITS",
    "IterConfig",
    "ReconstructionReport",
    "interpolate_initial",
    "iterative_reconstruct",
    "direct_reconstruct",
    "error_metrics",
]

INITS = ("zero_fill", "nearest_neighbor")

# Condition numbers above this are treated as singular.
MAX_CONDITION = 1e12
# Dense solve guardrail for direct_reconstruct.
MAX_DIRECT_SIZE = 4096


@dataclass(frozen=True)
class IterConfig:
    max_iters: int = 1000
    rel_tol: float = 1e-8
    init: str = "nearest_neighbor"

    def __post_init__(self):
        if int(self.max_iters) < 1:
            raise InvalidArgument(f"max_iters must be >= 1, got {self.max_iters}")
        if self.rel_tol < 0:
            raise InvalidArgument(f"rel_tol must be >= 0, got {self.rel_tol}")
        if self.init not in INITS:
            raise InvalidArgument(f"unknown init {self.init!r}; expected one of {INITS}")

    def to_dict(self):
        return {"max_iters": int(self.max_iters), "rel_tol": self.rel_tol, "init": self.init}


@dataclass
class ReconstructionReport:
    """Per-iteration traces of an iterative reconstruction.

    ``residuals[i]`` is the RMS mismatch at sampled positions before the
    samples are restored in iteration ``i + 1``.  The truth-based traces are
    only filled when a reference image is supplied.
    """

    iterations_run: int = 0
    residuals: list = field(default_factory=list)
    rmse_vs_truth: list = None
    rmse_trimmed90: list = None
    final_residual: float = float("nan")
    converged: bool = False

    def rows(self):
        for i, r in enumerate(self.residuals):
            rmse = self.rmse_vs_truth[i] if self.rmse_vs_truth is not None else None
            trim = self.rmse_trimmed90[i] if self.rmse_trimmed90 is not None else None
            yield i + 1, r, rmse, trim

    def write_csv(self, path):
        with open(path, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["iteration", "residual", "rmse", "trimmed90"])
            for it, r, rmse, trim in self.rows():
                w.writerow([it, fmt(r), "" if rmse is None else fmt(rmse), "" if trim is None else fmt(trim)])

    def summary(self):
        out = {
            "iterations_run": self.iterations_run,
            "final_residual": fmt(self.final_residual),
            "converged": self.converged,
        }
        if self.rmse_vs_truth:
            out["final_rmse"] = fmt(self.rmse_vs_truth[-1])
            out["final_trimmed90"] = fmt(self.rmse_trimmed90[-1])
        return out

    def write_json(self, path):
        with open(path, "w", newline="\n") as f:
            json.dump(self.summary(), f, indent=2, sort_keys=True)
            f.write("\n")


def _nearest_sample_index(samples, query):
    """Index of the nearest sample for each query point.

    Ties go to the smallest row, then column.
    """
    order = np.lexsort((samples.cols, samples.rows))
    pts = samples.positions[order].astype(float)
    tree = cKDTree(pts)
    n = len(pts)
    result = np.empty(len(query), dtype=np.int64)
    todo = np.arange(len(query))
    k = min(4, n)
    while len(todo):
        d, i = tree.query(query[todo], k=k)
        d = d.reshape(len(todo), k)
        i = i.reshape(len(todo), k)
        ambiguous = (d[:, -1] == d[:, 0]) & (k < n)
        done = ~ambiguous
        # rank-sorted points: the smallest tree index among the tied is the row-major first
        tied = np.where(d == d[:, :1], i, n)
        result[todo[done]] = tied[done].min(axis=1)
        todo = todo[ambiguous]
        k = min(2 * k, n)
    return order[result]


def interpolate_initial(samples, method="nearest_neighbor"):
    """Fill unsampled pixels to get a starting image.

    ``zero_fill`` puts zeros at unsampled pixels; ``nearest_neighbor`` copies
    the value of the closest sample (Euclidean distance).  Sampled pixels
    always keep their values.
    """
    if not isinstance(samples, SampleSet):
        raise InvalidArgument("samples must be a SampleSet")
    if method == "zero_fill":
        return samples.to_image(0.0)
    if method != "nearest_neighbor":
        raise InvalidArgument(f"unknown interpolation method {method!r}")
    ny, nx = samples.dims
    missing = ~samples.support
    img = samples.to_image(0.0)
    if missing.any():
        q = np.argwhere(missing)
        nearest = _nearest_sample_index(samples, q.astype(float))
        img[q[:, 0], q[:, 1]] = samples.values[nearest]
    return img


def error_metrics(reconstructed, truth):
    """RMS error over all pixels and over the 90% with smallest absolute error.

    Returns
    -------
    rmse, trimmed90 : float
    """
    reconstructed = np.asarray(reconstructed, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if reconstructed.shape != truth.shape:
        raise InvalidArgument(f"shape mismatch {reconstructed.shape} vs {truth.shape}")
    err = np.abs(reconstructed - truth).ravel()
    rmse = float(np.sqrt(np.mean(err**2)))
    keep = int(np.floor(0.9 * err.size))
    if keep == 0:
        return rmse, 0.0
    smallest = np.partition(err, keep - 1)[:keep]
    return rmse, float(np.sqrt(np.mean(smallest**2)))


def iterative_reconstruct(samples, mask, cfg=None, truth=None, callback=None):
    """Bounded-spectrum reconstruction by alternating projections.

    Each iteration takes the DCT of the current estimate, zeros every
    coefficient outside ``mask``, inverse-transforms and writes the known
    samples back.  Iteration stops after ``cfg.max_iters`` steps or when
    the relative change of the sample residual falls below ``cfg.rel_tol``.

    Parameters
    ----------
    samples : SampleSet
    mask : array_like of bool
        Spectrum support, same shape as ``samples.dims``.
    cfg : IterConfig, optional
    truth : array_like, optional
        Reference image; when given the report carries RMSE traces.
    callback : callable, optional
        Called as ``callback(iteration, pre_restoration_estimate)``.

    Returns
    -------
    image : numpy.ndarray
        The last estimate after sample restoration.
    report : ReconstructionReport
    """
    cfg = cfg or IterConfig()
    mask = check_mask(mask, samples.dims)
    if truth is not None:
        truth = np.asarray(truth, dtype=float)
        if truth.shape != samples.dims:
            raise InvalidArgument(f"truth shape {truth.shape} does not match {samples.dims}")

    rows, cols, known = samples.rows, samples.cols, samples.values
    scale = max(float(np.sqrt(np.mean(known**2))), np.finfo(float).tiny)
    est = interpolate_initial(samples, cfg.init)
    report = ReconstructionReport(
        rmse_vs_truth=[] if truth is not None else None,
        rmse_trimmed90=[] if truth is not None else None,
    )
    outside = ~mask
    prev = None
    for it in range(1, int(cfg.max_iters) + 1):
        spec = _dct2(est)
        spec[outside] = 0.0
        est = _idct2(spec)
        if callback is not None:
            callback(it, est.copy())
        residual = float(np.sqrt(np.mean((est[rows, cols] - known) ** 2)))
        est[rows, cols] = known
        report.residuals.append(residual)
        if truth is not None:
            rmse, trim = error_metrics(est, truth)
            report.rmse_vs_truth.append(rmse)
            report.rmse_trimmed90.append(trim)
        report.iterations_run = it
        if residual <= 1e-13 * scale or (
            prev is not None and prev > 0 and abs(prev - residual) <= cfg.rel_tol * prev
        ):
            report.converged = True
            break
        prev = residual
    report.final_residual = report.residuals[-1]
    return est, report


def direct_reconstruct(samples, coeff_indices, max_size=MAX_DIRECT_SIZE):
    """Reconstruct by inverting the sub-transform matrix.

    Solves for the coefficients at ``coeff_indices`` that reproduce the
    samples exactly, sets every other coefficient to zero and returns the
    inverse DCT.

    Raises
    ------
    SingularSystemError
        If the sub-transform matrix is singular or its condition number
        exceeds ``MAX_CONDITION``: the sample positions do not determine
        the selected coefficients.
    """
    if not isinstance(samples, SampleSet):
        raise InvalidArgument("samples must be a SampleSet")
    coeff_indices = np.asarray(list(coeff_indices), dtype=np.int64).reshape(-1, 2)
    m = len(samples)
    if len(coeff_indices) != m:
        raise InvalidArgument(f"need one coefficient per sample, got {len(coeff_indices)} for {m} samples")
    if m > max_size:
        raise InvalidArgument(f"direct solve limited to {max_size} samples, got {m}")
    coeffs = _index_array(coeff_indices, samples.dims, "coeff_indices")
    order = np.lexsort((samples.cols, samples.rows))
    phi = build_subtransform(samples.dims, coeffs, samples.positions)
    cond = np.linalg.cond(phi)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularSystemError(
            f"sub-transform matrix is singular for these sample positions (condition number {cond:.3g})",
            condition=cond,
        )
    gamma = np.linalg.solve(phi, samples.values[order])
    spec = np.zeros(samples.dims)
    spec[coeffs[:, 0], coeffs[:, 1]] = gamma
    return _idct2(spec)
