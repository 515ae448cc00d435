"""Sparse sinusoid recovery from random sub-samples.

A test signal is a sum of ``K`` orthonormal DCT basis functions.  It is
sampled at ``M`` random positions and recovered with a K-largest iterative
loop: DCT, keep the K largest-magnitude coefficients, inverse DCT, restore
the known samples.  :func:`monte_carlo_redundancy` estimates how many
samples per component this needs, and :func:`cs_bound_min_redundancy`
solves the closed-form bound ``R > -2 log(R * SS)``.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import fft

from .errors import InvalidArgument
from .formatting import fmt
from .lattices import SampleSet
from .reconstruction import IterConfig

__all__ = [
    "SparseSignalSpec",
    "TrialOutcome",
    "RedundancyRow",
    "RedundancyTable",
    "component_indices",
    "make_sparse_signal",
    "recover_klargest",
    "monte_carlo_redundancy",
    "cs_bound_min_redundancy",
]


@dataclass(frozen=True)
class SparseSignalSpec:
    """``N``-sample signal built from ``(frequency_fraction, amplitude)`` pairs."""

    N: int
    components: tuple

    def __post_init__(self):
        if int(self.N) < 1:
            raise InvalidArgument(f"N must be >= 1, got {self.N}")
        comps = tuple((float(f), float(a)) for f, a in self.components)
        if len(comps) > self.N:
            raise InvalidArgument("more components than samples")
        for f, _ in comps:
            if not 0 < f < 1:
                raise InvalidArgument(f"frequency fraction must be in (0, 1), got {f}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def uniform(cls, N, freqs, amplitude=1.0):
        return cls(N, tuple((f, amplitude) for f in freqs))


def component_indices(spec):
    """DCT index of each component: ``round(f * (N - 1))``, half to even."""
    idx = [int(np.rint(f * (spec.N - 1))) for f, _ in spec.components]
    if len(set(idx)) != len(idx):
        raise InvalidArgument(f"components collide after rounding to DCT indices: {idx}")
    return idx


def make_sparse_signal(spec):
    """Synthesize the signal; its DCT is nonzero exactly at :func:`component_indices`."""
    coeffs = np.zeros(spec.N)
    for r, (_, amp) in zip(component_indices(spec), spec.components):
        coeffs[r] = amp
    return fft.idct(coeffs, norm="ortho")


@dataclass
class TrialOutcome:
    support: tuple
    iterations: int
    support_recovered: bool = None
    rmse_norm: float = None
    residuals: list = field(default_factory=list, repr=False)
    rmse_trace: list = field(default=None, repr=False)


def _klargest(coeffs, K):
    # stable sort on -|c|: equal magnitudes keep ascending index order
    return np.sort(np.argsort(-np.abs(coeffs), kind="stable")[:K])


def recover_klargest(samples, K, cfg=None, truth=None, true_support=None, fixed_support=None):
    """Recover a 1D K-sparse signal from its samples.

    Starts from the zero-filled signal.  Each iteration computes the DCT of
    the current estimate, keeps the ``K`` largest-magnitude coefficients
    (ties to the lower index) and zeros the rest, inverse-transforms, and
    restores the known samples.

    Parameters
    ----------
    samples : SampleSet
        One-row sample set, ``dims == (1, N)``.
    K : int
        Number of components to keep.
    cfg : IterConfig, optional
        Only ``max_iters`` and ``rel_tol`` are used.
    truth : array_like, optional
        Reference signal for the RMSE/max trace.  Its K largest DCT
        coefficients define the reference support unless ``true_support``
        is given.
    fixed_support : iterable of int, optional
        Use this support at every iteration instead of detecting it.

    Returns
    -------
    signal : numpy.ndarray
    outcome : TrialOutcome
    """
    cfg = cfg or IterConfig(init="zero_fill")
    if samples.dims[0] != 1:
        raise InvalidArgument(f"expected a one-row sample set, got dims {samples.dims}")
    n = samples.dims[1]
    K = int(K)
    if not 1 <= K <= len(samples):
        raise InvalidArgument(f"K={K} must be in [1, M={len(samples)}]")
    cols, known = samples.cols, samples.values
    scale = max(float(np.sqrt(np.mean(known**2))), np.finfo(float).tiny)

    if truth is not None:
        truth = np.asarray(truth, dtype=float).ravel()
        if truth.size != n:
            raise InvalidArgument(f"truth has {truth.size} samples, expected {n}")
        if true_support is None:
            true_support = _klargest(fft.dct(truth, norm="ortho"), K)
        peak = float(np.max(np.abs(truth))) or 1.0
    if fixed_support is not None:
        fixed_support = np.sort(np.asarray(list(fixed_support), dtype=np.int64))

    est = np.zeros(n)
    est[cols] = known
    residuals = []
    rmse_trace = [] if truth is not None else None
    support = None
    prev = None
    it = 0
    for it in range(1, int(cfg.max_iters) + 1):
        coeffs = fft.dct(est, norm="ortho")
        support = fixed_support if fixed_support is not None else _klargest(coeffs, K)
        kept = np.zeros(n)
        kept[support] = coeffs[support]
        est = fft.idct(kept, norm="ortho")
        residual = float(np.sqrt(np.mean((est[cols] - known) ** 2)))
        est[cols] = known
        residuals.append(residual)
        if rmse_trace is not None:
            rmse_trace.append(float(np.sqrt(np.mean((est - truth) ** 2))) / peak)
        if residual <= 1e-13 * scale or (
            prev is not None and prev > 0 and abs(prev - residual) <= cfg.rel_tol * prev
        ):
            break
        prev = residual

    outcome = TrialOutcome(support=tuple(int(s) for s in support), iterations=it, residuals=residuals)
    if true_support is not None:
        outcome.support_recovered = outcome.support == tuple(sorted(int(s) for s in true_support))
    if truth is not None:
        outcome.rmse_norm = rmse_trace[-1]
        outcome.rmse_trace = rmse_trace
    return est, outcome


@dataclass(frozen=True)
class RedundancyRow:
    sparsity: float
    freq: float
    M: int
    K: int
    trials: int
    failures: int

    @property
    def failure_rate(self):
        return self.failures / self.trials

    @property
    def redundancy(self):
        return self.M / self.K


@dataclass
class RedundancyTable:
    rows: list = field(default_factory=list)

    HEADER = ("sparsity", "freq", "M", "trials", "failures", "failure_rate", "redundancy")

    def write_csv(self, path):
        with open(path, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(self.HEADER)
            for r in self.rows:
                w.writerow([
                    fmt(r.sparsity), fmt(r.freq), r.M, r.trials, r.failures,
                    fmt(r.failure_rate), fmt(r.redundancy),
                ])

    def min_samples(self, max_failure_rate):
        """Smallest swept ``M`` whose failure rate is at most ``max_failure_rate``."""
        for r in sorted(self.rows, key=lambda r: r.M):
            if r.failure_rate <= max_failure_rate:
                return r.M
        return None


def _trial_rng(seed, trial):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))


def monte_carlo_redundancy(N, frequency_fraction, M_values, trials, seed=0, noise_sigma=0.0, cfg=None):
    """Failure rate of single-sinusoid recovery versus the number of samples.

    For every trial a random permutation of the ``N`` positions is drawn from
    a stream keyed by ``(seed, trial)``; the lattice for budget ``M`` is its
    first ``M`` entries.  Lattices of one trial are therefore nested across
    the sweep, and results do not depend on the order trials are run in.
    A trial fails when the detected frequency differs from the true one.

    Returns
    -------
    RedundancyTable
    """
    trials = int(trials)
    if trials < 1:
        raise InvalidArgument(f"trials must be >= 1, got {trials}")
    M_values = [int(m) for m in M_values]
    for m in M_values:
        if not 1 <= m <= N:
            raise InvalidArgument(f"M={m} must be in [1, N={N}]")
    cfg = cfg or IterConfig(max_iters=50, init="zero_fill")
    spec = SparseSignalSpec(N, ((frequency_fraction, 1.0),))
    truth = make_sparse_signal(spec)
    support = component_indices(spec)

    failures = {m: 0 for m in M_values}
    for t in range(trials):
        rng = _trial_rng(seed, t)
        perm = rng.permutation(N)
        noise = rng.standard_normal(N) * noise_sigma if noise_sigma else np.zeros(N)
        observed = truth + noise
        for m in M_values:
            cols = perm[:m]
            samples = SampleSet((1, N), np.zeros(m), cols, observed[cols])
            _, outcome = recover_klargest(samples, 1, cfg, true_support=support)
            failures[m] += not outcome.support_recovered
    rows = [RedundancyRow(1 / N, frequency_fraction, m, 1, trials, failures[m]) for m in M_values]
    return RedundancyTable(rows)


def cs_bound_min_redundancy(SS, log_base=math.e, tol=1e-13):
    """Root ``R*`` of ``g(R) = R + 2 log_base(R * SS)``.

    ``g`` is strictly increasing on ``(0, inf)``, so the bound
    ``R > -2 log(R * SS)`` holds exactly when ``R > R*``.
    """
    if not 0 < SS < 1 + 1e-15:
        raise InvalidArgument(f"SS must be in (0, 1], got {SS}")
    if not log_base > 1:
        raise InvalidArgument(f"log_base must be > 1, got {log_base}")
    ln_base = math.log(log_base)

    def g(r):
        return r + 2.0 * math.log(r * SS) / ln_base

    lo, hi = 1e-12, 1.0
    while g(hi) <= 0:
        hi *= 2.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
