"""
Finding a few sinusoids without knowing where they are
======================================================

Here only the number of components K is known, not their frequencies.
Each iteration keeps the K largest DCT coefficients of the current
estimate.  It works with some probability that grows with the number of
samples; the Monte-Carlo sweep estimates how many samples per component
are needed.
"""

import numpy as np

from asbsr import IterConfig, SampleSet, SparseSignalSpec, make_sparse_signal, recover_klargest
from asbsr.cs_lab import component_indices, cs_bound_min_redundancy, monte_carlo_redundancy

spec = SparseSignalSpec.uniform(512, (0.1, 0.3, 0.5, 0.7, 0.9))
truth = make_sparse_signal(spec)
print("true DCT indices:", component_indices(spec))

cfg = IterConfig(max_iters=300, rel_tol=1e-8, init="zero_fill")
for seed in range(8):
    cols = np.sort(np.random.default_rng(seed).choice(512, 76, replace=False))
    s = SampleSet((1, 512), np.zeros(76), cols, truth[cols])
    _, o = recover_klargest(s, 5, cfg, truth=truth)
    verdict = "ok    " if o.support_recovered else "failed"
    print(f"seed {seed}: {verdict} found {list(o.support)} RMSE/max {o.rmse_norm:.1e} after {o.iterations} iterations")

# One sinusoid, 300 random lattices per budget.
table = monte_carlo_redundancy(512, 0.5, [6, 8, 10, 12, 16, 20, 24], trials=300, seed=0,
                               cfg=IterConfig(20, 1e-8, "zero_fill"))
for row in table.rows:
    print(f"M={row.M:>2}: failure rate {row.failure_rate:.3f}")
print("fewest samples with failure rate <= 1%:", table.min_samples(0.01))

# The closed-form bound R > -2 log(R SS) asks for far fewer.
for ss in (5 / 512, 0.1, 0.4):
    print(f"SS={ss:.4f}: R* = {cs_bound_min_redundancy(ss):.3f} (natural log), {cs_bound_min_redundancy(ss, 2):.3f} (log2)")
