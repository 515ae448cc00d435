"""
Exact recovery by solving a small linear system
================================================

When the K nonzero DCT coefficients of a signal are known by index, K
samples at suitable positions pin them down: the K x K matrix of basis
functions evaluated at those positions just has to be invertible.
"""

import numpy as np

from asbsr import SampleSet, SingularSystemError, build_subtransform, dct1_inverse, direct_reconstruct

rng = np.random.default_rng(4)
n, k = 64, 8
support = np.sort(rng.choice(n, k, replace=False))
spectrum = np.zeros(n)
spectrum[support] = rng.standard_normal(k)
signal = dct1_inverse(spectrum)
print("support:", support.tolist())

cols = np.sort(rng.choice(n, k, replace=False))
samples = SampleSet((1, n), np.zeros(k), cols, signal[cols])
phi = build_subtransform((1, n), [(0, u) for u in support], samples.positions)
print(f"sub-transform condition number: {np.linalg.cond(phi):.2f}")

out = direct_reconstruct(samples, [(0, u) for u in support])[0]
print("relative error:", np.linalg.norm(out - signal) / np.linalg.norm(signal))

# Not every choice of positions works.  Basis function 2 of length 4 is
# symmetric, so samples at 0 and 3 cannot tell it apart from the DC term.
bad = SampleSet((1, 4), [0, 0], [0, 3], [1.0, 2.0])
try:
    direct_reconstruct(bad, [(0, 0), (0, 2)])
except SingularSystemError as exc:
    print("refused:", exc)
