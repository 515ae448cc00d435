"""
Three ways to spread M samples over a grid
==========================================

The grid is cut into roughly M equal cells and one sample is put in each.
A quasi-uniform lattice takes the cell centre, a jittered lattice a random
point in the cell, and a random lattice ignores cells altogether.
"""

import numpy as np

from asbsr import LatticeSpec, generate_positions

dims = (12, 24)
M = 40

for kind in ("quasi_uniform", "jittered", "random"):
    pos = np.array(generate_positions(LatticeSpec(kind, M, dims, seed=1)))
    canvas = np.full(dims, ".")
    canvas[pos[:, 0], pos[:, 1]] = "o"
    print(f"{kind} ({len(pos)} samples)")
    print("\n".join("".join(r) for r in canvas))
    print()

# Gaps between samples: the largest distance from any pixel to its nearest
# sample.  Cells keep this small; fully random positions leave holes.
from scipy.spatial import cKDTree

grid = np.argwhere(np.ones(dims, bool))
for kind in ("quasi_uniform", "jittered", "random"):
    worst = []
    for seed in range(50):
        pos = generate_positions(LatticeSpec(kind, M, dims, seed))
        worst.append(cKDTree(pos).query(grid)[0].max())
    print(f"{kind:>13}: mean largest gap {np.mean(worst):.2f} pixels")
