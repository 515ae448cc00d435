"""
How sparse is an image spectrum?
================================

An image rebuilt from only part of its DCT spectrum differs from the
original by the energy of the dropped coefficients.  For a given error
budget the smallest such set of coefficients is found by keeping the
largest ones first; its share of the spectrum is the spectrum sparsity.
"""

import numpy as np

from asbsr import dct2_forward, dct2_inverse, msed_zone, sparsity, truncate_spectrum
from asbsr.synthetic import natural_noise_image

# A 128x128 test image whose spectrum decays like 1/(1+rho), roughly what
# photographs of natural scenes look like.
image = natural_noise_image((128, 128), seed=3)
spectrum = dct2_forward(image)
print(f"image range {image.min():.1f}..{image.max():.1f}")

# Sweep the error budget and watch how many coefficients are needed.
for rmse in (1, 2, 4, 8, 16):
    zone = msed_zone(spectrum, rmse=rmse)
    approx = truncate_spectrum(spectrum, zone)
    print(f"target RMSE {rmse:>2}: keep {int(zone.sum()):>5} coefficients, SS={sparsity(zone):.3f}, actual RMSE {approx.rmse:.3f}")

# The error predicted from the dropped coefficients matches the error
# measured in the pixel domain.
zone = msed_zone(spectrum, rmse=4)
rebuilt = dct2_inverse(np.where(zone, spectrum, 0.0))
print("pixel-domain RMSE:", np.sqrt(np.mean((rebuilt - image) ** 2)))
print("predicted RMSE:   ", truncate_spectrum(spectrum, zone).rmse)

# The zone concentrates near the DC corner; print a coarse picture of it.
coarse = zone.reshape(16, 8, 16, 8).mean(axis=(1, 3))
for row in coarse:
    print("".join("#" if v > 0.5 else "+" if v > 0.1 else "." for v in row))
