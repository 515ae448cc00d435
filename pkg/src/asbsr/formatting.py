"""Locale-independent number formatting for text artifacts."""

import math

import numpy as np


def fmt(x):
    """Fixed (non-exponent) notation with 9 significant digits."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return np.format_float_positional(x, precision=9, unique=False, fractional=False, trim="-")
