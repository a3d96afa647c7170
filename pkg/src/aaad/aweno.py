"""Fifth-order A-WENO flux: CU flux plus finite-difference corrections."""
from __future__ import annotations

import numpy as np

FXX_WEIGHTS = np.array([-5.0, 39.0, -34.0, -34.0, 39.0, -5.0])
FXXXX_WEIGHTS = np.array([1.0, -3.0, 2.0, 2.0, -3.0, 1.0])


def _combine(weights, f_values):
    f = [np.asarray(v, dtype=float) for v in f_values]
    if len(f) != 6:
        raise ValueError("correction stencil needs six flux values F_{j-2..j+3}")
    out = weights[0] * f[0]
    for w, v in zip(weights[1:], f[1:]):
        out = out + w * v
    return out


def fxx_correction(f_values, h):
    """Fourth-order second derivative of F at x_{j+1/2}."""
    return _combine(FXX_WEIGHTS, f_values) / (48.0 * h * h)


def fxxxx_correction(f_values, h):
    """Second-order fourth derivative of F at x_{j+1/2}."""
    return _combine(FXXXX_WEIGHTS, f_values) / (2.0 * h ** 4)


def aweno_flux(cu, fxx, fxxxx, h):
    return cu - (h * h / 24.0) * fxx + (7.0 * h ** 4 / 5760.0) * fxxxx
