"""Interface reconstruction in local characteristic variables.

Second order: generalized minmod MUSCL slopes.  Fifth order: WENO-Z
interpolation of point values.  Both operate componentwise on arrays whose
trailing axes index interfaces.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np


@dataclass(frozen=True)
class LimiterConfig:
    theta: float = 2.0

    def __post_init__(self):
        if not 1.0 <= self.theta <= 2.0:
            raise ValueError(f"theta must lie in [1, 2], got {self.theta}")


@dataclass(frozen=True)
class WenoConfig:
    p_exponent: int = 2
    epsilon: float = 1e-12
    d: tuple = field(default=(1 / 16, 5 / 8, 5 / 16))

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if sum(self.d) != 1.0:
            raise ValueError("linear weights must sum to one")


def minmod(*args):
    """Componentwise minmod of scalars or equally shaped arrays.

    Returns the smallest argument if all are positive, the largest if all are
    negative, and zero otherwise.
    """
    if not args:
        raise ValueError("minmod needs at least one argument")
    z = np.stack(np.broadcast_arrays(*[np.asarray(a, dtype=float) for a in args]))
    out = np.where(np.all(z > 0, axis=0), z.min(axis=0),
                   np.where(np.all(z < 0, axis=0), z.max(axis=0), 0.0))
    return float(out) if out.ndim == 0 else out


def minmod2(a, b):
    return np.where(a * b > 0, np.where(np.abs(a) < np.abs(b), a, b), 0.0)


def minmod3(a, b, c):
    pos = (a > 0) & (b > 0) & (c > 0)
    neg = (a < 0) & (b < 0) & (c < 0)
    lo = np.minimum(np.minimum(a, b), c)
    hi = np.maximum(np.maximum(a, b), c)
    return np.where(pos, lo, np.where(neg, hi, 0.0))


def muscl_slopes(gm1, g0, g1, dx, theta):
    return minmod3(theta * (g0 - gm1) / dx, (g1 - gm1) / (2.0 * dx), theta * (g1 - g0) / dx)


def muscl_interface_states(stencil, dx, theta=2.0):
    """Left/right interface values from four cell values (l = -1, 0, 1, 2).

    ``stencil`` is a sequence of four arrays (or scalars).  Returns
    ``(gamma_minus, gamma_plus)`` at the interface between cells 0 and 1.
    """
    if len(stencil) != 4:
        raise ValueError("MUSCL needs a 4-cell stencil")
    gm1, g0, g1, g2 = (np.asarray(s, dtype=float) for s in stencil)
    s0 = muscl_slopes(gm1, g0, g1, dx, theta)
    s1 = muscl_slopes(g0, g1, g2, dx, theta)
    return g0 + 0.5 * dx * s0, g1 - 0.5 * dx * s1


def wenoz_weights(psi, cfg=WenoConfig()):
    """Nonlinear weights (w0, w1, w2) for psi_{j-2..j+2}."""
    a, b, c, d, e = psi
    beta0 = 13.0 / 12.0 * (a - 2 * b + c) ** 2 + 0.25 * (a - 4 * b + 3 * c) ** 2
    beta1 = 13.0 / 12.0 * (b - 2 * c + d) ** 2 + 0.25 * (b - d) ** 2
    beta2 = 13.0 / 12.0 * (c - 2 * d + e) ** 2 + 0.25 * (3 * c - 4 * d + e) ** 2
    tau5 = np.abs(beta2 - beta0)
    p, eps = cfg.p_exponent, cfg.epsilon
    a0 = cfg.d[0] * (1.0 + (tau5 / (beta0 + eps)) ** p)
    a1 = cfg.d[1] * (1.0 + (tau5 / (beta1 + eps)) ** p)
    a2 = cfg.d[2] * (1.0 + (tau5 / (beta2 + eps)) ** p)
    s = a0 + a1 + a2
    return a0 / s, a1 / s, a2 / s


def parabola_values(psi):
    a, b, c, d, e = psi
    p0 = 0.375 * a - 1.25 * b + 1.875 * c
    p1 = -0.125 * b + 0.75 * c + 0.375 * d
    p2 = 0.375 * c + 0.75 * d - 0.125 * e
    return p0, p1, p2


@numba.vectorize(["float64(float64, float64, float64, float64, float64,"
                  " float64, float64, float64, float64, float64)"], cache=True)
def _wenoz_fused(a, b, c, d, e, d0, d1, d2, p, eps):
    # one pass over memory: same arithmetic as wenoz_weights/parabola_values
    t = a - 2.0 * b + c
    u = a - 4.0 * b + 3.0 * c
    beta0 = 13.0 / 12.0 * t * t + 0.25 * u * u
    t = b - 2.0 * c + d
    u = b - d
    beta1 = 13.0 / 12.0 * t * t + 0.25 * u * u
    t = c - 2.0 * d + e
    u = 3.0 * c - 4.0 * d + e
    beta2 = 13.0 / 12.0 * t * t + 0.25 * u * u
    tau5 = abs(beta2 - beta0)
    r0 = tau5 / (beta0 + eps)
    r1 = tau5 / (beta1 + eps)
    r2 = tau5 / (beta2 + eps)
    if p == 2.0:
        a0 = d0 * (1.0 + r0 * r0)
        a1 = d1 * (1.0 + r1 * r1)
        a2 = d2 * (1.0 + r2 * r2)
    else:
        a0 = d0 * (1.0 + r0 ** p)
        a1 = d1 * (1.0 + r1 ** p)
        a2 = d2 * (1.0 + r2 ** p)
    p0 = 0.375 * a - 1.25 * b + 1.875 * c
    p1 = -0.125 * b + 0.75 * c + 0.375 * d
    p2 = 0.375 * c + 0.75 * d - 0.125 * e
    return (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2)


def wenoz_minus(psi, cfg=WenoConfig()):
    """WENO-Z value at x_{j+1/2} from the left, given psi_{j-2..j+2}."""
    if len(psi) != 5:
        raise ValueError("WENO-Z needs five values")
    psi = [np.asarray(x, dtype=float) for x in psi]
    d0, d1, d2 = cfg.d
    out = _wenoz_fused(*psi, d0, d1, d2, float(cfg.p_exponent), cfg.epsilon)
    return float(out) if np.ndim(out) == 0 else out


def wenoz_minus_reference(psi, cfg=WenoConfig()):
    """Plain numpy composition of weights and parabolas (slow, for checking)."""
    psi = [np.asarray(x, dtype=float) for x in psi]
    if len(psi) != 5:
        raise ValueError("WENO-Z needs five values")
    w0, w1, w2 = wenoz_weights(psi, cfg)
    p0, p1, p2 = parabola_values(psi)
    return w0 * p0 + w1 * p1 + w2 * p2


def wenoz_plus(psi, cfg=WenoConfig()):
    """WENO-Z value at x_{j+1/2} from the right, given psi_{j-1..j+3}.

    Mirror image of :func:`wenoz_minus` about the interface.
    """
    if len(psi) != 5:
        raise ValueError("WENO-Z needs five values")
    return wenoz_minus(psi[::-1], cfg)


@numba.guvectorize(["void(float64[:,:], float64[:], float64[:])"], "(a,b),(b)->(a)",
                   cache=True)
def _small_matvec(M, v, out):
    for a in range(M.shape[0]):
        acc = 0.0
        for b in range(M.shape[1]):
            acc += M[a, b] * v[b]
        out[a] = acc


def batched_matvec(M, V):
    """out[a, ...] = sum_b M[a, b, ...] V[b, ...]; M is (d, d, ...), V is (d, ...)."""
    M = np.asarray(M, dtype=float)
    V = np.asarray(V, dtype=float)
    if M.ndim == 2 and V.ndim == 1:
        return M @ V
    out = _small_matvec(np.moveaxis(M, (0, 1), (-2, -1)), np.moveaxis(V, 0, -1))
    return np.moveaxis(out, -1, 0)


def project_characteristic(states, r_inv):
    """Gamma = R^{-1} U for a state array of shape (d, ...)."""
    return batched_matvec(r_inv, states)


def lift_characteristic(chars, r):
    return batched_matvec(r, chars)
