"""Adaptive artificial anti-diffusion in the linearly degenerate fields.

Cells are classified along one direction from normalized minmod indicators
of density and pressure; each interface then receives a coefficient
C * h**k whose power depends on the roughest neighbouring cell, and the
anti-diffusion matrix acts only on the contact/shear characteristic fields.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .euler import EigenPair


class CellClass(IntEnum):
    SMOOTH = 0
    ROUGH = 1
    ROUGH_CONTACT = 2


@dataclass(frozen=True)
class AdaptationConfig:
    c_constant: float = 0.1
    epsilon0: float = 0.002
    order: int = 2

    def __post_init__(self):
        if self.c_constant < 0:
            raise ValueError("adaptation constant C must be non-negative")
        if not self.epsilon0 > 0:
            raise ValueError("epsilon0 must be positive")
        if self.order not in (2, 5):
            raise ValueError(f"order must be 2 or 5, got {self.order}")


def smoothness_indicator(w_left, w_center, w_right):
    """minmod(w_r - w_c, w_c - w_l) / max(w_l, w_c, w_r) for positive w."""
    a = np.asarray(w_right, dtype=float) - w_center
    b = np.asarray(w_center, dtype=float) - w_left
    mm = np.where(a * b > 0, np.where(np.abs(a) < np.abs(b), a, b), 0.0)
    s = mm / np.maximum(np.maximum(w_left, w_center), w_right)
    return float(s) if np.ndim(s) == 0 else s


def _indicator_field(w):
    """Indicators along axis 0 for cells 1..N-2 (length N-2)."""
    return smoothness_indicator(w[:-2], w[1:-1], w[2:])


def classify_cells(rho, p, epsilon0=0.002):
    """Per-cell labels along axis 0 (values of :class:`CellClass`).

    A trigger at cell j requires indicators at j-1, j, j+1, so only cells
    2..N-3 can trigger; marks spread to j-1..j+1.  Rough-contact marks take
    precedence over rough marks regardless of traversal order.
    """
    rho = np.asarray(rho, dtype=float)
    p = np.asarray(p, dtype=float)
    n = rho.shape[0]
    labels = np.zeros(rho.shape, dtype=np.int8)
    if n < 5:
        return labels
    s_rho = np.abs(_indicator_field(rho))          # cells 1..n-2
    s_p = np.abs(_indicator_field(p))
    centre = s_rho[1:-1]                            # cells 2..n-3
    rough = centre > np.maximum(s_rho[:-2], s_rho[2:]) + epsilon0
    contact = rough & (s_p[1:-1] < np.maximum(s_p[:-2], s_p[2:]))

    def spread(trigger):
        marked = np.zeros(rho.shape, dtype=bool)
        for shift in (1, 2, 3):                     # trigger j=k+2 marks k+1..k+3
            marked[shift:shift + trigger.shape[0]] |= trigger
        return marked

    labels[spread(rough)] = CellClass.ROUGH
    labels[spread(contact)] = CellClass.ROUGH_CONTACT
    return labels


def ad_coefficient(class_left, class_right, dx, cfg: AdaptationConfig):
    """C_{j+1/2} for one interface (scalars or label arrays)."""
    if not dx > 0:
        raise ValueError("dx must be positive")
    worst = np.maximum(np.asarray(class_left), np.asarray(class_right))
    C = cfg.c_constant
    smooth_power = 2 if cfg.order == 2 else 5
    out = np.where(worst == CellClass.ROUGH_CONTACT, C * dx,
                   np.where(worst == CellClass.ROUGH, C * dx ** 2, C * dx ** smooth_power))
    return float(out) if out.ndim == 0 else out


def degenerate_slots(dim):
    return (1,) if dim == 1 else (1, 2)


def ad_matrix(pair: EigenPair, c_interface: float, dim: int) -> np.ndarray:
    """Q = R diag(sel) R^{-1} with -C in the linearly degenerate slots.

    The negative eigenvalue makes ``F - Q dU/dx`` anti-diffusive.
    """
    if c_interface < 0:
        raise ValueError("c_interface must be non-negative")
    d = pair.r.shape[0]
    sel = np.zeros(d)
    sel[list(degenerate_slots(dim))] = -c_interface
    return pair.r @ np.diag(sel) @ pair.r_inv


def apply_ad(flux_base, q, u_left_cell, u_right_cell, dx):
    """F_AD = F_base - Q (U_{j+1} - U_j) / dx for a single interface."""
    if not dx > 0:
        raise ValueError("dx must be positive")
    dU = np.asarray(u_right_cell, dtype=float) - np.asarray(u_left_cell, dtype=float)
    return np.asarray(flux_base, dtype=float) - q @ dU / dx


def ad_correction_arrays(R, L, c_interface, dU, dx):
    """-Q dU/dx for arrays of interfaces, evaluated as C R_deg (L_deg dU)/dx.

    ``R, L`` have shape (d, d, ...), ``dU`` (d, ...), ``c_interface`` (...).
    """
    d = R.shape[0]
    slots = degenerate_slots(1 if d == 3 else 2)
    out = np.zeros_like(dU)
    for k in slots:
        amp = c_interface * np.einsum("b...,b...->...", L[k], dU) / dx
        out += R[:, k] * amp
    return out
