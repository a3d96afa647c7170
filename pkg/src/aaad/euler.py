"""Ideal-gas Euler equations: EOS, fluxes, interface averages, eigensystems.

Array functions take the conserved/primitive variables stacked along axis 0,
``(rho, rho*u, E)`` in 1-D and ``(rho, rho*u, rho*v, E)`` in 2-D, with any
trailing grid shape.  The x-direction is the "normal" direction; y-direction
quantities are obtained by swapping the two momentum components
(:func:`swap_xy`), which maps ``G(U)`` onto ``F`` exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (NonPositiveAverage, NonPositiveDensity,
                     NonPositivePressure, SingularEigensystem)

VACUUM_TOL = 1e-12


@dataclass(frozen=True)
class GasModel:
    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


@dataclass(frozen=True)
class PrimitiveState:
    """Point state (rho, u, [v], p); ``v`` is None in 1-D."""
    rho: float
    u: float
    p: float
    v: Optional[float] = None

    def __post_init__(self):
        if not self.rho > 0:
            raise NonPositiveDensity(f"density {self.rho} <= 0")
        if not self.p > 0:
            raise NonPositivePressure(f"pressure {self.p} <= 0")

    @property
    def dim(self):
        return 1 if self.v is None else 2

    def as_array(self):
        if self.v is None:
            return np.array([self.rho, self.u, self.p])
        return np.array([self.rho, self.u, self.v, self.p])

    @classmethod
    def from_array(cls, w):
        w = np.asarray(w, dtype=float)
        if w.shape[0] == 3:
            return cls(float(w[0]), float(w[1]), float(w[2]))
        return cls(float(w[0]), float(w[1]), float(w[3]), v=float(w[2]))


@dataclass(frozen=True)
class ConservedState:
    """Point state (rho, rho*u, [rho*v], E); ``mom_y`` is None in 1-D."""
    rho: float
    mom_x: float
    energy: float
    mom_y: Optional[float] = None

    @property
    def dim(self):
        return 1 if self.mom_y is None else 2

    def as_array(self):
        if self.mom_y is None:
            return np.array([self.rho, self.mom_x, self.energy])
        return np.array([self.rho, self.mom_x, self.mom_y, self.energy])

    @classmethod
    def from_array(cls, U):
        U = np.asarray(U, dtype=float)
        if U.shape[0] == 3:
            return cls(float(U[0]), float(U[1]), float(U[2]))
        return cls(float(U[0]), float(U[1]), float(U[3]), mom_y=float(U[2]))


# ---------------------------------------------------------------------------
# array kernels

def swap_xy(A):
    """Swap the x/y momentum (or velocity) rows of a 4-component array."""
    if A.shape[0] != 4:
        raise ValueError("swap_xy needs 2-D (4-component) states")
    return A[[0, 2, 1, 3]]


def pressure(U, gamma):
    kinetic = 0.5 * np.sum(U[1:-1] ** 2, axis=0) / U[0]
    return (gamma - 1.0) * (U[-1] - kinetic)


def primitives(U, gamma):
    """Conserved -> primitive, no positivity check."""
    W = np.empty_like(U)
    W[0] = U[0]
    W[1:-1] = U[1:-1] / U[0]
    W[-1] = (gamma - 1.0) * (U[-1] - 0.5 * U[0] * np.sum(W[1:-1] ** 2, axis=0))
    return W


def conserved(W, gamma):
    U = np.empty_like(W)
    U[0] = W[0]
    U[1:-1] = W[0] * W[1:-1]
    U[-1] = W[-1] / (gamma - 1.0) + 0.5 * W[0] * np.sum(W[1:-1] ** 2, axis=0)
    return U


def check_positive(U, gamma, offset=None):
    """Raise if any cell has rho <= 0 or p <= 0; return the primitive array.

    ``offset`` is subtracted from reported indices so that ghost-padded arrays
    report interior-cell coordinates.
    """
    W = primitives(U, gamma)
    for comp, exc, name in ((0, NonPositiveDensity, "density"),
                            (-1, NonPositivePressure, "pressure")):
        bad = ~(W[comp] > 0)
        if bad.any():
            first = tuple(np.argwhere(bad)[0])
            idx = np.asarray(first)
            if offset is not None:
                idx = idx - np.asarray(offset)
            raise exc(f"non-positive {name} {W[comp][first]:.6g}", index=tuple(idx))
    return W


def flux_x(U, gamma):
    """Physical flux in the x-direction, F(U)."""
    W = primitives(U, gamma)
    u, p = W[1], W[-1]
    F = np.empty_like(U)
    F[0] = U[1]
    F[1] = U[1] * u + p
    if U.shape[0] == 4:
        F[2] = U[2] * u
    F[-1] = u * (U[-1] + p)
    return F


def flux_y(U, gamma):
    """Physical flux in the y-direction, G(U) (2-D only)."""
    return swap_xy(flux_x(swap_xy(U), gamma))


def jacobian_x(U, gamma):
    """Analytic Jacobian dF/dU for a single state (3- or 4-component)."""
    U = np.asarray(U, dtype=float)
    g = gamma
    rho, E = U[0], U[-1]
    u = U[1] / rho
    if U.shape[0] == 3:
        p = (g - 1) * (E - 0.5 * rho * u * u)
        H = (E + p) / rho
        return np.array([
            [0.0, 1.0, 0.0],
            [0.5 * (g - 3) * u * u, (3 - g) * u, g - 1],
            [-g * u * E / rho + (g - 1) * u ** 3, H - (g - 1) * u * u, g * u],
        ])
    v = U[2] / rho
    q2 = u * u + v * v
    p = (g - 1) * (E - 0.5 * rho * q2)
    H = (E + p) / rho
    return np.array([
        [0.0, 1.0, 0.0, 0.0],
        [0.5 * (g - 1) * q2 - u * u, (3 - g) * u, -(g - 1) * v, g - 1],
        [-u * v, v, u, 0.0],
        [u * (0.5 * (g - 1) * q2 - H), H - (g - 1) * u * u, -(g - 1) * u * v, g * u],
    ])


def jacobian_y(U, gamma):
    P = np.eye(4)[[0, 2, 1, 3]]
    return P @ jacobian_x(P @ np.asarray(U, dtype=float), gamma) @ P


def sound_speed_array(W, gamma):
    return np.sqrt(gamma * W[-1] / W[0])


@dataclass(frozen=True)
class InterfaceAverage:
    """Hatted quantities at an interface (scalars or arrays)."""
    rho: np.ndarray
    u: np.ndarray
    p: np.ndarray
    E: np.ndarray
    H: np.ndarray
    phi: np.ndarray
    c: np.ndarray
    v: Optional[np.ndarray] = None

    @property
    def dim(self):
        return 1 if self.v is None else 2


def average_arrays(WL, WR, gamma):
    """Arithmetic-mean interface average of two primitive arrays."""
    rho = 0.5 * (WL[0] + WR[0])
    u = 0.5 * (WL[1] + WR[1])
    p = 0.5 * (WL[-1] + WR[-1])
    if WL.shape[0] == 4:
        v = 0.5 * (WL[2] + WR[2])
        q2 = u * u + v * v
    else:
        v = None
        q2 = u * u
    E = p / (gamma - 1.0) + 0.5 * rho * q2
    H = (E + p) / rho
    phi = 2.0 * H - u * u
    c = np.sqrt(gamma * p / rho)
    return InterfaceAverage(rho=rho, u=u, p=p, E=E, H=H, phi=phi, c=c, v=v)


def eigen_arrays(avg, gamma):
    """Right/left eigenvector matrices of A(U_hat), shapes (d, d, ...).

    1-D uses the closed forms written with phi_hat; 2-D uses the standard
    ideal-gas basis whose middle columns carry density and tangential
    velocity.
    """
    u, c, H = avg.u, avg.c, avg.H
    if np.any(c < VACUUM_TOL * np.maximum(1.0, np.abs(u))):
        raise SingularEigensystem("sound speed vanishes at an interface")
    one = np.ones_like(u)
    zero = np.zeros_like(u)
    if avg.v is None:
        phi = avg.phi
        R = np.array([
            [one, one, one],
            [u - c, u, u + c],
            [H - u * c, 0.5 * u * u, H + u * c],
        ])
        s = phi / (2.0 * c)
        L = np.array([
            [0.5 * u * u + u * s, -u - s, one],
            [2.0 * phi - 2.0 * H, 2.0 * u, -2.0 * one],
            [0.5 * u * u - u * s, -u + s, one],
        ]) / phi
        return R, L
    v = avg.v
    q2 = u * u + v * v
    R = np.array([
        [one, one, zero, one],
        [u - c, u, zero, u + c],
        [v, v, one, v],
        [H - u * c, 0.5 * q2, v, H + u * c],
    ])
    b1 = (gamma - 1.0) / (c * c)
    b2 = 0.5 * b1 * q2
    L = np.array([
        [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1],
        [1.0 - b2, b1 * u, b1 * v, -b1],
        [-v, zero, one, zero],
        [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1],
    ])
    return R, L


# ---------------------------------------------------------------------------
# point-state API

def primitive_from_conserved(U: ConservedState, gas: GasModel) -> PrimitiveState:
    if not U.rho > 0:
        raise NonPositiveDensity(f"density {U.rho} <= 0")
    W = primitives(U.as_array(), gas.gamma)
    if not W[-1] > 0:
        raise NonPositivePressure(f"pressure {W[-1]} <= 0")
    return PrimitiveState.from_array(W)


def conserved_from_primitive(W: PrimitiveState, gas: GasModel) -> ConservedState:
    return ConservedState.from_array(conserved(W.as_array(), gas.gamma))


def physical_flux_x(U: ConservedState, gas: GasModel) -> np.ndarray:
    primitive_from_conserved(U, gas)
    return flux_x(U.as_array(), gas.gamma)


def physical_flux_y(U: ConservedState, gas: GasModel) -> np.ndarray:
    if U.dim != 2:
        raise ValueError("y-flux is defined for 2-D states only")
    primitive_from_conserved(U, gas)
    return flux_y(U.as_array(), gas.gamma)


def sound_speed(W: PrimitiveState, gas: GasModel) -> float:
    return float(np.sqrt(gas.gamma * W.p / W.rho))


def interface_average(W_left: PrimitiveState, W_right: PrimitiveState,
                      gas: GasModel) -> InterfaceAverage:
    if W_left.dim != W_right.dim:
        raise ValueError("mixed 1-D/2-D states")
    avg = average_arrays(W_left.as_array(), W_right.as_array(), gas.gamma)
    if not (avg.rho > 0 and avg.p > 0):
        raise NonPositiveAverage("interface average is not positive")
    return InterfaceAverage(**{k: (None if val is None else float(val))
                               for k, val in avg.__dict__.items()})


@dataclass(frozen=True)
class EigenPair:
    r: np.ndarray
    r_inv: np.ndarray
    lam: np.ndarray


def eigensystem_x(avg: InterfaceAverage, gas: GasModel, dim: Optional[int] = None) -> EigenPair:
    dim = avg.dim if dim is None else dim
    if dim != avg.dim:
        raise ValueError("dim does not match the interface average")
    R, L = eigen_arrays(avg, gas.gamma)
    u, c = avg.u, avg.c
    lam = np.array([u - c, u, u + c]) if dim == 1 else np.array([u - c, u, u, u + c])
    return EigenPair(np.asarray(R, dtype=float), np.asarray(L, dtype=float), lam)


def eigensystem_y(avg: InterfaceAverage, gas: GasModel) -> EigenPair:
    """Eigensystem of B(U_hat) = dG/dU, built from the x-system of the
    velocity-swapped average."""
    if avg.dim != 2:
        raise ValueError("eigensystem_y needs a 2-D average")
    swapped = InterfaceAverage(rho=avg.rho, u=avg.v, v=avg.u, p=avg.p, E=avg.E,
                               H=avg.H, phi=2.0 * avg.H - avg.v ** 2, c=avg.c)
    pair = eigensystem_x(swapped, gas, 2)
    P = np.eye(4)[[0, 2, 1, 3]]
    return EigenPair(P @ pair.r, pair.r_inv @ P, pair.lam)


def hatted_state(avg: InterfaceAverage) -> np.ndarray:
    """Conserved vector built from the hatted averages."""
    if avg.v is None:
        return np.array([avg.rho, avg.rho * avg.u, avg.E])
    return np.array([avg.rho, avg.rho * avg.u, avg.rho * avg.v, avg.E])
