"""Central-upwind numerical flux with the built-in anti-diffusion term."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpeeds
from .euler import (ConservedState, GasModel, check_positive, flux_x,
                    primitives, swap_xy)
from .reconstruct import minmod2

DEGENERATE_TOL = 1e-10


@dataclass(frozen=True)
class SpeedPair:
    a_plus: float
    a_minus: float


@dataclass(frozen=True)
class InterfaceStates:
    u_minus: ConservedState
    u_plus: ConservedState


def speeds_arrays(Um, Up, gamma):
    """One-sided speeds (a+, a-) in the x-direction for state arrays."""
    Wm = primitives(Um, gamma)
    Wp = primitives(Up, gamma)
    cm = np.sqrt(gamma * Wm[-1] / Wm[0])
    cp = np.sqrt(gamma * Wp[-1] / Wp[0])
    a_plus = np.maximum(np.maximum(Wm[1] + cm, Wp[1] + cp), 0.0)
    a_minus = np.minimum(np.minimum(Wm[1] - cm, Wp[1] - cp), 0.0)
    return a_plus, a_minus


def degenerate_mask(a_plus, a_minus):
    return (a_plus - a_minus) < DEGENERATE_TOL * np.maximum(np.maximum(1.0, a_plus), -a_minus)


def builtin_q(Um, Up, Fm, Fp, a_plus, a_minus, width=None):
    """q = minmod(U+ - U*, U* - U-) with the intermediate state U*."""
    if width is None:
        width = a_plus - a_minus
    u_star = (a_plus * Up - a_minus * Um - (Fp - Fm)) / width
    return minmod2(Up - u_star, u_star - Um)


def cu_flux_arrays(Um, Up, gamma):
    """CU flux in the x-direction for interface state arrays (d, ...).

    Interfaces where a+ - a- degenerates get the average of the two physical
    fluxes.  Returns ``(flux, a_plus, a_minus)``.
    """
    Fm = flux_x(Um, gamma)
    Fp = flux_x(Up, gamma)
    a_plus, a_minus = speeds_arrays(Um, Up, gamma)
    degenerate = degenerate_mask(a_plus, a_minus)
    any_degenerate = degenerate.any()
    width = np.where(degenerate, 1.0, a_plus - a_minus) if any_degenerate else a_plus - a_minus
    q = builtin_q(Um, Up, Fm, Fp, a_plus, a_minus, width)
    H = (a_plus * Fm - a_minus * Fp) / width + (a_plus * a_minus / width) * (Up - Um - q)
    if any_degenerate:
        H = np.where(degenerate, 0.5 * (Fm + Fp), H)
    return H, a_plus, a_minus


# ---------------------------------------------------------------------------
# point-state API

def _oriented(state: ConservedState, direction: str):
    U = state.as_array()
    if direction == "x":
        return U
    if direction == "y":
        return swap_xy(U)
    raise ValueError(f"direction must be 'x' or 'y', got {direction!r}")


def local_speeds(states: InterfaceStates, gas: GasModel, direction: str = "x") -> SpeedPair:
    Um = _oriented(states.u_minus, direction)
    Up = _oriented(states.u_plus, direction)
    check_positive(np.stack([Um, Up], axis=1), gas.gamma)
    a_plus, a_minus = speeds_arrays(Um, Up, gas.gamma)
    return SpeedPair(float(a_plus), float(a_minus))


def builtin_ad_term(states: InterfaceStates, speeds: SpeedPair, gas: GasModel,
                    direction: str = "x") -> np.ndarray:
    a_plus, a_minus = speeds.a_plus, speeds.a_minus
    if degenerate_mask(np.float64(a_plus), np.float64(a_minus)):
        raise DegenerateSpeeds("a+ - a- vanishes")
    Um = _oriented(states.u_minus, direction)
    Up = _oriented(states.u_plus, direction)
    q = builtin_q(Um, Up, flux_x(Um, gas.gamma), flux_x(Up, gas.gamma), a_plus, a_minus)
    return swap_xy(q) if direction == "y" else q


def cu_numerical_flux(states: InterfaceStates, gas: GasModel, direction: str = "x") -> np.ndarray:
    Um = _oriented(states.u_minus, direction)
    Up = _oriented(states.u_plus, direction)
    H, _, _ = cu_flux_arrays(Um[:, None], Up[:, None], gas.gamma)
    H = H[:, 0]
    return swap_xy(H) if direction == "y" else H
