"""Semi-discrete right-hand side, CFL time step and SSP-RK3 marching."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .antidiffusion import (AdaptationConfig, CellClass, ad_coefficient,
                            ad_correction_arrays, classify_cells)
from .aweno import aweno_flux, fxx_correction, fxxxx_correction
from .errors import SolverError
from .euler import (average_arrays, check_positive, eigen_arrays, flux_x,
                    primitives, swap_xy)
from .flux import cu_flux_arrays
from .grid import BoundaryCondition, GridSpec, fill_ghosts
from .reconstruct import (WenoConfig, batched_matvec, muscl_interface_states, wenoz_minus,
                          wenoz_plus)

log = logging.getLogger(__name__)

SCHEMES = {
    # name: (order, anti-diffusion)
    "cu2": (2, False),
    "aaad2": (2, True),
    "aweno5": (5, False),
    "aaad5": (5, True),
}
CLASSIFY_HALO = 4   # cells needed beyond an interface neighbour to classify it
TRANSVERSE_BLOCK = 64
MAX_FALLBACK_SWEEPS = 8


def _admissible(U, gamma):
    with np.errstate(invalid="ignore", divide="ignore"):
        W = primitives(U, gamma)
    return (W[0] > 0) & (W[-1] > 0) & np.isfinite(W).all(axis=0)


@dataclass(frozen=True)
class SchemeConfig:
    order: int = 2
    anti_diffusion: bool = True
    c_constant: float = 0.1
    theta: float = 2.0
    cfl: float = 0.4
    epsilon0: float = 0.002
    weno: WenoConfig = field(default_factory=WenoConfig)
    dt_cap_k: Optional[float] = None      # accuracy mode: dt <= k * h**(5/3) (order 5)
    stage_fallback: bool = True           # redo inadmissible stages with Rusanov fluxes

    def __post_init__(self):
        if self.order not in (2, 5):
            raise ValueError(f"order must be 2 or 5, got {self.order}")
        if self.c_constant < 0:
            raise ValueError("C must be non-negative")
        if not 0 < self.cfl <= 1:
            raise ValueError("CFL number must lie in (0, 1]")

    @classmethod
    def from_name(cls, name, **kwargs):
        try:
            order, ad = SCHEMES[name]
        except KeyError:
            raise ValueError(f"unknown scheme {name!r}; choose from {sorted(SCHEMES)}") from None
        return cls(order=order, anti_diffusion=ad, **kwargs)

    @property
    def ghost(self):
        return 2 if self.order == 2 else 3

    @property
    def adaptation(self):
        return AdaptationConfig(self.c_constant, self.epsilon0, self.order)


def _positivity_fallback(Um, Up, U0, U1, gamma):
    """Replace non-positive reconstructed pairs by the adjacent cell values."""
    Wm = primitives(Um, gamma)
    Wp = primitives(Up, gamma)
    bad = ~((Wm[0] > 0) & (Wm[-1] > 0) & (Wp[0] > 0) & (Wp[-1] > 0))
    if bad.any():
        Um = np.where(bad, U0, Um)
        Up = np.where(bad, U1, Up)
    return Um, Up, int(bad.sum())


def rusanov_flux(U0, U1, gamma):
    """First-order local Lax-Friedrichs flux between cell values ``U0 | U1``.

    Positivity preserving for forward Euler steps with CFL number <= 1/2.
    """
    W0, W1 = primitives(U0, gamma), primitives(U1, gamma)
    a = np.maximum(np.abs(W0[1]) + np.sqrt(gamma * W0[-1] / W0[0]),
                   np.abs(W1[1]) + np.sqrt(gamma * W1[-1] / W1[0]))
    return 0.5 * (flux_x(U0, gamma) + flux_x(U1, gamma)) - 0.5 * a * (U1 - U0)


def interface_fluxes(P, gamma, h, scheme: SchemeConfig, c_interface=None, low_order=None):
    """Numerical fluxes at the n+1 interior interfaces along axis 1.

    ``P`` is padded with exactly ``scheme.ghost`` layers along axis 1.
    ``c_interface`` (shape (n+1, ...)) switches on the anti-diffusion term.
    ``low_order`` (boolean, shape (n+1, ...)) selects interfaces that use the
    first-order Rusanov flux instead.
    """
    g = scheme.ghost
    n = P.shape[1] - 2 * g

    def cell(s):
        return P[:, g - 1 + s:g + n + s]

    W = primitives(P, gamma)
    avg = average_arrays(W[:, g - 1:g + n], W[:, g:g + n + 1], gamma)
    R, L = eigen_arrays(avg, gamma)
    if scheme.order == 2:
        chars = [batched_matvec(L, cell(s)) for s in (-1, 0, 1, 2)]
        gm, gp = muscl_interface_states(chars, h, scheme.theta)
    else:
        chars = [batched_matvec(L, cell(s)) for s in (-2, -1, 0, 1, 2, 3)]
        gm = wenoz_minus(chars[0:5], scheme.weno)
        gp = wenoz_plus(chars[1:6], scheme.weno)
    Um = batched_matvec(R, gm)
    Up = batched_matvec(R, gp)
    Um, Up, nfix = _positivity_fallback(Um, Up, cell(0), cell(1), gamma)
    if nfix:
        log.debug("positivity fallback at %d interfaces", nfix)
    H, _, _ = cu_flux_arrays(Um, Up, gamma)
    if scheme.order == 5:
        F = flux_x(P, gamma)
        fs = [F[:, g - 1 + s:g + n + s] for s in (-2, -1, 0, 1, 2, 3)]
        H = aweno_flux(H, fxx_correction(fs, h), fxxxx_correction(fs, h), h)
    if c_interface is not None:
        H = H + ad_correction_arrays(R, L, c_interface, cell(1) - cell(0), h)
    if low_order is not None and low_order.any():
        H = np.where(low_order, rusanov_flux(cell(0), cell(1), gamma), H)
    return H


def interface_classes(P, gamma, G, n, periodic, epsilon0=0.002):
    """Labels of the cells left/right of each interface along axis 1.

    ``P`` is padded with G >= CLASSIFY_HALO layers.  On non-periodic sides
    ghost cells are forced smooth; periodic ghosts are classified from the
    wrapped data so both copies of a boundary interface agree.
    """
    W = primitives(P, gamma)
    labels = classify_cells(W[0], W[-1], epsilon0)
    if not periodic:
        labels[:G] = CellClass.SMOOTH
        labels[G + n:] = CellClass.SMOOTH
    return labels[G - 1:G + n], labels[G:G + n + 1]


def low_order_interfaces(cells, periodic):
    """Interfaces (axis 0, n+1 of them) touching a flagged cell of ``cells``."""
    edge = cells[-1:] | cells[:1] if periodic else np.zeros_like(cells[:1])
    padded = np.concatenate([edge, cells, edge], axis=0)
    return padded[:-1] | padded[1:]


def direction_fluxes(P, G, gamma, h, scheme: SchemeConfig, periodic, low_order=None):
    """Fluxes along axis 1 of an array padded with G >= ghost layers.

    Rows along a trailing transverse axis are independent, so 2-D arrays are
    processed in blocks of rows to keep temporaries cache-sized.
    """
    if P.ndim == 3 and P.shape[2] > TRANSVERSE_BLOCK:
        parts = []
        for j in range(0, P.shape[2], TRANSVERSE_BLOCK):
            blk = slice(j, j + TRANSVERSE_BLOCK)
            low = None if low_order is None else low_order[:, blk]
            parts.append(_direction_fluxes(P[:, :, blk], G, gamma, h, scheme, periodic, low))
        return np.concatenate(parts, axis=2)
    return _direction_fluxes(P, G, gamma, h, scheme, periodic, low_order)


def _direction_fluxes(P, G, gamma, h, scheme, periodic, low_order=None):
    g = scheme.ghost
    n = P.shape[1] - 2 * G
    c_interface = None
    if scheme.anti_diffusion:
        left, right = interface_classes(P, gamma, G, n, periodic, scheme.epsilon0)
        c_interface = ad_coefficient(left, right, h, scheme.adaptation)
    return interface_fluxes(P[:, G - g:G + n + g], gamma, h, scheme, c_interface, low_order)


def gravity_source(U):
    """Gravity along +y: (0, 0, rho, rho*v)."""
    S = np.zeros_like(U)
    S[2] = U[0]
    S[3] = U[2]
    return S


@dataclass
class Discretization:
    """Everything the semi-discrete operator needs besides the state."""
    grid: GridSpec
    bc: BoundaryCondition
    gamma: float
    scheme: SchemeConfig
    source: Optional[Callable] = None
    fallback_cells: int = 0      # cell-stages recomputed with first-order fluxes
    fallback_stages: int = 0     # forward-Euler stages that needed the fallback

    @property
    def halo(self):
        return max(self.scheme.ghost, CLASSIFY_HALO) if self.scheme.anti_diffusion \
            else self.scheme.ghost

    def rhs(self, U, low_cells=None):
        """dU/dt for the interior field U of shape (d, nx[, ny]).

        ``low_cells`` (boolean, grid shape) marks cells whose interfaces use
        the first-order Rusanov flux.
        """
        check_positive(U, self.gamma)
        G = self.halo
        P = fill_ghosts(U, self.bc, G, self.gamma)
        grid, gamma, scheme = self.grid, self.gamma, self.scheme
        px, py = self.bc.periodic(1), (self.bc.periodic(2) if grid.dim == 2 else False)
        lx = ly = None
        if low_cells is not None:
            lx = low_order_interfaces(low_cells, px)
            if grid.dim == 2:
                ly = low_order_interfaces(low_cells.T, py)
        if grid.dim == 1:
            F = direction_fluxes(P, G, gamma, grid.dx, scheme, px, lx)
            L = -(F[:, 1:] - F[:, :-1]) / grid.dx
        else:
            nx, ny = grid.shape
            Px = P[:, :, G:G + ny]
            F = direction_fluxes(Px, G, gamma, grid.dx, scheme, px, lx)
            Py = swap_xy(P[:, G:G + nx, :]).transpose(0, 2, 1)
            Gf = direction_fluxes(Py, G, gamma, grid.dy, scheme, py, ly)
            Gf = swap_xy(Gf).transpose(0, 2, 1)
            L = -(F[:, 1:] - F[:, :-1]) / grid.dx - (Gf[:, :, 1:] - Gf[:, :, :-1]) / grid.dy
        if self.source is not None:
            L = L + self.source(U)
        return L

    def forward_euler(self, U, dt):
        """``U + dt * rhs(U)``, with the a-posteriori positivity fallback.

        If the stage result has cells with non-positive density or pressure
        (and ``scheme.stage_fallback`` is on), the stage is recomputed with
        Rusanov fluxes on every interface of those cells; newly failing cells
        are added until the stage is admissible.  Cells away from trouble keep
        the high-order update, so conservation is unaffected.
        """
        V = U + dt * self.rhs(U)
        if not self.scheme.stage_fallback:
            return V
        low = None
        for _ in range(MAX_FALLBACK_SWEEPS):
            bad = ~_admissible(V, self.gamma)
            if not bad.any():
                break
            low = bad if low is None else (low | bad)
            if low is bad:
                self.fallback_stages += 1
            self.fallback_cells += int(bad.sum())
            log.debug("stage fallback at %d cells", int(bad.sum()))
            V = U + dt * self.rhs(U, low)
        return V

    def max_stable_dt(self, U):
        W = primitives(U, self.gamma)
        c = np.sqrt(self.gamma * W[-1] / W[0])
        grid, scheme = self.grid, self.scheme
        dt = grid.dx / np.max(np.abs(W[1]) + c)
        h = grid.dx
        if grid.dim == 2:
            dt = min(dt, grid.dy / np.max(np.abs(W[2]) + c))
            h = min(grid.dx, grid.dy)
        dt = scheme.cfl * dt
        if scheme.dt_cap_k is not None and scheme.order == 5:
            dt = min(dt, scheme.dt_cap_k * h ** (5.0 / 3.0))
        return float(dt)


def ssprk3_step(U, dt, rhs, forward_euler=None):
    """One three-stage third-order SSP Runge-Kutta step.

    Each stage is a forward Euler step ``forward_euler(U, dt)`` (default
    ``U + dt * rhs(U)``) followed by a convex combination.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if forward_euler is None:
        def forward_euler(V, tau):
            return V + tau * rhs(V)
    stage = 1
    try:
        U1 = forward_euler(U, dt)
        stage = 2
        U2 = 0.75 * U + 0.25 * forward_euler(U1, dt)
        stage = 3
        return U / 3.0 + 2.0 / 3.0 * forward_euler(U2, dt)
    except SolverError as err:
        raise err.annotate(stage=stage)


@dataclass
class RunState:
    field: np.ndarray
    t: float = 0.0
    step_count: int = 0


def march(state: RunState, disc: Discretization, t_final, snapshots: Sequence[float] = (),
          on_snapshot=None, max_steps=None):
    """Advance ``state`` in place to ``t_final``, landing exactly on snapshot times."""
    stops = sorted({float(s) for s in snapshots if state.t < s < t_final} | {float(t_final)})
    for stop in stops:
        while state.t < stop:
            dt = disc.max_stable_dt(state.field)
            last = state.t + dt >= stop
            if last:
                dt = stop - state.t
            try:
                state.field = ssprk3_step(state.field, dt, disc.rhs, disc.forward_euler)
            except SolverError as err:
                raise err.annotate(time=state.t)
            state.t = stop if last else state.t + dt
            state.step_count += 1
            if not np.all(np.isfinite(state.field)):
                raise SolverError("non-finite values in the solution", time=state.t)
            try:
                check_positive(state.field, disc.gamma)
            except SolverError as err:
                raise err.annotate(time=state.t)
            if max_steps is not None and state.step_count >= max_steps:
                return state
        if on_snapshot is not None and stop != t_final:
            on_snapshot(state)
    return state
