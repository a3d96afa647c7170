"""The fourteen benchmark problems: initial data, domains, boundaries, defaults.

Initial data functions are vectorized: ``init(x)`` or ``init(x, y)`` returns
the primitive variables stacked along axis 0, ``(rho, u, p)`` in 1-D and
``(rho, u, v, p)`` in 2-D.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .errors import UnknownProblem
from .euler import PrimitiveState, conserved
from .grid import DIRICHLET, FREE, PERIODIC, WALL, BoundaryCondition, GridSpec, Side
from .solver import gravity_source


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    title: str
    dim: int
    x_range: Tuple[float, float]
    t_final: float
    bc: BoundaryCondition
    init: Callable
    default_c: Dict[int, float]                 # scheme order -> C
    default_nx: Dict[int, int]                  # scheme order -> cells along x
    y_range: Optional[Tuple[float, float]] = None
    gamma: float = 1.4
    source: Optional[Callable] = None
    snapshots: Tuple[float, ...] = ()
    exact: Optional[Callable] = None            # exact(x, [y,] t) -> primitives
    reference_nx: Optional[int] = None          # fine CU reference mesh used for figures

    def ny_for(self, nx):
        """Cell count along y giving square cells."""
        if self.dim == 1:
            return None
        lx = self.x_range[1] - self.x_range[0]
        ly = self.y_range[1] - self.y_range[0]
        return int(round(nx * ly / lx))

    def grid(self, nx=None, order=2, ny=None):
        nx = self.default_nx[order] if nx is None else int(nx)
        ghost = 2 if order == 2 else 3
        if self.dim == 1:
            return GridSpec(self.x_range[0], self.x_range[1], nx, ghost)
        ny = self.ny_for(nx) if ny is None else int(ny)
        return GridSpec(self.x_range[0], self.x_range[1], nx, ghost,
                        self.y_range[0], self.y_range[1], ny)

    def primitive_at(self, x, y=None) -> PrimitiveState:
        w = self.init(np.asarray(x, float)) if self.dim == 1 else \
            self.init(np.asarray(x, float), np.asarray(y, float))
        return PrimitiveState.from_array(w)


def evaluate_initial(spec: ProblemSpec, grid: GridSpec):
    """Conserved field from cell-centre point sampling of the initial data."""
    W = spec.init(*grid.centers())
    W = np.asarray(W, dtype=float)
    if not (np.all(W[0] > 0) and np.all(W[-1] > 0)):
        raise ValueError(f"{spec.name}: initial data is not positive on this grid")
    return conserved(W, spec.gamma)


def _piecewise(conds, states, shape):
    """Select among constant primitive states by boolean masks (first match wins)."""
    d = len(states[0])
    out = np.empty((d,) + shape)
    filled = np.zeros(shape, dtype=bool)
    for cond, state in zip(conds, states):
        take = np.broadcast_to(cond, shape) & ~filled
        for k in range(d):
            out[k][take] = state[k]
        filled |= take
    if not filled.all():
        raise ValueError("piecewise initial data leaves points undefined")
    return out


# ---------------------------------------------------------------------------
# 1-D

def _accuracy_1d(x, gamma=1.4):
    u = np.sin(np.pi * x / 5.0 + np.pi / 4.0)
    rho = ((gamma - 1.0) / (2.0 * np.sqrt(gamma)) * (u + 10.0)) ** (2.0 / (gamma - 1.0))
    return np.array([rho, u, rho ** gamma])


def _shock_entropy(x):
    x = np.asarray(x, float)
    left = x < -4.5
    return np.array([np.where(left, 1.51695, 1.0 + 0.1 * np.sin(20.0 * x)),
                     np.where(left, 0.523346, 0.0),
                     np.where(left, 1.805, 1.0)])


def _shock_density(x):
    x = np.asarray(x, float)
    left = x < -4.0
    return np.array([np.where(left, 27.0 / 7.0, 1.0 + 0.2 * np.sin(5.0 * x)),
                     np.where(left, 4.0 * np.sqrt(35.0) / 9.0, 0.0),
                     np.where(left, 31.0 / 3.0, 1.0)])


def _shock_bubble(x):
    x = np.asarray(x, float)
    return _piecewise([np.abs(x) < 0.25, x > 0.75, True],
                      [(13.1538, 0.0, 1.0), (1.3333, -0.3535, 1.5), (1.0, 0.0, 1.0)], x.shape)


def _lax(x):
    x = np.asarray(x, float)
    return _piecewise([x < 0.0, True], [(0.445, 0.31061, 8.928), (0.5, 0.0, 0.571)], x.shape)


def _blast(x):
    x = np.asarray(x, float)
    return _piecewise([x < 0.1, x <= 0.9, True],
                      [(1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), (1.0, 0.0, 100.0)], x.shape)


# ---------------------------------------------------------------------------
# 2-D

def _vortex(x, y, gamma=1.4):
    kappa = 5.0 / (2.0 * np.pi) * np.exp(0.5 * (1.0 - x * x - y * y))
    rho = (1.0 - (gamma - 1.0) * kappa ** 2 / (2.0 * gamma)) ** (1.0 / (gamma - 1.0))
    return np.array([rho, 1.0 - kappa * y, 1.0 + kappa * x, rho ** gamma])


def _vortex_exact(x, y, t):
    """Initial vortex advected by (1, 1) on the periodic box [-10, 10]^2."""
    xs = np.mod(np.asarray(x, float) - t + 10.0, 20.0) - 10.0
    ys = np.mod(np.asarray(y, float) - t + 10.0, 20.0) - 10.0
    return _vortex(xs, ys)


def _explosion(x, y):
    inside = x * x + y * y < 0.16
    return _piecewise([inside, True], [(1.0, 0.0, 0.0, 1.0), (0.125, 0.0, 0.0, 0.1)],
                      np.broadcast(x, y).shape)


def _quadrants(x0, y0, ne, nw, sw, se):
    def init(x, y):
        shape = np.broadcast(x, y).shape
        east, north = x > x0, y > y0
        return _piecewise([east & north, ~east & north, ~east & ~north, True],
                          [ne, nw, sw, se], shape)
    return init


_rp_cfg3 = _quadrants(1.0, 1.0,
                      (1.5, 0.0, 0.0, 1.5), (0.5323, 1.206, 0.0, 0.3),
                      (0.138, 1.206, 1.206, 0.029), (0.5323, 0.0, 1.206, 0.3))
_rp_cfg6 = _quadrants(0.5, 0.5,
                      (1.0, 0.75, -0.5, 1.0), (2.0, 0.75, 0.5, 1.0),
                      (1.0, -0.75, 0.5, 1.0), (3.0, -0.75, -0.5, 1.0))
_rp_cfg12 = _quadrants(0.5, 0.5,
                       (0.5313, 0.0, 0.0, 0.4), (1.0, 0.7276, 0.0, 1.0),
                       (0.8, 0.0, 0.0, 1.0), (1.0, 0.0, 0.7276, 1.0))


def _implosion(x, y):
    inner = np.abs(x) + np.abs(y) < 0.15
    return _piecewise([inner, True], [(0.125, 0.0, 0.0, 0.14), (1.0, 0.0, 0.0, 1.0)],
                      np.broadcast(x, y).shape)


KH_SMOOTHING = 0.00625


def _kelvin_helmholtz(x, y):
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    L = KH_SMOOTHING
    # seams belong to the interval on their right
    rho = np.where((y >= -0.25) & (y < 0.25), 2.0, 1.0)
    u = np.select(
        [y < -0.25, y < 0.0, y < 0.25],
        [-0.5 + 0.5 * np.exp((y + 0.25) / L),
         0.5 - 0.5 * np.exp((-y - 0.25) / L),
         0.5 - 0.5 * np.exp((y - 0.25) / L)],
        -0.5 + 0.5 * np.exp((0.25 - y) / L))
    v = 0.01 * np.sin(4.0 * np.pi * x)
    return np.array([rho, u, v, np.full_like(x, 1.5)])


RT_GAMMA = 5.0 / 3.0


def _rayleigh_taylor(x, y):
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    lower = y < 0.5
    rho = np.where(lower, 2.0, 1.0)
    p = np.where(lower, 2.0 * y + 1.0, y + 1.5)
    c = np.sqrt(RT_GAMMA * p / rho)
    v = -0.025 * c * np.cos(8.0 * np.pi * x)
    return np.array([rho, np.zeros_like(x), v, p])


def _bc(kind, dim):
    return BoundaryCondition.uniform(kind, dim)


def _square(c):
    return {2: c, 5: c}


PROBLEMS: Dict[str, ProblemSpec] = {p.name: p for p in [
    ProblemSpec("accuracy_1d", "1-D accuracy test (smooth simple wave)", 1, (0.0, 10.0), 0.1,
                _bc(PERIODIC, 1), _accuracy_1d, {2: 0.1, 5: 0.1}, {2: 200, 5: 200}),
    ProblemSpec("shock_entropy", "Shock/entropy-wave interaction", 1, (-5.0, 5.0), 5.0,
                _bc(FREE, 1), _shock_entropy, {2: 0.04, 5: 0.003}, {2: 800, 5: 400},
                reference_nx=8000),
    ProblemSpec("shock_density", "Shock/density-wave interaction", 1, (-5.0, 15.0), 5.0,
                _bc(FREE, 1), _shock_density, {2: 0.1, 5: 0.03}, {2: 1600, 5: 400},
                reference_nx=8000),
    ProblemSpec("shock_bubble", "Shock/bubble interaction", 1, (-1.0, 1.0), 3.0,
                BoundaryCondition(Side(WALL), Side(FREE)), _shock_bubble,
                {2: 0.15, 5: 0.05}, {2: 200, 5: 200}, reference_nx=4000),
    ProblemSpec("lax", "Lax problem", 1, (-5.0, 5.0), 1.3,
                _bc(FREE, 1), _lax, {2: 0.1, 5: 0.5}, {2: 200, 5: 200}),
    ProblemSpec("blast", "Interacting blast waves", 1, (0.0, 1.0), 0.038,
                _bc(WALL, 1), _blast, {2: 0.55, 5: 0.5}, {2: 400, 5: 200},
                reference_nx=4000),
    ProblemSpec("accuracy_2d", "2-D accuracy test (isentropic vortex)", 2, (-10.0, 10.0), 0.1,
                _bc(PERIODIC, 2), _vortex, {2: 0.1, 5: 0.1}, _square(200),
                y_range=(-10.0, 10.0), exact=_vortex_exact),
    ProblemSpec("explosion", "Explosion", 2, (-1.5, 1.5), 3.2,
                _bc(FREE, 2), _explosion, {2: 0.03, 5: 0.02}, _square(800),
                y_range=(-1.5, 1.5)),
    ProblemSpec("rp_cfg3", "2-D Riemann problem, configuration 3", 2, (0.0, 1.2), 1.0,
                _bc(FREE, 2), _rp_cfg3, {2: 0.04, 5: 0.02}, _square(600),
                y_range=(0.0, 1.2)),
    ProblemSpec("rp_cfg6", "2-D Riemann problem, configuration 6", 2, (0.0, 1.0), 1.0,
                _bc(FREE, 2), _rp_cfg6, {2: 0.05, 5: 0.02}, _square(400),
                y_range=(0.0, 1.0)),
    ProblemSpec("rp_cfg12", "2-D Riemann problem, configuration 12", 2, (0.0, 0.6), 1.0,
                _bc(FREE, 2), _rp_cfg12, {2: 0.04, 5: 0.02}, _square(600),
                y_range=(0.0, 0.6)),
    ProblemSpec("implosion", "Implosion", 2, (0.0, 0.3), 2.5,
                _bc(WALL, 2), _implosion, {2: 0.05, 5: 0.01}, _square(450),
                y_range=(0.0, 0.3)),
    ProblemSpec("kelvin_helmholtz", "Kelvin-Helmholtz instability", 2, (-0.5, 0.5), 4.0,
                _bc(PERIODIC, 2), _kelvin_helmholtz, {2: 0.05, 5: 0.01}, _square(1024),
                y_range=(-0.5, 0.5), snapshots=(1.0, 2.5)),
    ProblemSpec("rayleigh_taylor", "Rayleigh-Taylor instability", 2, (0.0, 0.25), 2.95,
                BoundaryCondition(Side(WALL), Side(WALL),
                                  Side(DIRICHLET, (2.0, 0.0, 0.0, 1.0)),
                                  Side(DIRICHLET, (1.0, 0.0, 0.0, 2.5))),
                _rayleigh_taylor, {2: 0.05, 5: 0.02}, _square(256),
                y_range=(0.0, 1.0), gamma=RT_GAMMA, source=gravity_source,
                snapshots=(1.95,)),
]}


def build_problem(name) -> ProblemSpec:
    try:
        return PROBLEMS[name]
    except KeyError:
        raise UnknownProblem(f"unknown problem {name!r}; known: {', '.join(PROBLEMS)}") from None


def list_problems():
    return list(PROBLEMS)
