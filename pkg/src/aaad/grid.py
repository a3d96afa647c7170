"""Uniform structured grids and ghost-cell boundary conditions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .euler import conserved

PERIODIC = "periodic"
FREE = "free"
WALL = "wall"
DIRICHLET = "dirichlet"
KINDS = (PERIODIC, FREE, WALL, DIRICHLET)


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    nx: int
    ghost: int = 2
    y_min: Optional[float] = None
    y_max: Optional[float] = None
    ny: Optional[int] = None

    def __post_init__(self):
        if self.nx < 1 or (self.ny is not None and self.ny < 1):
            raise ValueError("cell counts must be positive")
        if self.x_max <= self.x_min:
            raise ValueError("empty x-range")
        if self.ny is not None and not (self.y_max > self.y_min):
            raise ValueError("empty y-range")

    @property
    def dim(self):
        return 1 if self.ny is None else 2

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.nx

    @property
    def dy(self):
        return None if self.ny is None else (self.y_max - self.y_min) / self.ny

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.nx,) if self.ny is None else (self.nx, self.ny)

    @property
    def cell_volume(self):
        return self.dx if self.ny is None else self.dx * self.dy

    def x_centers(self):
        return self.x_min + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self):
        return self.y_min + (np.arange(self.ny) + 0.5) * self.dy

    def centers(self):
        """Cell-centre coordinate arrays with the grid's shape."""
        if self.ny is None:
            return (self.x_centers(),)
        return tuple(np.meshgrid(self.x_centers(), self.y_centers(), indexing="ij"))


@dataclass(frozen=True)
class Side:
    kind: str
    state: Optional[Tuple[float, ...]] = None   # primitive (rho, u, [v], p) for Dirichlet

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if (self.kind == DIRICHLET) != (self.state is not None):
            raise ValueError("a Dirichlet side needs exactly one prescribed state")


@dataclass(frozen=True)
class BoundaryCondition:
    x_lo: Side
    x_hi: Side
    y_lo: Optional[Side] = None
    y_hi: Optional[Side] = None

    def __post_init__(self):
        pairs = [(self.x_lo, self.x_hi)]
        if self.y_lo is not None or self.y_hi is not None:
            pairs.append((self.y_lo, self.y_hi))
        for lo, hi in pairs:
            if lo is None or hi is None:
                raise ValueError("both sides of a direction need a condition")
            if (lo.kind == PERIODIC) != (hi.kind == PERIODIC):
                raise ValueError("periodic sides must come in matched pairs")

    @classmethod
    def uniform(cls, kind, dim=1):
        side = Side(kind)
        return cls(side, side, side, side) if dim == 2 else cls(side, side)

    def sides(self, axis):
        return (self.x_lo, self.x_hi) if axis == 1 else (self.y_lo, self.y_hi)

    def periodic(self, axis):
        return self.sides(axis)[0].kind == PERIODIC


def _fill_side(P, axis, g, n, side, lo, gamma):
    """Fill g ghost layers on one side of axis ``axis`` of padded array P."""
    def sl(i):
        idx = [slice(None)] * P.ndim
        idx[axis] = i
        return tuple(idx)

    ghosts = range(g) if lo else range(g + n, 2 * g + n)
    for gi in ghosts:
        if lo:
            dist = g - gi                  # 1 for the layer touching the boundary
            mirror = g + dist - 1
            nearest = g
            wrapped = gi + n
        else:
            dist = gi - (g + n) + 1
            mirror = g + n - dist
            nearest = g + n - 1
            wrapped = gi - n
        if side.kind == PERIODIC:
            P[sl(gi)] = P[sl(wrapped)]
        elif side.kind == FREE:
            P[sl(gi)] = P[sl(nearest)]
        elif side.kind == WALL:
            P[sl(gi)] = P[sl(mirror)]
            P[(axis,) + sl(gi)[1:]] *= -1.0   # normal momentum row equals axis index
        else:
            state = np.asarray(side.state, dtype=float)
            U = conserved(state, gamma)
            shape = [P.shape[0]] + [1] * (P.ndim - 2)
            P[sl(gi)] = U.reshape(shape)


def fill_ghosts(field, bc: BoundaryCondition, g, gamma):
    """Return a copy of ``field`` (d, nx[, ny]) padded with g ghost layers."""
    field = np.asarray(field, dtype=float)
    dim = field.ndim - 1
    pad = [(0, 0)] + [(g, g)] * dim
    P = np.pad(field, pad)
    # x first on interior rows, then y over the whole padded x-range
    for axis in range(1, dim + 1):
        lo, hi = bc.sides(axis)
        n = field.shape[axis]
        if axis == 1 and dim == 2:
            view = P[:, :, g:g + field.shape[2]]
        else:
            view = P
        _fill_side(view, axis, g, n, lo, True, gamma)
        _fill_side(view, axis, g, n, hi, False, gamma)
    return P
