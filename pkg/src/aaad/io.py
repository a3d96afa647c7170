"""Snapshot writers and readers.

1-D snapshots are CSV files with columns ``x, rho, u, p``.  2-D snapshots are
plain text: a ``#``-prefixed header carrying the grid, then one line per cell
in row-major (x-index slowest) order with the primitive variables.  A legacy
VTK structured-points writer is provided for external viewers.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ShapeMismatch
from .euler import primitives

FMT = "%.17g"       # round-trips float64 exactly
NAMES_1D = ("rho", "u", "p")
NAMES_2D = ("rho", "u", "v", "p")


def write_csv_1d(path, x, W):
    """Write primitives ``W = (rho, u, p)`` at cell centres ``x``."""
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float)
    if W.shape != (3,) + x.shape:
        raise ShapeMismatch(f"expected primitives of shape (3, {x.size}), got {W.shape}")
    np.savetxt(path, np.column_stack([x, *W]), fmt=FMT, delimiter=",",
               header="x,rho,u,p", comments="")
    return Path(path)


def read_csv_1d(path):
    """Return ``(x, W)`` from a file written by :func:`write_csv_1d`."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0], data[:, 1:].T.copy()


def write_structured_2d(path, grid, W, full_state=True):
    """Write a 2-D snapshot; ``W`` holds primitives (rho, u, v, p) of shape (4, nx, ny)."""
    W = np.asarray(W, dtype=float)
    if W.shape[1:] != grid.shape:
        raise ShapeMismatch(f"field shape {W.shape[1:]} does not match grid {grid.shape}")
    names = NAMES_2D if full_state else NAMES_2D[:1]
    cols = W[:len(names)].reshape(len(names), -1).T
    header = (f"nx ny dx dy x0 y0\n{grid.nx} {grid.ny} {grid.dx!r} {grid.dy!r} "
              f"{grid.x_min!r} {grid.y_min!r}\n{' '.join(names)}")
    np.savetxt(path, cols, fmt=FMT, header=header)
    return Path(path)


def read_structured_2d(path):
    """Return ``(meta, W)``; ``W`` has shape (nvars, nx, ny)."""
    with open(path) as fh:
        fh.readline()
        nums = fh.readline().lstrip("#").split()
        names = fh.readline().lstrip("#").split()
    nx, ny = int(nums[0]), int(nums[1])
    dx, dy, x0, y0 = (float(v) for v in nums[2:6])
    data = np.loadtxt(path, comments="#", ndmin=2)
    meta = {"nx": nx, "ny": ny, "dx": dx, "dy": dy, "x0": x0, "y0": y0, "names": names}
    return meta, data.T.reshape(len(names), nx, ny)


def write_vtk(path, grid, W, names=NAMES_2D):
    """Legacy ASCII VTK structured-points file with cell-centred point data."""
    W = np.asarray(W, dtype=float)
    lines = ["# vtk DataFile Version 3.0", "aaad snapshot", "ASCII",
             "DATASET STRUCTURED_POINTS",
             f"DIMENSIONS {grid.nx} {grid.ny} 1",
             f"ORIGIN {grid.x_min + 0.5 * grid.dx!r} {grid.y_min + 0.5 * grid.dy!r} 0",
             f"SPACING {grid.dx!r} {grid.dy!r} 1",
             f"POINT_DATA {grid.nx * grid.ny}"]
    for name, comp in zip(names, W):
        lines += [f"SCALARS {name} double 1", "LOOKUP_TABLE default"]
        lines += [FMT % v for v in comp.T.ravel()]   # VTK wants x fastest
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


def write_snapshot(stem, grid, U, gamma, vtk=False):
    """Write conserved field ``U`` as primitives; returns the written paths."""
    W = primitives(U, gamma)
    stem = Path(stem)
    if grid.dim == 1:
        return [write_csv_1d(stem.with_suffix(".csv"), grid.x_centers(), W)]
    paths = [write_structured_2d(stem.with_suffix(".txt"), grid, W)]
    if vtk:
        paths.append(write_vtk(stem.with_suffix(".vtk"), grid, W))
    return paths


def read_snapshot(path):
    """Return ``(density, cell_volume, primitives)`` from a 1-D or 2-D snapshot."""
    path = Path(path)
    if path.suffix == ".csv":
        x, W = read_csv_1d(path)
        dx = float(x[1] - x[0]) if x.size > 1 else 1.0
        return W[0], dx, W
    meta, W = read_structured_2d(path)
    return W[0], meta["dx"] * meta["dy"], W
