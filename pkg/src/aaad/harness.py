"""Batch driver: run configurations, error norms, Runge rates, diagnostics."""
from __future__ import annotations

import json
import logging
import math
import os
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateDeltas, NoTransitionFound, ShapeMismatch
from .euler import primitives
from .grid import GridSpec
from .io import read_snapshot, write_snapshot
from .problems import ProblemSpec, build_problem, evaluate_initial
from .solver import SCHEMES, Discretization, RunState, SchemeConfig, march

log = logging.getLogger(__name__)

OUTPUT_ROOT_ENV = "AAAD_OUTPUT_ROOT"
ACCURACY_DT_CAP_K = 0.5


def _parse_bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_floats(text):
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    return tuple(float(v) for v in str(text).replace(",", " ").split())


@dataclass(frozen=True)
class RunConfig:
    problem: str
    scheme: str = "aaad2"
    nx: Optional[int] = None
    ny: Optional[int] = None
    c: Optional[float] = None                # None -> the problem's default C
    theta: float = 2.0
    cfl: float = 0.4
    eps0: float = 0.002
    t_final_override: Optional[float] = None
    out_dir: str = "runs"
    snapshots: Optional[Tuple[float, ...]] = None
    accuracy_mode: bool = False
    dt_cap_k: Optional[float] = None
    reference: Optional[str] = None          # path of a snapshot to measure against
    vtk: bool = False
    stage_fallback: bool = True

    _PARSERS = {
        "nx": int, "ny": int, "c": float, "theta": float, "cfl": float, "eps0": float,
        "t_final_override": float, "snapshots": _parse_floats,
        "accuracy_mode": _parse_bool, "dt_cap_k": float, "vtk": _parse_bool,
        "stage_fallback": _parse_bool,
    }

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {sorted(SCHEMES)}")
        if self.c is not None and self.c < 0:
            raise ValueError("c must be non-negative")
        if self.nx is not None and self.nx < 5:
            raise ValueError("nx must be at least 5")

    @classmethod
    def from_mapping(cls, values: Dict[str, object]):
        """Build from string-valued settings (config file lines, CLI flags)."""
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            if raw is None or (isinstance(raw, str) and raw.strip().lower() in ("", "none")):
                kwargs[key] = None
                continue
            parse = cls._PARSERS.get(key, str)
            kwargs[key] = parse(raw) if isinstance(raw, str) or parse is _parse_floats else raw
        if "problem" not in kwargs or kwargs["problem"] is None:
            raise ValueError("config needs a 'problem'")
        return cls(**kwargs)

    @property
    def order(self):
        return SCHEMES[self.scheme][0]

    def scheme_config(self, spec: ProblemSpec) -> SchemeConfig:
        c = spec.default_c[self.order] if self.c is None else self.c
        k = self.dt_cap_k
        if k is None and self.accuracy_mode and self.order == 5:
            k = ACCURACY_DT_CAP_K
        return SchemeConfig.from_name(self.scheme, c_constant=c, theta=self.theta,
                                      cfl=self.cfl, epsilon0=self.eps0, dt_cap_k=k,
                                      stage_fallback=self.stage_fallback)

    def run_name(self, spec: ProblemSpec):
        nx = spec.default_nx[self.order] if self.nx is None else self.nx
        mesh = str(nx) if spec.dim == 1 else f"{nx}x{self.ny or spec.ny_for(nx)}"
        return f"{self.problem}_{self.scheme}_{mesh}"


def read_config_file(path) -> Dict[str, str]:
    """Flat ``key = value`` settings; blank lines and ``#`` comments ignored."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    return values


def output_root():
    return Path(os.environ.get(OUTPUT_ROOT_ENV, "."))


@dataclass
class RunResult:
    grid: GridSpec
    state: RunState
    gamma: float
    summary: Dict[str, object]
    out_dir: Optional[Path] = None

    @property
    def density(self):
        return self.state.field[0]

    def primitives(self):
        return primitives(self.state.field, self.gamma)


def run(config: RunConfig, write=True, max_steps=None) -> RunResult:
    """Evolve ``config.problem`` to its final time; optionally write snapshots.

    Solver failures propagate as :class:`~aaad.errors.SolverError`; when
    ``write`` is set a ``failure.json`` record is left in the run directory.
    """
    spec = build_problem(config.problem)
    scheme = config.scheme_config(spec)
    grid = spec.grid(config.nx, scheme.order, config.ny)
    t_final = spec.t_final if config.t_final_override is None else config.t_final_override
    snaps = spec.snapshots if config.snapshots is None else config.snapshots
    disc = Discretization(grid, spec.bc, spec.gamma, scheme, spec.source)
    state = RunState(evaluate_initial(spec, grid))

    out_dir = None
    written: List[str] = []
    if write:
        out_dir = output_root() / config.out_dir / config.run_name(spec)
        out_dir.mkdir(parents=True, exist_ok=True)

    def save(st):
        if out_dir is not None:
            paths = write_snapshot(out_dir / snapshot_stem(st.t), grid, st.field, spec.gamma,
                                   vtk=config.vtk)
            written.extend(str(p) for p in paths)

    summary = {"config": _jsonable(asdict(config)), "c": scheme.c_constant,
               "dt_cap_k": scheme.dt_cap_k, "nx": grid.nx, "ny": grid.ny,
               "t_final": t_final}
    start = time.perf_counter()
    try:
        march(state, disc, t_final, snaps, on_snapshot=save, max_steps=max_steps)
    except Exception as err:
        if out_dir is not None and hasattr(err, "record"):
            summary.update(status="failed", failure=err.record(), steps=state.step_count,
                           wall_time=time.perf_counter() - start,
                           fallback_stages=disc.fallback_stages,
                           fallback_cells=disc.fallback_cells)
            (out_dir / "failure.json").write_text(json.dumps(summary, indent=2))
        raise
    wall = time.perf_counter() - start
    save(state)
    W = primitives(state.field, spec.gamma)
    summary.update(status="ok", t=state.t, steps=state.step_count, wall_time=wall,
                   min_rho=float(W[0].min()), min_p=float(W[-1].min()), fallback_stages=disc.fallback_stages,
                   fallback_cells=disc.fallback_cells, outputs=written)
    if spec.exact is not None:
        exact = spec.exact(*grid.centers(), state.t)
        summary["l1_error_exact"] = l1_error(W[0], exact[0], grid.cell_volume)
    if config.reference is not None:
        ref, ref_vol, _ = read_snapshot(config.reference)
        factor = ref.shape[0] // W[0].shape[0]
        coarse = restrict(ref, factor, scheme.order) if factor > 1 else ref
        summary["l1_error_reference"] = l1_error(W[0], coarse, grid.cell_volume)
    if out_dir is not None:
        (out_dir / "summary.json").write_text(json.dumps(summary, indent=2))
    log.info("%s: %d steps in %.2fs", config.run_name(spec), state.step_count, wall)
    return RunResult(grid, state, spec.gamma, summary, out_dir)


def snapshot_stem(t):
    """File stem for a snapshot at time t, e.g. ``t1p300000``."""
    return f"t{t:.6f}".replace(".", "p")


def _jsonable(d):
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items()}


# ---------------------------------------------------------------------------
# error measurement

def l1_error(field_a, field_b, cell_volume):
    """sum |a - b| * cell volume over equally shaped arrays."""
    a = np.asarray(field_a, dtype=float)
    b = np.asarray(field_b, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatch(f"cannot compare shapes {a.shape} and {b.shape}")
    return float(np.sum(np.abs(a - b)) * cell_volume)


# 8-point interpolation to the midpoint of fine cells k and k+1 (offsets -3..4)
MIDPOINT_WEIGHTS = np.array([-5.0, 49.0, -245.0, 1225.0, 1225.0, -245.0, 49.0, -5.0]) / 2048.0


def _restrict_axis(f, factor, method, axis):
    f = np.moveaxis(f, axis, 0)
    n = f.shape[0]
    if n % factor:
        raise ShapeMismatch(f"{n} fine cells are not divisible by {factor}")
    if method == "subsample":
        if factor % 2 == 0:
            raise ValueError("subsampling needs an odd factor (coincident centres)")
        out = f[factor // 2::factor]
    elif method == "average":
        out = f.reshape((n // factor, factor) + f.shape[1:]).mean(axis=1)
    elif method == "interpolate":
        if factor != 2:
            raise ValueError("interpolation is implemented for 2:1 refinement")
        out = sum(w * np.roll(f, -(k - 3), axis=0)[0::2]
                  for k, w in enumerate(MIDPOINT_WEIGHTS))
    else:
        raise ValueError(f"unknown restriction method {method!r}")
    return np.moveaxis(out, 0, axis)


def restrict(fine, factor=2, order=2, method=None):
    """Transfer a fine-mesh scalar field to a coarser nested mesh.

    Odd factors have coincident cell centres and use subsampling.  For the
    2:1 refinement of the accuracy studies no centres coincide; order-2
    (cell-average) data are then averaged over pairs and order-5 (point-value)
    data are interpolated to the coarse centres with an 8-point periodic
    stencil, both well below the measured errors.
    """
    fine = np.asarray(fine, dtype=float)
    if method is None:
        method = "subsample" if factor % 2 else ("average" if order == 2 else "interpolate")
    out = fine
    for axis in range(fine.ndim):
        out = _restrict_axis(out, factor, method, axis)
    return out


def runge_error_rate(delta12, delta24, rtol=1e-12):
    """(error, rate) from differences of three consecutive 2:1 meshes."""
    d12, d24 = float(delta12), float(delta24)
    if not (d12 > 0 and d24 > 0):
        raise DegenerateDeltas("mesh differences must be positive")
    if abs(d12 - d24) <= rtol * max(d12, d24):
        raise DegenerateDeltas("equal mesh differences give no error estimate")
    return d12 * d12 / abs(d12 - d24), math.log2(d24 / d12)


@dataclass
class ConvergenceReport:
    """Errors and rates on a sequence of meshes.

    With ``method='runge'`` the first two meshes only provide differences, so
    errors and rates start at the third mesh; with ``method='exact'`` errors
    exist on every mesh and rates from the second on.
    """
    meshes: List[int]
    errors: List[Optional[float]]
    rates: List[Optional[float]]
    method: str = "runge"
    deltas: List[Optional[float]] = field(default_factory=list)

    @classmethod
    def from_deltas(cls, meshes, deltas):
        """``deltas[i]`` is the difference between meshes i-1 and i (deltas[0] unused)."""
        errors, rates = [None] * len(meshes), [None] * len(meshes)
        for i in range(2, len(meshes)):
            errors[i], rates[i] = runge_error_rate(deltas[i], deltas[i - 1])
        return cls(list(meshes), errors, rates, "runge", list(deltas))

    @classmethod
    def from_errors(cls, meshes, errors):
        rates = [None] + [math.log2(errors[i - 1] / errors[i]) for i in range(1, len(errors))]
        return cls(list(meshes), list(errors), rates, "exact")

    def table(self, label="nx"):
        def fmt(v, spec):
            return "---" if v is None else format(v, spec)
        rows = [f"{label:>8} {'error':>12} {'rate':>6}"]
        rows += [f"{m:>8} {fmt(e, '.3e'):>12} {fmt(r, '.2f'):>6}"
                 for m, e, r in zip(self.meshes, self.errors, self.rates)]
        return "\n".join(rows)


def convergence_study(config: RunConfig, meshes: Sequence[int], against="auto",
                      write=False) -> ConvergenceReport:
    """Density errors on ``meshes``: Runge differences or the exact solution."""
    spec = build_problem(config.problem)
    if against == "auto":
        against = "exact" if spec.exact is not None else "runge"
    results = [run(replace(config, nx=int(n), ny=None), write=write) for n in meshes]
    if against == "exact":
        errs = []
        for res in results:
            exact = spec.exact(*res.grid.centers(), res.state.t)
            errs.append(l1_error(res.density, exact[0], res.grid.cell_volume))
        return ConvergenceReport.from_errors(list(meshes), errs)
    deltas: List[Optional[float]] = [None]
    for coarse, fine in zip(results[:-1], results[1:]):
        factor = fine.grid.nx // coarse.grid.nx
        if factor * coarse.grid.nx != fine.grid.nx:
            raise ShapeMismatch("Runge estimates need nested meshes")
        r = restrict(fine.density, factor, config.order)
        deltas.append(l1_error(r, coarse.density, coarse.grid.cell_volume))
    return ConvergenceReport.from_deltas(list(meshes), deltas)


# ---------------------------------------------------------------------------
# contact diagnostics

def contact_width(profile, rho_left, rho_right):
    """Cells strictly inside the 10%-90% band of a transition between two plateaus.

    The transition is located at the first crossing of the mid value going
    from the ``rho_left`` side to the ``rho_right`` side; the count is the
    contiguous run of in-band cells around it.
    """
    q = np.asarray(profile, dtype=float)
    jump = rho_right - rho_left
    if jump == 0 or q.size < 2:
        raise NoTransitionFound("plateau values must differ")
    s = (q - rho_left) / jump                    # 0 on the left plateau, 1 on the right
    cross = np.nonzero((s[:-1] < 0.5) & (s[1:] >= 0.5))[0]
    if cross.size == 0:
        raise NoTransitionFound("profile never crosses between the plateau values")
    inside = (s > 0.1) & (s < 0.9)
    j = int(cross[0])
    lo = j + 1
    while lo - 1 >= 0 and inside[lo - 1]:
        lo -= 1
    hi = j
    while hi + 1 < q.size and inside[hi + 1]:
        hi += 1
    return int(hi - lo + 1)


def plateau_overshoot(profile, rho_left, rho_right):
    """Largest excursion outside [min, max] of the plateaus, relative to the jump."""
    q = np.asarray(profile, dtype=float)
    lo, hi = min(rho_left, rho_right), max(rho_left, rho_right)
    excess = max(float(q.max()) - hi, lo - float(q.min()), 0.0)
    return excess / (hi - lo)


def total_variation(profile):
    return float(np.sum(np.abs(np.diff(np.asarray(profile, dtype=float)))))


def oscillation_excess(profile, reference):
    """Total variation beyond that of ``reference``, relative to its range.

    Both profiles live on the same cells (restrict a fine reference first).
    Smearing cannot raise the total variation, so a positive value measures
    spurious over/undershoots; a monotone-resolved profile scores <= 0.
    """
    q = np.asarray(profile, dtype=float)
    r = np.asarray(reference, dtype=float)
    if q.shape != r.shape:
        raise ShapeMismatch(f"cannot compare shapes {q.shape} and {r.shape}")
    span = float(r.max() - r.min())
    if span == 0:
        raise NoTransitionFound("reference is constant")
    return (total_variation(q) - total_variation(r)) / span
