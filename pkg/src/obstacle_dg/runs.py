"""Single runs and convergence studies driven by a RunConfig."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

import numpy as np

from . import exact as ex
from .config import RunConfig
from .dg_space import DGFunction, Mesh1D
from .metrics import ErrorReport, grid_error
from .obstacle import Analytic, ObstacleSpec, Sampled, obstacle_step
from .projection import l2_project
from .rkdg import RKDGSolver
from .sldg import sldg_step
from .solver2d import (
    DGFunction2D,
    Mesh2D,
    ObstacleSpec2D,
    RKDG2DSolver,
    grid_error_2d,
    project_2d,
)

INITIAL = {
    "sin_pi": ex.sin_pi,
    "half_plus_sin_pi": ex.half_plus_sin_pi,
    "one": lambda x: np.ones_like(np.asarray(x, dtype=float)),
}
OBSTACLE_FUNCTIONS = {"sin_pi": (ex.sin_pi, ex.sin_pi_window_max)}


@dataclass
class RunResult:
    solution: DGFunction | DGFunction2D
    n_cells: int
    h: float
    steps: int
    errors: tuple[float, float, float] | None


def obstacle_spec(cfg: RunConfig) -> ObstacleSpec | None:
    o = cfg.obstacle
    if o is None:
        return None
    g, window_max = OBSTACLE_FUNCTIONS["sin_pi" if o.name == "sin_pi" else o.function]
    if o.name == "custom_sampled" or o.window == "sampled":
        window = Sampled(o.n_samples, o.refine_iters)
    else:
        window = Analytic(window_max)
    return ObstacleSpec(g, window, o.variant)


def exact_solution_1d(cfg: RunConfig):
    if cfg.exact == "none":
        return None
    T, c = cfg.T, cfg.velocities[0]
    if cfg.exact == "example1":
        return partial(ex.example1_exact, T)
    u0 = INITIAL[cfg.initial]
    spec = obstacle_spec(cfg)
    if spec is None:
        a, b = cfg.domain
        return lambda x: u0(a + np.mod(np.asarray(x) - c * T - a, b - a))
    return partial(ex.DPPOracle(u0, spec, c, tuple(cfg.domain)), T)


def run_1d(cfg: RunConfig) -> RunResult:
    mesh = Mesh1D(float(cfg.domain[0]), float(cfg.domain[1]), cfg.N)
    c = cfg.velocities[0]
    k = cfg.degree
    u = l2_project(INITIAL[cfg.initial], mesh, k, cfg.quad_points)
    if cfg.scheme == "rkdg":
        solver = RKDGSolver(c, cfg.cfl, cfg.strict_cfl)
        transport = solver.step
    else:
        transport = partial(_sl_transport, c=c)
    spec = obstacle_spec(cfg)
    dts = cfg.time_schedule.steps_for(mesh.h, mesh.n_cells, cfg.T)
    for dt in dts:
        u = transport(u, dt) if spec is None else obstacle_step(u, transport, spec, c, dt)
    exact = exact_solution_1d(cfg)
    errors = grid_error(u, exact, cfg.samples_per_cell) if exact is not None else None
    return RunResult(u, mesh.n_cells, mesh.h, len(dts), errors)


def _sl_transport(v, dt, c):
    return sldg_step(v, c, dt)


def run_2d(cfg: RunConfig) -> RunResult:
    a, b = float(cfg.domain[0]), float(cfg.domain[1])
    nx, ny = cfg.Nx or cfg.N, cfg.Ny or cfg.N
    mesh = Mesh2D(Mesh1D(a, b, nx), Mesh1D(a, b, ny))
    c1, c2 = cfg.velocities
    solver = RKDG2DSolver(c1, c2, cfg.cfl, cfg.strict_cfl)
    u = project_2d(ex.example2_initial, mesh, cfg.degree, cfg.quad_points)
    spec = None
    if cfg.obstacle is not None:
        window = None
        if cfg.obstacle.window == "analytic":
            def window(x, y, dt):
                return ex.sin_pi_window_max(np.asarray(x) + np.asarray(y), (c1 + c2) * dt)
        spec = ObstacleSpec2D(ex.example2_obstacle, cfg.obstacle.variant, window, cfg.obstacle.n_samples)
    # schedules see an effective width so that frac = cfl reproduces the CFL rule
    h_eff = min(mesh.x.h, mesh.y.h) / (c1 + c2)
    dts = cfg.time_schedule.steps_for(h_eff, max(nx, ny), cfg.T)
    for dt in dts:
        u = solver.obstacle_step(u, spec, dt)
    exact = None
    if cfg.exact == "example2" or (cfg.exact == "auto" and spec is not None):
        if not (math.isclose(c1, 0.5) and math.isclose(c2, 0.5) and spec is not None):
            raise ValueError("the 2-D closed form needs velocity (0.5, 0.5) and the sin_pi_diag obstacle")
        exact = partial(ex.example2_exact, cfg.T)
    elif cfg.exact == "auto":
        def exact(x, y):
            return ex.example2_initial(x - c1 * cfg.T, y - c2 * cfg.T)
    errors = grid_error_2d(u, exact, cfg.samples_per_cell) if exact is not None else None
    return RunResult(u, nx, min(mesh.x.h, mesh.y.h), len(dts), errors)


def run(cfg: RunConfig) -> RunResult:
    return run_1d(cfg) if cfg.dimension == 1 else run_2d(cfg)


def _row(cfg: RunConfig, n: int):
    r = run(cfg.with_grid(n))
    return r.n_cells, r.h, r.steps, r.errors


def convergence(cfg: RunConfig, grids, jobs: int = 1) -> ErrorReport:
    grids = list(grids)
    if grids != sorted(set(grids)):
        raise ValueError(f"grid list must be strictly ascending, got {grids}")
    if cfg.exact == "none":
        raise ValueError("a convergence study needs an exact solution (exact != 'none')")
    worker = partial(_row, cfg)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(worker, grids))
    else:
        rows = [worker(n) for n in grids]
    report = ErrorReport(show_steps=True)
    for n, h, steps, errors in rows:
        report.add(n, h, steps, errors)
    return report


def config_comments(cfg: RunConfig) -> dict:
    """Resolved configuration as flat comment lines for table headers."""
    d = asdict(cfg)
    return {k: json.dumps(v, sort_keys=True) for k, v in d.items()}
