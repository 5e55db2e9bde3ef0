"""Semi-Lagrangian DG transport for v_t + c v_x = 0."""

from __future__ import annotations

from .dg_space import DGFunction, Mesh1D
from .projection import l2_project, l2_project_shifted
from .schedule import TimeSchedule


def _check(c: float, dt: float) -> None:
    if not c > 0:
        raise ValueError(f"velocity must be positive, got c={c}")
    if not dt > 0:
        raise ValueError(f"time step must be positive, got dt={dt}")


def sldg_step(v: DGFunction, c: float, dt: float) -> DGFunction:
    """One step: L2 projection of the exactly transported function. No CFL limit."""
    _check(c, dt)
    return l2_project_shifted(v, c * dt)


def sldg_advect(
    v0,
    mesh: Mesh1D,
    k: int,
    c: float,
    schedule: TimeSchedule,
    T: float,
    quad_points: int | None = None,
) -> DGFunction:
    v = l2_project(v0, mesh, k, quad_points)
    for dt in schedule.steps_for(mesh.h, mesh.n_cells, T):
        v = sldg_step(v, c, dt)
    return v
