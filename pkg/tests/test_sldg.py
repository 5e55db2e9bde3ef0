
import numpy as np
import pytest

from obstacle_dg.dg_space import DGFunction, Mesh1D
from obstacle_dg.metrics import grid_error
from obstacle_dg.projection import l2_project
from obstacle_dg.schedule import TimeSchedule
from obstacle_dg.sldg import sldg_advect, sldg_step

from conftest import random_dg

sin_pi = lambda x: np.sin(np.pi * x)


def test_full_period_of_cell_shifts(rng):
    v = random_dg(rng, n=20, k=2)
    u = v
    for _ in range(20):
        u = sldg_step(u, 1.0, v.mesh.h)
    assert np.max(np.abs(u.coeffs - v.coeffs)) <= 1e-12


def test_mass_and_norm_per_step(rng):
    u = random_dg(rng, n=17, k=2)
    for _ in range(100):
        dt = float(rng.uniform(0.01, 3.0))
        nxt = sldg_step(u, 1.0, dt)
        assert abs(nxt.integral() - u.integral()) <= 1e-13 * max(1.0, np.abs(u.coeffs).sum())
        assert nxt.norm() <= u.norm() * (1 + 1e-13)
        u = nxt


def test_rejects_bad_arguments(rng):
    v = random_dg(rng)
    with pytest.raises(ValueError, match="velocity"):
        sldg_step(v, -1.0, 0.1)
    with pytest.raises(ValueError, match="velocity"):
        sldg_step(v, 0.0, 0.1)
    with pytest.raises(ValueError):
        sldg_step(v, 1.0, 0.0)


def test_sin_one_period_error():
    mesh = Mesh1D(-1.0, 1.0, 40)
    v = l2_project(sin_pi, mesh, 2)
    for _ in range(80):
        v = sldg_step(v, 1.0, mesh.h / 2)
    T = 80 * mesh.h / 2
    _, l2, _ = grid_error(v, lambda x: sin_pi(x - T), 50)
    assert l2 <= 5e-4


def test_advect_zero_time_and_constants():
    mesh = Mesh1D(-1.0, 1.0, 8)
    p0 = l2_project(sin_pi, mesh, 2)
    v = sldg_advect(sin_pi, mesh, 2, 1.0, TimeSchedule.frac_h(0.5), 0.0)
    assert np.array_equal(v.coeffs, p0.coeffs)
    one = sldg_advect(lambda x: np.ones_like(x), mesh, 2, 1.0, TimeSchedule.fixed(0.37), 2.0)
    assert np.allclose(one.coeffs, DGFunction.constant(mesh, 2, 1.0).coeffs, atol=1e-14)


def test_refinement_shrinks_error():
    errs = []
    for n in (40, 80, 160):
        mesh = Mesh1D(-1.0, 1.0, n)
        v = sldg_advect(sin_pi, mesh, 2, 1.0, TimeSchedule.frac_h(0.5), 0.5)
        errs.append(grid_error(v, lambda x: sin_pi(x - 0.5), 20)[1])
    assert errs[0] > errs[1] > errs[2]
