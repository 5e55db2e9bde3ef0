import warnings

import numpy as np
import pytest

from obstacle_dg.dg_space import DGFunction, Mesh1D, jumps
from obstacle_dg.metrics import grid_error, least_squares_order
from obstacle_dg.projection import l2_project
from obstacle_dg.rkdg import CFLError, CFLWarning, RKDGSolver, bilinear_h, rkdg_apply_l, rkdg_step
from obstacle_dg.schedule import TimeSchedule

from conftest import random_dg

sin_pi = lambda x: np.sin(np.pi * x)


def test_constants_annihilate(rng):
    psi = random_dg(rng, n=9, k=2)
    one = DGFunction.constant(psi.mesh, 2, 1.0)
    assert abs(bilinear_h(one, psi, 1.3)) <= 1e-12
    assert abs(bilinear_h(psi, one, 1.3)) <= 1e-12


def test_self_form_matches_jumps(rng):
    for _ in range(50):
        phi = random_dg(rng, n=int(rng.integers(1, 20)), k=int(rng.integers(0, 4)))
        c = float(rng.uniform(0.1, 2))
        expected = -0.5 * c * np.sum(jumps(phi) ** 2)
        assert bilinear_h(phi, phi, c) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_mesh_mismatch(rng):
    with pytest.raises(ValueError):
        bilinear_h(random_dg(rng, n=4), random_dg(rng, n=5))


def test_riesz_representer(rng):
    s = RKDGSolver(0.7)
    v = random_dg(rng, n=11, k=3)
    w = s.apply_l(v)
    for _ in range(20):
        psi = DGFunction(v.mesh, 3, rng.standard_normal(v.coeffs.shape))
        assert w.inner(psi) == pytest.approx(s.bilinear_h(v, psi), rel=1e-12, abs=1e-12)
    assert w.inner(v) <= 1e-12


def test_constant_is_steady():
    mesh = Mesh1D(-1, 1, 10)
    w = rkdg_apply_l(DGFunction.constant(mesh, 2, 3.0), 1.0)
    assert np.max(np.abs(w.coeffs)) <= 1e-13


def test_operator_approximates_derivative():
    errs, hs = [], []
    for n in (10, 20, 40, 80):
        mesh = Mesh1D(-1.0, 1.0, n)
        w = rkdg_apply_l(l2_project(sin_pi, mesh, 2), 1.0)
        errs.append(grid_error(w, lambda x: -np.pi * np.cos(np.pi * x), 20)[1])
        hs.append(mesh.h)
    assert errs[-1] < errs[0]
    assert least_squares_order(zip(hs, errs)) >= 2


def test_step_preserves_constants_and_mass(rng):
    mesh = Mesh1D(-1.0, 1.0, 16)
    one = DGFunction.constant(mesh, 2, 1.0)
    assert np.max(np.abs(rkdg_step(one, 0.2 * mesh.h).coeffs - one.coeffs)) <= 1e-14
    v = random_dg(rng, n=16, k=2)
    w = rkdg_step(v, 0.2 * v.mesh.h)
    assert abs(w.integral() - v.integral()) <= 1e-13 * np.abs(v.coeffs).sum()


def test_cfl_policy(rng):
    v = random_dg(rng, n=8, k=1)
    with pytest.warns(CFLWarning):
        rkdg_step(v, 0.5 * v.mesh.h)
    with pytest.raises(CFLError):
        rkdg_step(v, 0.5 * v.mesh.h, strict=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rkdg_step(v, 0.2 * v.mesh.h)
    with pytest.raises(ValueError):
        RKDGSolver(-1.0)


def test_smooth_third_order():
    hs, errs = [], []
    for n in (20, 40, 80, 160):
        mesh = Mesh1D(-1.0, 1.0, n)
        v = RKDGSolver(1.0).advect(sin_pi, mesh, 2, TimeSchedule.frac_h(0.2), 0.5)
        hs.append(mesh.h)
        errs.append(grid_error(v, lambda x: sin_pi(x - 0.5), 20)[1])
    assert 2.7 <= least_squares_order(zip(hs, errs)) <= 3.3
