import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from obstacle_dg.dg_space import DGFunction, Mesh1D, gauss_nodes
from obstacle_dg.exact import half_plus_sin_pi, sin_obstacle, sin_pi, sin_pi_window_max
from obstacle_dg.obstacle import (
    ObstacleSpec,
    Sampled,
    apply_obstacle,
    g_window_max,
    obstacle_step,
    tilde_g_values,
)
from obstacle_dg.projection import gauss_values, l2_project
from obstacle_dg.rkdg import RKDGSolver
from obstacle_dg.sldg import sldg_step

from conftest import random_dg

ANALYTIC = sin_obstacle()
SAMPLED = ObstacleSpec(sin_pi, Sampled())


def brute_window_max(x, w, n=1_000_001):
    return float(np.max(sin_pi(np.linspace(x - w, x, n))))


@pytest.mark.parametrize("spec", [ANALYTIC, SAMPLED], ids=["analytic", "sampled"])
def test_window_examples(spec):
    assert g_window_max(spec, 0.3, 0.0) == sin_pi(0.3)
    assert g_window_max(spec, 0.55, 0.1) == pytest.approx(1.0, abs=1e-12)
    expected = brute_window_max(0.25, 0.1)
    assert expected == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
    assert g_window_max(spec, 0.25, 0.1) == pytest.approx(expected, abs=1e-12)


def test_negative_width_rejected():
    with pytest.raises(ValueError):
        g_window_max(ANALYTIC, 0.0, -0.1)


def test_sampled_matches_analytic_closely(rng):
    x = rng.uniform(-1, 1, 500)
    for w in (0.002, 0.01, 0.05, 0.3):
        a = g_window_max(ANALYTIC, x, w)
        s = g_window_max(SAMPLED, x, w)
        assert np.all(s <= a + 1e-15)
        assert np.max(a - s) <= 1e-9


def test_analytic_window_against_brute_force(rng):
    for _ in range(30):
        x, w = rng.uniform(-3, 3), rng.uniform(0, 2.5)
        assert sin_pi_window_max(x, w) == pytest.approx(brute_window_max(x, w, 200_001), abs=1e-9)


def test_sampled_spec_validation():
    with pytest.raises(ValueError):
        Sampled(n_samples=1)
    with pytest.raises(ValueError):
        ObstacleSpec(sin_pi, Sampled(), "nope")


def test_two_point_definition():
    mesh = Mesh1D(-1, 1, 12)
    vals = tilde_g_values(ANALYTIC, mesh, 2, 1.0, 0.03)
    x = gauss_nodes(mesh, 2)
    assert np.array_equal(vals, np.maximum(sin_pi(x), sin_pi(x - 0.03)))


def test_exact_window_dominates_two_point():
    mesh = Mesh1D(-1, 1, 50)
    for dt in (0.2, 0.05, 0.01):
        ew = tilde_g_values(ANALYTIC.with_variant("exact_window"), mesh, 2, 1.0, dt)
        tp = tilde_g_values(ANALYTIC, mesh, 2, 1.0, dt)
        assert np.all(ew >= tp)


def test_variant_gap_dt_001():
    mesh = Mesh1D(-1, 1, 40)
    dt = 0.01
    tp = tilde_g_values(ANALYTIC, mesh, 2, 1.0, dt)
    nodes = gauss_nodes(mesh, 2).ravel()
    brute = np.array([brute_window_max(x, dt, 2001) for x in nodes]).reshape(tp.shape)
    assert np.max(brute - tp) <= 5e-4


def test_rejects_nonpositive_dt():
    with pytest.raises(ValueError):
        tilde_g_values(ANALYTIC, Mesh1D(0, 1, 3), 1, 1.0, 0.0)


def test_apply_obstacle_far_below(rng):
    v = random_dg(rng, n=10, k=2)
    w = apply_obstacle(v, np.full((10, 3), -np.inf))
    assert np.max(np.abs(w.coeffs - v.coeffs)) <= 1e-13
    w = apply_obstacle(v, np.full((10, 3), -1e3))
    assert np.max(np.abs(w.coeffs - v.coeffs)) <= 1e-13


def test_apply_obstacle_constant_above(rng):
    v = random_dg(rng, n=10, k=2)
    G = 1.0 + np.max(np.abs(gauss_values(v)))
    w = apply_obstacle(v, np.full((10, 3), G))
    assert np.allclose(w.coeffs, DGFunction.constant(v.mesh, 2, G).coeffs, atol=1e-12)


def test_apply_obstacle_nodal_round_trip(rng):
    for _ in range(50):
        v = random_dg(rng, n=int(rng.integers(1, 30)), k=int(rng.integers(0, 4)))
        g = rng.standard_normal(v.coeffs.shape)
        w = apply_obstacle(v, g)
        assert np.allclose(gauss_values(w), np.maximum(gauss_values(v), g), atol=1e-12, rtol=0)


def test_apply_obstacle_shape_check(rng):
    with pytest.raises(ValueError):
        apply_obstacle(random_dg(rng, n=4, k=2), np.zeros((4, 2)))


@pytest.mark.parametrize("scheme", ["rkdg", "sldg"])
def test_low_obstacle_is_pure_transport(scheme, rng):
    v = random_dg(rng, n=16, k=2)
    low = ObstacleSpec(lambda x: np.full_like(np.asarray(x, dtype=float), -1e3), Sampled())
    transport = RKDGSolver(1.0).step if scheme == "rkdg" else (lambda u, dt: sldg_step(u, 1.0, dt))
    dt = 0.2 * v.mesh.h
    a = obstacle_step(v, transport, low, 1.0, dt)
    assert np.max(np.abs(a.coeffs - transport(v, dt).coeffs)) <= 1e-13


@pytest.mark.parametrize("variant", ["two_point", "exact_window"])
def test_one_step_lower_bound(variant):
    mesh = Mesh1D(-1, 1, 32)
    spec = sin_obstacle(variant)
    u = l2_project(half_plus_sin_pi, mesh, 2)
    dt = 0.2 * mesh.h
    new = obstacle_step(u, RKDGSolver(1.0).step, spec, 1.0, dt)
    assert np.all(gauss_values(new) >= tilde_g_values(spec, mesh, 2, 1.0, dt) - 1e-12)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(0, 3))
def test_obstacle_monotone(seed, k):
    rng = np.random.default_rng(seed)
    v = random_dg(rng, n=6, k=k)
    g = rng.standard_normal(v.coeffs.shape)
    raised = g.copy()
    i, a = rng.integers(0, 6), rng.integers(0, k + 1)
    raised[i, a] += abs(rng.standard_normal()) + 1e-3
    lo = gauss_values(apply_obstacle(v, g))
    hi = gauss_values(apply_obstacle(v, raised))
    assert np.all(hi >= lo - 1e-12)


def test_variant_gap_scales_quadratically():
    mesh = Mesh1D(-1, 1, 64)
    for dt in (0.05, 0.01, 0.002):
        ew = tilde_g_values(ANALYTIC.with_variant("exact_window"), mesh, 2, 1.0, dt)
        tp = tilde_g_values(ANALYTIC, mesh, 2, 1.0, dt)
        assert np.max(ew - tp) <= 5 * dt**2
