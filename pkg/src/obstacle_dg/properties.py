"""Randomized invariant suites run by ``obstacle-dg proptest``.

Each suite takes a seeded generator and returns ``(check, ok, detail)``
tuples; nothing here depends on pytest.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import exact as ex
from .dg_space import DGFunction, Mesh1D, jumps
from .metrics import l2_pseudo_norm
from .obstacle import EXACT_WINDOW, TWO_POINT, apply_obstacle, obstacle_step, tilde_g_values
from .projection import gauss_radau_project, gauss_values, l2_project, l2_project_shifted
from .quadrature import gauss_legendre, legendre_value
from .rkdg import RKDGSolver
from .sldg import sldg_step

Check = tuple[str, bool, str]


def random_dg(rng: np.random.Generator, k_max: int = 2, n_max: int = 64, mesh=None, k=None) -> DGFunction:
    if mesh is None:
        mesh = Mesh1D(float(rng.uniform(-2, 0)), float(rng.uniform(0.5, 2)), int(rng.integers(1, n_max + 1)))
    if k is None:
        k = int(rng.integers(0, k_max + 1))
    return DGFunction(mesh, k, rng.standard_normal((mesh.n_cells, k + 1)))


def lemma51_errors(phi: DGFunction, psi: DGFunction, c: float) -> tuple[float, float]:
    """Relative residuals of the two jump identities of the upwind form.

    Residuals are scaled by sum_j |c [phi] [psi]| (the size of the jump sum),
    so cancellation inside the sum cannot inflate them.
    """
    s = RKDGSolver(c)
    jp, jq = jumps(phi), jumps(psi)
    self_rhs = -0.5 * c * np.sum(jp**2)
    self_err = abs(s.bilinear_h(phi, phi) - self_rhs) / max(abs(self_rhs), 1e-300)
    sym_rhs = -c * np.sum(jp * jq)
    sym = s.bilinear_h(phi, psi) + s.bilinear_h(psi, phi)
    sym_err = abs(sym - sym_rhs) / max(np.sum(np.abs(c * jp * jq)), 1e-300)
    return float(self_err), float(sym_err)


def suite_lemma51(rng, trials: int = 1000) -> list[Check]:
    worst_self = worst_sym = 0.0
    for _ in range(trials):
        phi = random_dg(rng)
        psi = DGFunction(phi.mesh, phi.degree, rng.standard_normal(phi.coeffs.shape))
        if not np.any(jumps(phi)) or not np.any(jumps(psi)):
            continue  # one cell of constants: both sides vanish identically
        e1, e2 = lemma51_errors(phi, psi, float(rng.uniform(0.1, 3.0)))
        worst_self, worst_sym = max(worst_self, e1), max(worst_sym, e2)
    return [
        ("H(phi,phi) = -(c/2) sum [phi]^2", worst_self <= 1e-12, f"max rel err {worst_self:.2e}"),
        ("H(phi,psi) + H(psi,phi) = -c sum [phi][psi]", worst_sym <= 1e-12, f"max rel err {worst_sym:.2e}"),
    ]


def suite_obstacle_bound(rng, trials: int = 100) -> list[Check]:
    worst = np.inf
    for i in range(trials):
        mesh = Mesh1D(-1.0, 1.0, int(rng.integers(4, 65)))
        k = int(rng.integers(0, 3))
        u = random_dg(rng, mesh=mesh, k=k)
        variant = (TWO_POINT, EXACT_WINDOW)[i % 2]
        spec = ex.sin_obstacle(variant)
        dt = float(rng.uniform(0.1, 1.0)) * 0.2 * mesh.h
        if i % 4 < 2:
            transport = RKDGSolver(1.0).step
        else:
            def transport(v, dt):
                return sldg_step(v, 1.0, dt)
        new = obstacle_step(u, transport, spec, 1.0, dt)
        gap = gauss_values(new) - tilde_g_values(spec, mesh, k, 1.0, dt)
        worst = min(worst, float(gap.min()))
    return [("nodal lower bound u_h >= g~ at Gauss nodes", worst >= -1e-12, f"min gap {worst:.2e}")]


def suite_projection(rng, trials: int = 50) -> list[Check]:
    worst_orth = worst_radau = worst_l2 = 0.0
    for _ in range(trials):
        mesh = Mesh1D(-1.0, 1.0, int(rng.integers(2, 33)))
        k = int(rng.integers(0, 4))
        a, w = rng.uniform(-2, 2), rng.uniform(0.5, 3)

        def f(x):
            return np.sin(w * np.pi * x + a) + 0.3 * x**2

        p = l2_project(f, mesh, k, quad_points=k + 12)
        rule = gauss_legendre(k + 12)
        x = mesh.cell_points(rule.points)
        resid = f(x) - p.nodal_values(rule.points)
        for m in range(k + 1):
            basis = mesh.scale * legendre_value(m, rule.points)
            inner = 0.5 * mesh.h * np.sum(resid * basis * rule.weights, axis=1)
            worst_orth = max(worst_orth, float(np.max(np.abs(inner))))
        if k >= 1:
            r = gauss_radau_project(f, mesh, k)
            right = r.nodal_values([1.0])[:, 0]
            worst_radau = max(worst_radau, float(np.max(np.abs(right - f(mesh.left_edges + mesh.h)))))
        v = random_dg(rng, mesh=mesh, k=k)
        worst_l2 = max(worst_l2, abs(l2_pseudo_norm(v, mesh, k) - v.norm()) / v.norm())
    return [
        ("L2 projection orthogonality", worst_orth <= 1e-11, f"max residual {worst_orth:.2e}"),
        ("Gauss-Radau right-trace match", worst_radau <= 1e-12, f"max mismatch {worst_radau:.2e}"),
        ("discrete norm equals L2 norm on V_h", worst_l2 <= 1e-12, f"max rel diff {worst_l2:.2e}"),
    ]


def suite_sldg(rng, trials: int = 200) -> list[Check]:
    worst_mass = 0.0
    expansive = 0
    for _ in range(trials):
        v = random_dg(rng)
        s = float(rng.uniform(-3, 3))
        w = l2_project_shifted(v, s)
        worst_mass = max(worst_mass, abs(w.integral() - v.integral()) / max(1.0, np.abs(v.coeffs).sum()))
        if w.norm() > v.norm() * (1 + 1e-13):
            expansive += 1
    mesh = Mesh1D(-1.0, 1.0, 16)
    v = random_dg(rng, mesh=mesh, k=2)
    u = v
    for _ in range(mesh.n_cells):
        u = sldg_step(u, 1.0, mesh.h)
    period = float(np.max(np.abs(u.coeffs - v.coeffs)))
    return [
        ("mass conservation per step", worst_mass <= 1e-13, f"max rel drift {worst_mass:.2e}"),
        ("non-expansive per step", expansive == 0, f"{expansive} expansive steps"),
        ("integer shifts return after a period", period <= 1e-12, f"max diff {period:.2e}"),
    ]


def suite_rkdg(rng, trials: int = 1000) -> list[Check]:
    worst_mass = 0.0
    growth = 0.0
    for _ in range(trials):
        v = random_dg(rng)
        s = RKDGSolver(float(rng.uniform(0.2, 2.0)))
        dt = float(rng.uniform(0.01, 1.0)) * 0.2 * v.mesh.h / s.c
        w = s.step(v, dt)
        worst_mass = max(worst_mass, abs(w.integral() - v.integral()) / max(1.0, np.abs(v.coeffs).sum()))
        growth = max(growth, w.norm() / v.norm() - 1.0)
    return [
        ("mass conservation per step", worst_mass <= 1e-13, f"max rel drift {worst_mass:.2e}"),
        ("L2 non-growth at CFL 0.2", growth <= 1e-12, f"max growth {growth:.2e}"),
    ]


def suite_oracle(rng, trials: int = 1000) -> list[Check]:
    spec = ex.sin_obstacle()
    oracle = ex.DPPOracle(ex.half_plus_sin_pi, spec, 1.0)
    worst_cross = 0.0
    ts = np.linspace(0.0, 1.0, 200)
    xs = np.linspace(-1.0, 1.0, 200)
    for t in ts:
        worst_cross = max(worst_cross, float(np.max(np.abs(oracle(t, xs) - ex.example1_exact(t, xs)))))
    worst_dpp = 0.0
    for _ in range(trials):
        t, s = rng.uniform(0, 2, size=2)
        x = rng.uniform(-1, 1)
        lhs = oracle(t + s, x)
        rhs = max(oracle(t, x - s), ex.sin_pi_window_max(x, s))
        worst_dpp = max(worst_dpp, abs(lhs - rhs))
    return [
        ("closed form matches value formula on 200x200 grid", worst_cross <= 1e-10, f"max diff {worst_cross:.2e}"),
        ("semigroup identity", worst_dpp <= 1e-10, f"max diff {worst_dpp:.2e}"),
    ]


def suite_obstacle_monotone(rng, trials: int = 200) -> list[Check]:
    bad = 0
    for _ in range(trials):
        v = random_dg(rng, n_max=16)
        g = rng.standard_normal(v.coeffs.shape)
        raised = g + np.abs(rng.standard_normal(g.shape)) * (rng.random(g.shape) < 0.3)
        a = gauss_values(apply_obstacle(v, g))
        b = gauss_values(apply_obstacle(v, raised))
        bad += int(np.any(b < a - 1e-12))
    return [("raising the obstacle never lowers nodal values", bad == 0, f"{bad} violations")]


SUITES: dict[str, Callable] = {
    "lemma51": suite_lemma51,
    "obstacle_bound": suite_obstacle_bound,
    "obstacle_monotone": suite_obstacle_monotone,
    "projection": suite_projection,
    "sldg": suite_sldg,
    "rkdg": suite_rkdg,
    "oracle": suite_oracle,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for key in names:
        prefix = f"{key}: " if name == "all" else ""
        out += [(prefix + c, bool(ok), d) for c, ok, d in SUITES[key](np.random.default_rng(seed))]
    return out
