"""Upwind DG operator and TVD-RK3 stepping for v_t + c v_x = 0, c > 0."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dg_space import DGFunction, Mesh1D, traces
from .projection import l2_project
from .quadrature import gauss_legendre, vandermonde, vandermonde_derivative
from .schedule import TimeSchedule


class CFLError(ValueError):
    pass


class CFLWarning(UserWarning):
    pass


@lru_cache(maxsize=None)
def reference_operator(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Reference-cell blocks (own, upstream) of the upwind operator.

    With unit cell width and unit speed, the Riesz representer of the
    bilinear form satisfies ``w_j = own @ v_j + upstream @ v_{j-1}``.
    """
    rule = gauss_legendre(k + 1)
    V = vandermonde(k, rule.points)
    dV = vandermonde_derivative(k, rule.points)
    D = (dV * rule.weights[:, None]).T @ V  # D[m, n] = int phi_n phi_m'
    r = vandermonde(k, [1.0])[0]
    l = vandermonde(k, [-1.0])[0]
    own = D - np.outer(r, r)
    upstream = np.outer(l, r)
    own.setflags(write=False)
    upstream.setflags(write=False)
    return own, upstream


@dataclass(frozen=True)
class RKDGSolver:
    c: float
    cfl: float = 0.2
    strict: bool = False

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"velocity must be positive, got c={self.c}")
        if not self.cfl > 0:
            raise ValueError(f"cfl must be positive, got {self.cfl}")

    def bilinear_h(self, phi: DGFunction, psi: DGFunction) -> float:
        """Sum over cells of the upwind form, volume term by (k+1)-point Gauss."""
        if not phi.same_space(psi):
            raise ValueError("bilinear_h needs both arguments on the same mesh and degree")
        mesh, k = phi.mesh, phi.degree
        rule = gauss_legendre(k + 1)
        phi_q = phi.nodal_values(rule.points)
        # d/dx of the local basis brings 2/h
        dpsi_q = (psi.coeffs @ vandermonde_derivative(k, rule.points).T) * mesh.scale * 2.0 / mesh.h
        volume = self.c * 0.5 * mesh.h * np.sum(phi_q * dpsi_q * rule.weights)
        phi_l, _ = traces(phi)
        psi_l, psi_r = traces(psi)
        # cell j: phi^-_{j+1/2} psi^-_{j+1/2} - phi^-_{j-1/2} psi^+_{j-1/2}
        flux = np.sum(phi_l[1:] * psi_l[1:]) - np.sum(phi_l[:-1] * psi_r[:-1])
        return float(volume - self.c * flux)

    def apply_l(self, v: DGFunction) -> DGFunction:
        return v.with_coeffs(self._l(v.coeffs, v.mesh.h, v.degree))

    def _l(self, coeffs: np.ndarray, h: float, k: int) -> np.ndarray:
        own, upstream = reference_operator(k)
        # reference blocks are for a width-2 cell: scale by 2/h
        return (2.0 * self.c / h) * (coeffs @ own.T + np.roll(coeffs, 1, axis=0) @ upstream.T)

    def check_cfl(self, h: float, dt: float) -> None:
        limit = self.cfl * h / self.c
        if dt > limit * (1 + 1e-12):
            msg = f"dt={dt:.6g} exceeds the CFL limit {limit:.6g} (cfl={self.cfl})"
            if self.strict:
                raise CFLError(msg)
            warnings.warn(msg, CFLWarning, stacklevel=3)

    def step(self, v: DGFunction, dt: float) -> DGFunction:
        if not dt > 0:
            raise ValueError(f"time step must be positive, got dt={dt}")
        self.check_cfl(v.mesh.h, dt)
        return v.with_coeffs(self._rk3(v.coeffs, v.mesh.h, v.degree, dt))

    def _rk3(self, u: np.ndarray, h: float, k: int, dt: float) -> np.ndarray:
        u1 = u + dt * self._l(u, h, k)
        u2 = 0.75 * u + 0.25 * (u1 + dt * self._l(u1, h, k))
        return u / 3.0 + (2.0 / 3.0) * (u2 + dt * self._l(u2, h, k))

    def advect(self, v0, mesh: Mesh1D, k: int, schedule: TimeSchedule, T: float,
               quad_points: int | None = None) -> DGFunction:
        v = l2_project(v0, mesh, k, quad_points)
        for dt in schedule.steps_for(mesh.h, mesh.n_cells, T):
            v = self.step(v, dt)
        return v


def bilinear_h(phi: DGFunction, psi: DGFunction, c: float = 1.0) -> float:
    return RKDGSolver(c).bilinear_h(phi, psi)


def rkdg_apply_l(v: DGFunction, c: float = 1.0) -> DGFunction:
    return RKDGSolver(c).apply_l(v)


def rkdg_step(v: DGFunction, dt: float, c: float = 1.0, cfl: float = 0.2,
              strict: bool = False) -> DGFunction:
    return RKDGSolver(c, cfl, strict).step(v, dt)
