"""Tensor-product Q^k RKDG with the Gauss-node obstacle step on a periodic
Cartesian mesh, for min(u_t + c1 u_x + c2 u_y, u - g) = 0."""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .dg_space import Mesh1D
from .obstacle import EXACT_WINDOW, TWO_POINT, VARIANTS
from .quadrature import gauss_legendre, vandermonde, vandermonde_derivative
from .rkdg import CFLError, CFLWarning, reference_operator


@dataclass(frozen=True)
class Mesh2D:
    x: Mesh1D
    y: Mesh1D

    @classmethod
    def square(cls, n: int, a: float = -1.0, b: float = 1.0) -> "Mesh2D":
        return cls(Mesh1D(a, b, n), Mesh1D(a, b, n))

    @property
    def shape(self) -> tuple[int, int]:
        return self.x.n_cells, self.y.n_cells

    @property
    def area(self) -> float:
        return self.x.length * self.y.length

    def tensor_points(self, xi, eta) -> tuple[np.ndarray, np.ndarray]:
        """Physical coordinates, each shaped (Nx, Ny, len(xi), len(eta))."""
        px = self.x.cell_points(xi)  # (Nx, P)
        py = self.y.cell_points(eta)  # (Ny, Q)
        X = np.broadcast_to(px[:, None, :, None], (*self.shape, len(xi), len(eta)))
        Y = np.broadcast_to(py[None, :, None, :], (*self.shape, len(xi), len(eta)))
        return X, Y


@dataclass(frozen=True, eq=False)
class DGFunction2D:
    mesh: Mesh2D
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        want = (*self.mesh.shape, self.degree + 1, self.degree + 1)
        if c.shape != want:
            raise ValueError(f"coefficient array must be {want}, got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    def with_coeffs(self, coeffs) -> "DGFunction2D":
        return DGFunction2D(self.mesh, self.degree, coeffs)

    def same_space(self, other: "DGFunction2D") -> bool:
        return self.mesh == other.mesh and self.degree == other.degree

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.coeffs**2)))

    def integral(self) -> float:
        return float(np.sum(self.coeffs[..., 0, 0]) * math.sqrt(self.mesh.x.h * self.mesh.y.h))

    def tensor_values(self, xi, eta) -> np.ndarray:
        k = self.degree
        Vx, Vy = vandermonde(k, xi), vandermonde(k, eta)
        s = self.mesh.x.scale * self.mesh.y.scale
        return s * np.einsum("ijmn,pm,qn->ijpq", self.coeffs, Vx, Vy)

    def __call__(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        i, xi = self.mesh.x.locate(x.ravel())
        j, eta = self.mesh.y.locate(y.ravel())
        Vx, Vy = vandermonde(self.degree, xi), vandermonde(self.degree, eta)
        s = self.mesh.x.scale * self.mesh.y.scale
        vals = s * np.einsum("pmn,pm,pn->p", self.coeffs[i, j], Vx, Vy)
        return vals.reshape(x.shape) if x.ndim else float(vals[0])


def project_2d(f, mesh: Mesh2D, k: int, quad_points: int | None = None) -> DGFunction2D:
    if quad_points is None:
        quad_points = k + 3
    rule = gauss_legendre(quad_points)
    X, Y = mesh.tensor_points(rule.points, rule.points)
    return _from_tensor_values(mesh, k, np.asarray(f(X, Y), dtype=float), rule)


def _from_tensor_values(mesh: Mesh2D, k: int, vals: np.ndarray, rule) -> DGFunction2D:
    V = vandermonde(k, rule.points)
    w = rule.weights
    s = 0.25 * mesh.x.h * mesh.y.h * mesh.x.scale * mesh.y.scale
    coeffs = s * np.einsum("ijpq,p,q,pm,qn->ijmn", vals, w, w, V, V)
    return DGFunction2D(mesh, k, coeffs)


def from_gauss_values_2d(mesh: Mesh2D, k: int, vals) -> DGFunction2D:
    return _from_tensor_values(mesh, k, np.asarray(vals, dtype=float), gauss_legendre(k + 1))


def gauss_values_2d(f: DGFunction2D) -> np.ndarray:
    p = gauss_legendre(f.degree + 1).points
    return f.tensor_values(p, p)


@dataclass(frozen=True)
class ObstacleSpec2D:
    """Obstacle g(x, y); ``window_max(x, y, dt)`` optionally gives
    max_{0<=s<=dt} g(x - c1 s, y - c2 s) in closed form."""

    g: Callable
    variant: str = TWO_POINT
    window_max: Callable | None = None
    n_samples: int = 64

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown obstacle variant {self.variant!r}")


@dataclass(frozen=True)
class RKDG2DSolver:
    c1: float
    c2: float
    cfl: float = 0.2
    strict: bool = False

    def __post_init__(self):
        if not (self.c1 > 0 and self.c2 > 0):
            raise ValueError(f"velocities must be positive, got ({self.c1}, {self.c2})")

    def default_dt(self, mesh: Mesh2D) -> float:
        return self.cfl * min(mesh.x.h, mesh.y.h) / (self.c1 + self.c2)

    def bilinear_h(self, phi: DGFunction2D, psi: DGFunction2D) -> float:
        """Volume terms by tensor Gauss quadrature, face terms by 1-D Gauss along each face,
        upwinded from the left/bottom neighbour."""
        if not phi.same_space(psi):
            raise ValueError("bilinear_h needs both arguments on the same mesh and degree")
        mesh, k = phi.mesh, phi.degree
        hx, hy = mesh.x.h, mesh.y.h
        rule = gauss_legendre(k + 1)
        p, w = rule.points, rule.weights
        V, dV = vandermonde(k, p), vandermonde_derivative(k, p)
        s = mesh.x.scale * mesh.y.scale
        phi_q = phi.tensor_values(p, p)
        psi_dx = s * (2.0 / hx) * np.einsum("ijmn,pm,qn->ijpq", psi.coeffs, dV, V)
        psi_dy = s * (2.0 / hy) * np.einsum("ijmn,pm,qn->ijpq", psi.coeffs, V, dV)
        wq = 0.25 * hx * hy * np.outer(w, w)
        volume = np.sum((self.c1 * psi_dx + self.c2 * psi_dy) * phi_q * wq)

        one, minus = np.array([1.0]), np.array([-1.0])
        # vertical faces: traces along y at Gauss points
        phi_e = phi.tensor_values(one, p)[:, :, 0, :]  # right edge of each cell
        psi_e = psi.tensor_values(one, p)[:, :, 0, :]
        psi_w = psi.tensor_values(minus, p)[:, :, 0, :]  # left edge
        phi_up = np.roll(phi_e, 1, axis=0)
        fx = 0.5 * hy * np.sum((phi_e * psi_e - phi_up * psi_w) * w)
        # horizontal faces: traces along x
        phi_n = phi.tensor_values(p, one)[:, :, :, 0]
        psi_n = psi.tensor_values(p, one)[:, :, :, 0]
        psi_s = psi.tensor_values(p, minus)[:, :, :, 0]
        phi_dn = np.roll(phi_n, 1, axis=1)
        fy = 0.5 * hx * np.sum((phi_n * psi_n - phi_dn * psi_s) * w)
        return float(volume - self.c1 * fx - self.c2 * fy)

    def _l(self, u: np.ndarray, hx: float, hy: float, k: int) -> np.ndarray:
        own, up = reference_operator(k)
        lx = np.einsum("am,ijmn->ijan", own, u) + np.einsum("am,ijmn->ijan", up, np.roll(u, 1, axis=0))
        ly = np.einsum("bn,ijmn->ijmb", own, u) + np.einsum("bn,ijmn->ijmb", up, np.roll(u, 1, axis=1))
        return (2.0 * self.c1 / hx) * lx + (2.0 * self.c2 / hy) * ly

    def apply_l(self, v: DGFunction2D) -> DGFunction2D:
        return v.with_coeffs(self._l(v.coeffs, v.mesh.x.h, v.mesh.y.h, v.degree))

    def check_cfl(self, mesh: Mesh2D, dt: float) -> None:
        limit = self.default_dt(mesh)
        if dt > limit * (1 + 1e-12):
            msg = f"dt={dt:.6g} exceeds the CFL limit {limit:.6g} (cfl={self.cfl})"
            if self.strict:
                raise CFLError(msg)
            warnings.warn(msg, CFLWarning, stacklevel=3)

    def transport_step(self, v: DGFunction2D, dt: float) -> DGFunction2D:
        if not dt > 0:
            raise ValueError(f"time step must be positive, got dt={dt}")
        self.check_cfl(v.mesh, dt)
        hx, hy, k = v.mesh.x.h, v.mesh.y.h, v.degree
        u = v.coeffs
        u1 = u + dt * self._l(u, hx, hy, k)
        u2 = 0.75 * u + 0.25 * (u1 + dt * self._l(u1, hx, hy, k))
        return v.with_coeffs(u / 3.0 + (2.0 / 3.0) * (u2 + dt * self._l(u2, hx, hy, k)))

    def tilde_g_values(self, spec: ObstacleSpec2D, mesh: Mesh2D, k: int, dt: float) -> np.ndarray:
        p = gauss_legendre(k + 1).points
        X, Y = mesh.tensor_points(p, p)
        if spec.variant == EXACT_WINDOW:
            if spec.window_max is not None:
                return np.asarray(spec.window_max(X, Y, dt), dtype=float)
            s = np.linspace(0.0, dt, spec.n_samples + 1)
            return np.max(spec.g(X[..., None] - self.c1 * s, Y[..., None] - self.c2 * s), axis=-1)
        return np.maximum(spec.g(X, Y), spec.g(X - self.c1 * dt, Y - self.c2 * dt))

    def obstacle_step(self, u: DGFunction2D, spec: ObstacleSpec2D | None, dt: float) -> DGFunction2D:
        moved = self.transport_step(u, dt)
        if spec is None:
            return moved
        gv = self.tilde_g_values(spec, u.mesh, u.degree, dt)
        return from_gauss_values_2d(u.mesh, u.degree, np.maximum(gauss_values_2d(moved), gv))


def rkdg2d_obstacle_step(u: DGFunction2D, spec2d: ObstacleSpec2D | None, dt: float,
                         c1: float = 0.5, c2: float = 0.5, cfl: float = 0.2,
                         strict: bool = False) -> DGFunction2D:
    return RKDG2DSolver(c1, c2, cfl, strict).obstacle_step(u, spec2d, dt)


def bilinear_h_2d(phi: DGFunction2D, psi: DGFunction2D, c1: float = 0.5, c2: float = 0.5) -> float:
    return RKDG2DSolver(c1, c2).bilinear_h(phi, psi)


def sample_grid_2d(mesh: Mesh2D, s: int) -> tuple[np.ndarray, np.ndarray]:
    off = 2.0 * (np.arange(s) + 0.5) / s - 1.0
    return mesh.tensor_points(off, off)


def grid_error_2d(u: DGFunction2D, exact, s: int = 10) -> tuple[float, float, float]:
    """(L1, L2, Linf) on an s x s uniform sub-grid of every cell."""
    if s < 2:
        raise ValueError(f"need at least 2 samples per direction, got {s}")
    off = 2.0 * (np.arange(s) + 0.5) / s - 1.0
    X, Y = u.mesh.tensor_points(off, off)
    err = np.abs(u.tensor_values(off, off) - np.asarray(exact(X, Y)))
    area = u.mesh.area
    return (float(err.mean() * area), float(math.sqrt(np.mean(err**2) * area)), float(err.max()))


def write_solution_csv_2d(path, u: DGFunction2D, s: int = 10) -> None:
    off = 2.0 * (np.arange(s) + 0.5) / s - 1.0
    X, Y = u.mesh.tensor_points(off, off)
    U = u.tensor_values(off, off)
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "u_h"])
        for xv, yv, uv in zip(X.ravel(), Y.ravel(), U.ravel()):
            w.writerow([f"{xv:.10g}", f"{yv:.10g}", f"{uv:.12e}"])
