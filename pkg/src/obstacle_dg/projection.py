"""L2 and Gauss-Radau projections onto the DG space."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .dg_space import DGFunction, Mesh1D
from .quadrature import gauss_legendre, vandermonde

BREAKPOINT_TOL = 1e-13


def l2_project(f, mesh: Mesh1D, k: int, quad_points: int | None = None) -> DGFunction:
    """Cellwise L2 projection of a vectorized callable ``f``.

    ``quad_points`` defaults to ``k + 3``; it must be at least ``k + 1``.
    """
    if quad_points is None:
        quad_points = k + 3
    if quad_points < k + 1:
        raise ValueError(f"quad_points={quad_points} is below k+1={k + 1}")
    rule = gauss_legendre(quad_points)
    x = mesh.cell_points(rule.points)
    fx = np.asarray(f(x), dtype=float) * np.ones_like(x)
    V = vandermonde(k, rule.points)
    # int_{I_j} f psi_m dx = (h/2) sum_q w_q f(x_q) sqrt(2/h) phi_m(xi_q)
    coeffs = 0.5 * mesh.h * mesh.scale * (fx * rule.weights) @ V
    return DGFunction(mesh, k, coeffs)


def from_gauss_values(mesh: Mesh1D, k: int, values) -> DGFunction:
    """The unique DG function interpolating ``values`` at the k+1 Gauss nodes of each cell."""
    values = np.asarray(values, dtype=float)
    if values.shape != (mesh.n_cells, k + 1):
        raise ValueError(f"nodal table must be {(mesh.n_cells, k + 1)}, got {values.shape}")
    rule = gauss_legendre(k + 1)
    V = vandermonde(k, rule.points)
    coeffs = 0.5 * mesh.h * mesh.scale * (values * rule.weights) @ V
    return DGFunction(mesh, k, coeffs)


def gauss_values(f: DGFunction) -> np.ndarray:
    return f.nodal_values(gauss_legendre(f.degree + 1).points)


@lru_cache(maxsize=256)
def _shift_blocks(k: int, frac: float) -> tuple[np.ndarray, np.ndarray]:
    """Reference-cell transfer matrices for a sub-cell shift ``frac * h``, 0 < frac < 1.

    The target cell is fed by its upstream neighbour on the first ``frac`` of
    its length and by the source cell ``m`` steps back on the remainder.
    Returns (A, B) with ``new = A @ upstream + B @ aligned`` in reference
    coefficients (unit cell, orthonormal basis).
    """
    rule = gauss_legendre(k + 1)
    # target reference coordinates in [-1, 1]; breakpoint at -1 + 2 frac
    bp = -1.0 + 2.0 * frac
    # piece 1: xi in [-1, bp], source point lies in upstream cell at xi + 2 - 2 frac
    xa = -1.0 + (bp + 1.0) * 0.5 * (rule.points + 1.0)
    wa = rule.weights * 0.5 * (bp + 1.0)
    A = (vandermonde(k, xa) * wa[:, None]).T @ vandermonde(k, xa + 2.0 - 2.0 * frac)
    # piece 2: xi in [bp, 1], source point in aligned cell at xi - 2 frac
    xb = bp + (1.0 - bp) * 0.5 * (rule.points + 1.0)
    wb = rule.weights * 0.5 * (1.0 - bp)
    B = (vandermonde(k, xb) * wb[:, None]).T @ vandermonde(k, xb - 2.0 * frac)
    A.setflags(write=False)
    B.setflags(write=False)
    return A, B


def l2_project_shifted(v: DGFunction, shift: float) -> DGFunction:
    """Exact L2 projection of ``x -> v(x - shift)`` back onto the same space."""
    mesh = v.mesh
    s = float(np.mod(shift, mesh.length))
    cells = s / mesh.h
    m = math.floor(cells)
    frac = cells - m
    if frac < BREAKPOINT_TOL:
        frac = 0.0
    elif 1.0 - frac < BREAKPOINT_TOL:
        m, frac = m + 1, 0.0
    aligned = np.roll(v.coeffs, m, axis=0)
    if frac == 0.0:
        return v.with_coeffs(aligned)
    A, B = _shift_blocks(v.degree, frac)
    upstream = np.roll(aligned, 1, axis=0)
    return v.with_coeffs(upstream @ A.T + aligned @ B.T)


def gauss_radau_project(f, mesh: Mesh1D, k: int, quad_points: int | None = None) -> DGFunction:
    """Per-cell projection matching ``f`` at the right end of each cell and
    orthogonal to polynomials of degree < k against the residual."""
    if quad_points is None:
        quad_points = k + 3
    rule = gauss_legendre(quad_points)
    x = mesh.cell_points(rule.points)
    fx = np.asarray(f(x), dtype=float) * np.ones_like(x)
    right = np.asarray(f(mesh.left_edges + mesh.h), dtype=float) * np.ones(mesh.n_cells)
    V = vandermonde(k, rule.points)
    moments = 0.5 * mesh.h * mesh.scale * (fx * rule.weights) @ V  # (N, k+1)
    # rows 0..k-1: orthogonality gives the low modes directly; last row: right trace
    M = np.zeros((k + 1, k + 1))
    M[:k, :k] = np.eye(k)
    M[k, :] = mesh.scale * vandermonde(k, [1.0])[0]
    rhs = np.empty((mesh.n_cells, k + 1))
    rhs[:, :k] = moments[:, :k]
    rhs[:, k] = right
    coeffs = np.linalg.solve(M, rhs.T).T
    return DGFunction(mesh, k, coeffs)
