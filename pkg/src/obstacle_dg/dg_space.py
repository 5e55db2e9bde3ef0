"""Uniform periodic meshes and piecewise-polynomial DG functions.

Cell ``j`` (0-based) spans ``[a + j h, a + (j+1) h]``. Inside a cell the local
basis is ``sqrt(2/h) * phi_m(xi)`` with ``phi_m`` the orthonormal Legendre
polynomials, so the L2 norm of a DG function is the 2-norm of its
coefficient table.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .quadrature import gauss_legendre, vandermonde


@dataclass(frozen=True)
class Mesh1D:
    a: float
    b: float
    n_cells: int

    def __post_init__(self):
        if int(self.n_cells) != self.n_cells or self.n_cells < 1:
            raise ValueError(f"n_cells must be a positive integer, got {self.n_cells!r}")
        if not self.b > self.a:
            raise ValueError(f"empty domain [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_cells

    @property
    def scale(self) -> float:
        """Normalization of the local basis, sqrt(2/h)."""
        return math.sqrt(2.0 / self.h)

    @property
    def left_edges(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.n_cells)

    @property
    def interfaces(self) -> np.ndarray:
        """x_{1/2}, ..., x_{N+1/2}."""
        return self.a + self.h * np.arange(self.n_cells + 1)

    def wrap(self, x):
        return self.a + np.mod(np.asarray(x, dtype=float) - self.a, self.length)

    def locate(self, x):
        """Cell index and reference coordinate for (wrapped) points.

        A point sitting exactly on an interface belongs to the cell on its right.
        """
        xw = self.wrap(x)
        s = (xw - self.a) / self.h
        # snap round-off so interface coordinates land in the cell they open
        near = np.rint(s)
        s = np.where(np.abs(s - near) <= 64 * np.finfo(float).eps * np.maximum(1.0, near), near, s)
        j = np.floor(s).astype(int)
        j = np.clip(j, 0, self.n_cells - 1)
        xi = 2.0 * (s - j) - 1.0
        return j, np.clip(xi, -1.0, 1.0)

    def cell_points(self, xi) -> np.ndarray:
        """Physical coordinates of reference points in every cell, shape (N, len(xi))."""
        xi = np.asarray(xi, dtype=float)
        return self.left_edges[:, None] + 0.5 * self.h * (xi[None, :] + 1.0)


@dataclass(frozen=True, eq=False)
class DGFunction:
    mesh: Mesh1D
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (self.mesh.n_cells, self.degree + 1):
            raise ValueError(
                f"coefficient table must be {(self.mesh.n_cells, self.degree + 1)}, got {c.shape}"
            )
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, mesh: Mesh1D, degree: int) -> "DGFunction":
        return cls(mesh, degree, np.zeros((mesh.n_cells, degree + 1)))

    @classmethod
    def constant(cls, mesh: Mesh1D, degree: int, value: float) -> "DGFunction":
        c = np.zeros((mesh.n_cells, degree + 1))
        c[:, 0] = value * math.sqrt(mesh.h)
        return cls(mesh, degree, c)

    def with_coeffs(self, coeffs) -> "DGFunction":
        return DGFunction(self.mesh, self.degree, coeffs)

    def same_space(self, other: "DGFunction") -> bool:
        return self.mesh == other.mesh and self.degree == other.degree

    def __add__(self, other: "DGFunction") -> "DGFunction":
        _check_space(self, other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "DGFunction") -> "DGFunction":
        _check_space(self, other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, s: float) -> "DGFunction":
        return self.with_coeffs(self.coeffs * s)

    __rmul__ = __mul__

    def __call__(self, x):
        return eval_dg(self, x)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.coeffs**2)))

    def inner(self, other: "DGFunction") -> float:
        _check_space(self, other)
        return float(np.sum(self.coeffs * other.coeffs))

    def integral(self) -> float:
        # the constant basis function integrates to sqrt(h); higher modes to 0
        return float(np.sum(self.coeffs[:, 0]) * math.sqrt(self.mesh.h))

    def nodal_values(self, xi) -> np.ndarray:
        """Values at reference points ``xi`` in every cell, shape (N, len(xi))."""
        V = vandermonde(self.degree, xi)
        return (self.coeffs @ V.T) * self.mesh.scale


def _check_space(f: DGFunction, g: DGFunction) -> None:
    if not f.same_space(g):
        raise ValueError("DG functions live on different meshes or degrees")


def eval_dg(f: DGFunction, x):
    """Value of ``f`` at ``x`` (wrapped periodically; interfaces take the right cell)."""
    scalar = np.ndim(x) == 0
    j, xi = f.mesh.locate(np.ravel(x))
    V = vandermonde(f.degree, xi)
    vals = np.einsum("pm,pm->p", f.coeffs[j], V) * f.mesh.scale
    return float(vals[0]) if scalar else vals.reshape(np.shape(x))


def traces(f: DGFunction) -> tuple[np.ndarray, np.ndarray]:
    """One-sided values at the N+1 interfaces x_{1/2}, ..., x_{N+1/2}.

    Returns (left, right): left[i] is the limit from the cell ending at
    interface i, right[i] the limit from the cell starting there; both
    wrap periodically.
    """
    k = f.degree
    at_plus = f.coeffs @ vandermonde(k, [1.0])[0] * f.mesh.scale  # right end of cell j
    at_minus = f.coeffs @ vandermonde(k, [-1.0])[0] * f.mesh.scale  # left end of cell j
    left = np.concatenate([at_plus[-1:], at_plus])
    right = np.concatenate([at_minus, at_minus[:1]])
    return left, right


def trace(f: DGFunction, interface: int, side: str) -> float:
    """One-sided limit at interface ``x_{interface + 1/2}``, 0 <= interface <= N.

    ``side='left'`` is the limit from the cell to the left (the minus trace),
    ``side='right'`` from the cell to the right.
    """
    n = f.mesh.n_cells
    if not 0 <= interface <= n:
        raise IndexError(f"interface index {interface} outside [0, {n}]")
    left, right = traces(f)
    if side == "left":
        return float(left[interface])
    if side == "right":
        return float(right[interface])
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def jumps(f: DGFunction) -> np.ndarray:
    """[f]_{j+1/2} = f^+ - f^- at the N distinct periodic interfaces."""
    left, right = traces(f)
    return right[:-1] - left[:-1]


def gauss_points_of_cell(mesh: Mesh1D, j: int, k: int) -> list[tuple[float, float]]:
    """(k+1) Gauss nodes of cell ``j`` with weights normalized to sum to 1."""
    rule = gauss_legendre(k + 1)
    x0 = mesh.a + j * mesh.h
    return [
        (x0 + 0.5 * mesh.h * (p + 1.0), 0.5 * w)
        for p, w in zip(rule.points, rule.weights)
    ]


def gauss_nodes(mesh: Mesh1D, k: int) -> np.ndarray:
    return mesh.cell_points(gauss_legendre(k + 1).points)


def sample_grid(mesh: Mesh1D, samples_per_cell: int) -> np.ndarray:
    """Cell-interior points at offsets (i + 1/2)/M, flattened in cell order."""
    M = samples_per_cell
    xi = 2.0 * (np.arange(M) + 0.5) / M - 1.0
    return mesh.cell_points(xi).ravel()


def write_solution_csv(path, f: DGFunction, samples_per_cell: int = 10) -> None:
    x = sample_grid(f.mesh, samples_per_cell)
    u = eval_dg(f, x)
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "u_h"])
        for xv, uv in zip(x, u):
            w.writerow([f"{xv:.10g}", f"{uv:.12e}"])
