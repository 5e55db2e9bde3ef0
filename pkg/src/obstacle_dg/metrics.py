"""Error norms, the Gauss-node discrete norm, and convergence orders."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .dg_space import DGFunction, Mesh1D, eval_dg, gauss_nodes, sample_grid
from .quadrature import gauss_legendre


def grid_error(u_h: DGFunction, exact, samples_per_cell: int = 50) -> tuple[float, float, float]:
    """(L1, L2, Linf) of ``u_h - exact`` on M uniform points per cell."""
    if samples_per_cell < 2:
        raise ValueError(f"samples_per_cell must be >= 2, got {samples_per_cell}")
    x = sample_grid(u_h.mesh, samples_per_cell)
    err = np.abs(eval_dg(u_h, x) - np.asarray(exact(x), dtype=float))
    length = u_h.mesh.length
    return float(err.mean() * length), float(math.sqrt(np.mean(err**2) * length)), float(err.max())


def l2_pseudo_norm(f, mesh: Mesh1D, k: int) -> float:
    """sqrt(sum_{i, alpha} w_alpha |f(x_alpha^i)|^2 h) over the k+1 Gauss nodes per cell."""
    x = gauss_nodes(mesh, k)
    fx = eval_dg(f, x) if isinstance(f, DGFunction) else np.asarray(f(x), dtype=float) * np.ones_like(x)
    w = 0.5 * gauss_legendre(k + 1).weights
    return float(math.sqrt(np.sum(w * fx**2) * mesh.h))


def least_squares_order(rows) -> float:
    """Slope of the least-squares line through (log h, log error)."""
    rows = list(rows)
    if len(rows) < 2:
        raise ValueError("need at least two (h, error) pairs")
    h = np.array([r[0] for r in rows], dtype=float)
    e = np.array([r[1] for r in rows], dtype=float)
    if np.any(e <= 0) or np.any(h <= 0):
        raise ValueError("errors and mesh sizes must be positive")
    slope, _ = np.polyfit(np.log(h), np.log(e), 1)
    return float(slope)


def expected_rate(k: int, ell: int) -> float:
    """Projection rate min(min(k, ell) + 1, 3/2) for Lipschitz, piecewise C^{ell+1} data."""
    return min(min(k, ell) + 1.0, 1.5)


NORMS = ("L1", "L2", "Linf")


@dataclass
class ReportRow:
    n_cells: int
    h: float
    steps: int
    errors: tuple[float, float, float]
    orders: tuple[float, float, float] | None = None


@dataclass
class ErrorReport:
    rows: list[ReportRow] = field(default_factory=list)
    show_steps: bool = True

    def add(self, n_cells: int, h: float, steps: int, errors) -> None:
        if self.rows and n_cells <= self.rows[-1].n_cells:
            raise ValueError("rows must be added in increasing N")
        errors = tuple(float(e) for e in errors)
        orders = None
        if self.rows:
            prev = self.rows[-1]
            ratio = math.log(prev.h / h)
            orders = tuple(math.log(ep / ec) / ratio for ep, ec in zip(prev.errors, errors))
        self.rows.append(ReportRow(n_cells, h, steps, errors, orders))

    @property
    def orders_ls(self) -> dict[str, float]:
        if len(self.rows) < 2:
            return {}
        return {
            name: least_squares_order([(r.h, r.errors[i]) for r in self.rows])
            for i, name in enumerate(NORMS)
        }

    def to_csv(self, comments: dict | None = None) -> str:
        buf = io.StringIO()
        for key, val in (comments or {}).items():
            buf.write(f"# {key}: {val}\n")
        w = csv.writer(buf, lineterminator="\n")
        head = ["N"] + (["steps"] if self.show_steps else [])
        for name in NORMS:
            head += [name, f"{name}_order"]
        w.writerow(head)
        for r in self.rows:
            line = [str(r.n_cells)] + ([str(r.steps)] if self.show_steps else [])
            for i in range(3):
                line.append(f"{r.errors[i]:.2E}")
                line.append("-" if r.orders is None else f"{r.orders[i]:.2f}")
            w.writerow(line)
        ls = self.orders_ls
        if ls:
            buf.write("# least-squares orders: " + ", ".join(f"{k}={v:.2f}" for k, v in ls.items()) + "\n")
        return buf.getvalue()
