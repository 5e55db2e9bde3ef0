"""Obstacle evaluation and the nodal max step.

The window maximum ``g_w(x) = max_{y in [x - w, x]} g(y)`` is what the exact
solution feels over one step of length ``dt`` with ``w = c dt``. The schemes
compare the transported solution with a surrogate of it at the Gauss nodes
of every cell and rebuild the polynomial from the nodal maxima.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .dg_space import DGFunction, gauss_nodes
from .projection import from_gauss_values, gauss_values

EXACT_WINDOW = "exact_window"
TWO_POINT = "two_point"
VARIANTS = (EXACT_WINDOW, TWO_POINT)


@dataclass(frozen=True)
class Analytic:
    """Closed-form window maximum ``window_max(x, width)`` supplied with the obstacle."""

    window_max: Callable


@dataclass(frozen=True)
class Sampled:
    n_samples: int = 64
    refine_iters: int = 2

    def __post_init__(self):
        if self.n_samples < 2:
            raise ValueError(f"n_samples must be >= 2, got {self.n_samples}")
        if self.refine_iters < 0:
            raise ValueError(f"refine_iters must be >= 0, got {self.refine_iters}")


@dataclass(frozen=True)
class ObstacleSpec:
    g: Callable
    window: Analytic | Sampled = field(default_factory=Sampled)
    variant: str = TWO_POINT

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown obstacle variant {self.variant!r}; expected one of {VARIANTS}")

    def with_variant(self, variant: str) -> "ObstacleSpec":
        return ObstacleSpec(self.g, self.window, variant)


def _sampled_window_max(g, x: np.ndarray, width: float, n: int, iters: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, n + 1)
    y = x[..., None] - width * (1.0 - t)  # [x - w, x]
    gy = g(y)
    best_i = np.argmax(gy, axis=-1)
    best = np.take_along_axis(gy, best_i[..., None], axis=-1)[..., 0]
    lo, hi = x - width, x
    spacing = width / n
    center = np.take_along_axis(y, best_i[..., None], axis=-1)[..., 0]
    for _ in range(iters):
        # parabola through (center - s, center, center + s), vertex clamped into the window
        a = np.clip(center - spacing, lo, hi)
        b = center
        cpt = np.clip(center + spacing, lo, hi)
        fa, fb, fc = g(a), best, g(cpt)
        num = (b - a) ** 2 * (fb - fc) - (b - cpt) ** 2 * (fb - fa)
        den = (b - a) * (fb - fc) - (b - cpt) * (fb - fa)
        with np.errstate(divide="ignore", invalid="ignore"):
            vertex = b - 0.5 * num / den
        vertex = np.where(np.isfinite(vertex), vertex, b)
        vertex = np.clip(vertex, lo, hi)
        fv = g(vertex)
        cand = np.stack([fa, fb, fc, fv], axis=-1)
        pts = np.stack([a, b, cpt, vertex], axis=-1)
        k = np.argmax(cand, axis=-1)
        best = np.take_along_axis(cand, k[..., None], axis=-1)[..., 0]
        center = np.take_along_axis(pts, k[..., None], axis=-1)[..., 0]
        spacing = 0.5 * spacing
    return best


def g_window_max(spec: ObstacleSpec, x, width: float):
    """max of g over [x - width, x]."""
    if width < 0:
        raise ValueError(f"window width must be non-negative, got {width}")
    scalar = np.ndim(x) == 0
    xa = np.asarray(x, dtype=float)
    if width == 0:
        out = np.asarray(spec.g(xa), dtype=float)
    elif isinstance(spec.window, Analytic):
        out = np.asarray(spec.window.window_max(xa, width), dtype=float)
    else:
        out = _sampled_window_max(spec.g, xa, width, spec.window.n_samples, spec.window.refine_iters)
    return float(out) if scalar else out


def tilde_g(spec: ObstacleSpec, x, c: float, dt: float):
    if spec.variant == EXACT_WINDOW:
        return g_window_max(spec, x, c * dt)
    return np.maximum(spec.g(x), spec.g(np.asarray(x) - c * dt))


def tilde_g_values(spec: ObstacleSpec, mesh, k: int, c: float, dt: float) -> np.ndarray:
    """Surrogate obstacle at every Gauss node, shape (N, k+1)."""
    if not dt > 0:
        raise ValueError(f"time step must be positive, got dt={dt}")
    return np.asarray(tilde_g(spec, gauss_nodes(mesh, k), c, dt), dtype=float)


def apply_obstacle(v: DGFunction, gvals) -> DGFunction:
    """Interpolate max(v, gvals) at the Gauss nodes of every cell."""
    gvals = np.asarray(gvals, dtype=float)
    expected = (v.mesh.n_cells, v.degree + 1)
    if gvals.shape != expected:
        raise ValueError(f"obstacle table must be {expected}, got {gvals.shape}")
    return from_gauss_values(v.mesh, v.degree, np.maximum(gauss_values(v), gvals))


def obstacle_step(u: DGFunction, transport: Callable[[DGFunction, float], DGFunction],
                  spec: ObstacleSpec, c: float, dt: float) -> DGFunction:
    """Transport one step with ``transport(u, dt)``, then lift to the surrogate obstacle."""
    moved = transport(u, dt)
    return apply_obstacle(moved, tilde_g_values(spec, u.mesh, u.degree, c, dt))
