"""Orthonormal Legendre basis and Gauss-Legendre rules on [-1, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_POINTS = 32


@dataclass(frozen=True)
class QuadRule:
    points: np.ndarray
    weights: np.ndarray
    exactness: int

    def __len__(self) -> int:
        return len(self.points)

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.points)))


def _legendre_p(n: int, x):
    """Classical P_n and P_n' by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0, np.zeros_like(x)
    p1 = x.copy()
    dp0, dp1 = np.zeros_like(x), np.ones_like(x)
    for m in range(2, n + 1):
        p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
        dp2 = ((2 * m - 1) * (p1 + x * dp1) - (m - 1) * dp0) / m
        p0, p1 = p1, p2
        dp0, dp1 = dp1, dp2
    return p1, dp1


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> QuadRule:
    """n-point Gauss-Legendre rule on [-1, 1], exact up to degree 2n - 1.

    Nodes come from Newton iteration seeded with the Chebyshev-angle guess
    cos(pi (i - 1/4) / (n + 1/2)).
    """
    if not isinstance(n, (int, np.integer)) or n < 1 or n > MAX_POINTS:
        raise ValueError(f"number of Gauss points must be in [1, {MAX_POINTS}], got {n!r}")
    n = int(n)
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_p(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= 1e-15:
            break
    _, dp = _legendre_p(n, x)
    w = 2.0 / ((1.0 - x**2) * dp**2)
    x = x[::-1].copy()
    w = w[::-1].copy()
    # symmetrize to kill round-off asymmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    if n % 2 == 1:
        x[n // 2] = 0.0
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadRule(points=x, weights=w, exactness=2 * n - 1)


def legendre_value(m: int, xi):
    """Orthonormal Legendre polynomial: int_{-1}^{1} phi_m phi_n = delta_mn."""
    p, _ = _legendre_p(m, xi)
    out = math.sqrt((2 * m + 1) / 2.0) * p
    return float(out) if np.ndim(out) == 0 else out


def legendre_derivative(m: int, xi):
    _, dp = _legendre_p(m, xi)
    out = math.sqrt((2 * m + 1) / 2.0) * dp
    return float(out) if np.ndim(out) == 0 else out


def vandermonde(k: int, xi) -> np.ndarray:
    """Rows = points, columns = phi_0..phi_k."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return np.stack([legendre_value(m, xi) for m in range(k + 1)], axis=-1)


def vandermonde_derivative(k: int, xi) -> np.ndarray:
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return np.stack([legendre_derivative(m, xi) for m in range(k + 1)], axis=-1)
