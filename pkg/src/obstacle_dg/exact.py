"""Reference solutions of min(u_t + c u_x, u - g) = 0.

The general oracle uses the control representation
``u(t, x) = max(u0(x - c t), max_{0 <= s <= t} g(x - c s))``; the closed
forms below cover the sine obstacle on [-1, 1] used in the experiments.
"""

from __future__ import annotations

import numpy as np

from .obstacle import Analytic, ObstacleSpec, g_window_max

PERIOD = 2.0


def wrap_unit(x):
    """Wrap into [-1, 1)."""
    return np.mod(np.asarray(x, dtype=float) + 1.0, PERIOD) - 1.0


def sin_pi(x):
    return np.sin(np.pi * np.asarray(x, dtype=float))


def half_plus_sin_pi(x):
    return 0.5 + sin_pi(x)


def sin_pi_window_max(x, width):
    """max of sin(pi y) over y in [x - width, x]."""
    x = np.asarray(x, dtype=float)
    lo = x - width
    # first crest 1/2 + 2n at or after lo
    crest = lo + np.mod(0.5 - lo, PERIOD)
    ends = np.maximum(sin_pi(lo), sin_pi(x))
    return np.where((crest <= x) | (width >= PERIOD), 1.0, ends)


def sin_obstacle(variant: str = "two_point") -> ObstacleSpec:
    return ObstacleSpec(sin_pi, Analytic(sin_pi_window_max), variant)


class CompatibilityError(ValueError):
    pass


class DPPOracle:
    """Value-function oracle for given initial data and obstacle.

    Requires ``u0 >= g`` (checked on a sampling grid of the domain); for
    incompatible data the value formula jumps at t = 0+.
    """

    def __init__(self, u0, spec: ObstacleSpec, c: float, domain=(-1.0, 1.0),
                 n_check: int = 4001, slack: float = 1e-10):
        if not c > 0:
            raise ValueError(f"velocity must be positive, got c={c}")
        xs = np.linspace(domain[0], domain[1], n_check)
        gap = np.asarray(u0(xs)) - np.asarray(spec.g(xs))
        if np.min(gap) < -slack:
            i = int(np.argmin(gap))
            raise CompatibilityError(
                f"initial data lies below the obstacle at x={xs[i]:.6g} (u0 - g = {gap[i]:.3e})"
            )
        self.u0, self.spec, self.c = u0, spec, c

    def __call__(self, t, x):
        t = float(t)
        if t < 0:
            raise ValueError(f"time must be non-negative, got {t}")
        x = np.asarray(x, dtype=float)
        transported = np.asarray(self.u0(x - self.c * t), dtype=float)
        if t == 0:
            return transported if transported.ndim else float(transported)
        out = np.maximum(transported, g_window_max(self.spec, x, self.c * t))
        return out if np.ndim(out) else float(out)


def dpp_exact(u0, spec: ObstacleSpec, c: float, t: float, x, domain=(-1.0, 1.0)):
    return DPPOracle(u0, spec, c, domain)(t, x)


def example1_exact(t: float, x):
    """Closed form for c = 1, g = sin(pi x), u0 = 0.5 + g on [-1, 1], 0 <= t <= 1.

    Past t = 1/3 the crest value 1 is carried downstream of x = 1/2 wherever
    the transported data has dropped below it; from t = 5/6 on that plateau
    wraps through the periodic boundary onto [-1, t - 11/6].
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"closed form valid for 0 <= t <= 1, got t={t}")
    x = wrap_unit(x)
    u = np.maximum(half_plus_sin_pi(x - t), sin_pi(x))
    if t >= 1.0 / 3.0:
        plateau = (x >= 0.5) & (x <= 1.0)
        if t >= 1.0 / 3.0 + 0.5:
            plateau |= (x >= -1.0) & (x <= t - 11.0 / 6.0)
        u = np.where(plateau, np.maximum(u, 1.0), u)
    return u if np.ndim(u) else float(u)


def example2_exact(t: float, x, y):
    """Diagonal transport in 2-D reduces to the 1-D closed form in x + y."""
    return example1_exact(t, wrap_unit(np.asarray(x) + np.asarray(y)))


def example2_initial(x, y):
    return 0.5 + sin_pi(np.asarray(x) + np.asarray(y))


def example2_obstacle(x, y):
    return sin_pi(np.asarray(x) + np.asarray(y))
