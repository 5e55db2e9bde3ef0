"""Time-step schedules.

A schedule turns a mesh width ``h`` and a final time ``T`` into the list of
step sizes actually taken. The list always sums to ``T``; for fixed-size
rules the last step is shortened to land on ``T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def table3_step_count(n_cells: int) -> int:
    """Step count 10 (N/10)^(3/5), truncated the way the published column is."""
    return int(10.0 * (n_cells / 10.0) ** 0.6)


@dataclass(frozen=True)
class TimeSchedule:
    kind: str
    dt: float | None = None
    frac: float | None = None
    C: float | None = None
    power: float | None = None
    steps: int | None = None
    rule: str | None = None

    KINDS = ("fixed_dt", "dt_eq_frac_h", "dt_eq_C_h_pow", "step_count", "step_count_rule")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}; expected one of {self.KINDS}")
        need = {
            "fixed_dt": ("dt",),
            "dt_eq_frac_h": ("frac",),
            "dt_eq_C_h_pow": ("C", "power"),
            "step_count": ("steps",),
            "step_count_rule": ("rule",),
        }[self.kind]
        for name in need:
            val = getattr(self, name)
            if val is None:
                raise ValueError(f"schedule '{self.kind}' requires '{name}'")
            if name != "rule" and not val > 0:
                raise ValueError(f"schedule field '{name}' must be positive, got {val!r}")
        if self.kind == "step_count_rule" and self.rule != "paper_table3":
            raise ValueError(f"unknown step-count rule {self.rule!r}")

    @classmethod
    def fixed(cls, dt: float) -> "TimeSchedule":
        return cls("fixed_dt", dt=dt)

    @classmethod
    def frac_h(cls, frac: float) -> "TimeSchedule":
        return cls("dt_eq_frac_h", frac=frac)

    @classmethod
    def c_h_pow(cls, C: float, power: float) -> "TimeSchedule":
        return cls("dt_eq_C_h_pow", C=C, power=power)

    @classmethod
    def n_steps(cls, steps: int) -> "TimeSchedule":
        return cls("step_count", steps=int(steps))

    @classmethod
    def table3(cls) -> "TimeSchedule":
        return cls("step_count_rule", rule="paper_table3")

    @classmethod
    def from_dict(cls, d: dict) -> "TimeSchedule":
        d = dict(d)
        kind = d.pop("kind")
        return cls(kind, **d)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for name in ("dt", "frac", "C", "power", "steps", "rule"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out

    def nominal_dt(self, h: float, n_cells: int, T: float) -> float:
        if self.kind == "fixed_dt":
            return self.dt
        if self.kind == "dt_eq_frac_h":
            return self.frac * h
        if self.kind == "dt_eq_C_h_pow":
            return self.C * h**self.power
        return T / self.step_count(h, n_cells, T)

    def step_count(self, h: float, n_cells: int, T: float) -> int:
        if self.kind == "step_count":
            return self.steps
        if self.kind == "step_count_rule":
            return table3_step_count(n_cells)
        dt = self.nominal_dt(h, n_cells, T)
        # tolerate T/dt landing a hair above an integer
        return max(1, math.ceil(T / dt - 1e-9))

    def steps_for(self, h: float, n_cells: int, T: float) -> np.ndarray:
        if T < 0:
            raise ValueError(f"final time must be non-negative, got {T}")
        if T == 0:
            return np.zeros(0)
        n = self.step_count(h, n_cells, T)
        if self.kind in ("step_count", "step_count_rule"):
            return np.full(n, T / n)
        dt = self.nominal_dt(h, n_cells, T)
        out = np.full(n, dt)
        out[-1] = T - dt * (n - 1)
        if out[-1] <= 0:  # T/dt was an integer up to round-off
            out = out[:-1]
            out[-1] += T - out.sum()
        return out
