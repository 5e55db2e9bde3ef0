"""Discontinuous Galerkin solvers for the obstacle equation
min(u_t + c u_x, u - g(x)) = 0 on periodic domains."""

from .dg_space import DGFunction, Mesh1D, eval_dg, gauss_points_of_cell, trace
from .exact import DPPOracle, dpp_exact, example1_exact, example2_exact
from .metrics import ErrorReport, grid_error, l2_pseudo_norm, least_squares_order
from .obstacle import (
    Analytic,
    ObstacleSpec,
    Sampled,
    apply_obstacle,
    g_window_max,
    obstacle_step,
    tilde_g_values,
)
from .projection import gauss_radau_project, l2_project, l2_project_shifted
from .quadrature import QuadRule, gauss_legendre, legendre_derivative, legendre_value
from .rkdg import RKDGSolver, bilinear_h, rkdg_apply_l, rkdg_step
from .schedule import TimeSchedule
from .sldg import sldg_advect, sldg_step

__version__ = "0.1.0"
