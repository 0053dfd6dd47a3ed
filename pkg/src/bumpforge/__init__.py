"""Minimal-norm radial bump functions built from shallow ReLU networks."""

from .analysis import (
    SweepRecord,
    decay_bound,
    depth_sep_norm,
    fit_dataset_bound,
    fit_exp_law,
    fit_power_law,
    lipschitz_bound,
    mollification_rate,
    plateau_gamma,
    plateau_lower_bound,
    run_sweep,
)
from .moments import (
    ConditioningError,
    DiscreteMeasure,
    MomentSystemError,
    SingularSystemError,
    gamma_norm,
    optimal_gamma,
    solve_moment_system,
    verify_moments,
)
from .polyapprox import MinimaxPoly, NodeSet, RemezError, Scheme, make_nodes, remez_sqrt
from .profile import (
    ProfileG,
    RadialBump,
    ball_average,
    build_f,
    build_g,
    closed_form_d3,
    eval_f,
    eval_f_prime,
    mixed_profile,
    radial_l1,
)
from .special import c_d

__version__ = "0.1.0"
