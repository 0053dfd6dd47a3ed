"""Analytic constants, bounds, dimension sweeps and empirical law fits."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .moments import solve_moment_system, optimal_gamma
from .polyapprox import Scheme, make_nodes, remez_sqrt
from .profile import DEFAULT_QUAD_POINTS, build_f, build_g, radial_integrals
from .special import c_d, grad_factor, log_c_d

__all__ = [
    "SweepRecord",
    "c_d",
    "lipschitz_bound",
    "decay_bound",
    "plateau_lower_bound",
    "depth_sep_norm",
    "fit_dataset_bound",
    "mollification_rate",
    "fit_power_law",
    "fit_exp_law",
    "run_sweep",
    "plateau_gamma",
    "fitted_laws",
    "sweep_one",
]

SWEEP_FIELDS = (
    "d",
    "scheme",
    "gamma",
    "gamma_over_d",
    "remez_level",
    "lipschitz_bound",
    "max_abs_fprime",
    "radial_l1",
    "ball_avg",
)


@dataclass(frozen=True)
class SweepRecord:
    d: int
    scheme: str
    gamma: float
    gamma_over_d: float
    lipschitz_bound: float
    max_abs_fprime: float
    radial_l1: float
    ball_avg: float
    remez_level: float

    def as_row(self):
        rec = asdict(self)
        return [rec[k] for k in SWEEP_FIELDS]


def lipschitz_bound(d: int, tv_even: float) -> float:
    """Gradient bound for a radial bump whose 1d profile has total variation ``tv_even``."""
    return tv_even * grad_factor(d)


def decay_bound(d: int, gamma_half: float, r: float) -> float:
    """Envelope (2 c_d gamma / r) ((1 - r^2) / r)^((d-3)/2) for 0 < r < 1."""
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    k = (d - 3) / 2.0
    return 2.0 * c_d(d) * gamma_half / r * ((1.0 - r * r) / r) ** k


def plateau_lower_bound(eps: float, n: int, c: float = 1.0) -> float:
    """c eps^2 sqrt(pi n) / (1 - eps^2)^(n+1); evaluated in log space."""
    if eps == 0.0:
        return 0.0
    e2 = eps * eps
    log_b = math.log(c) + math.log(e2) + 0.5 * math.log(math.pi * n) - (n + 1) * math.log1p(-e2)
    return math.exp(log_b) if log_b < 709.0 else math.inf


def depth_sep_norm(d: int, eps: float = 0.0) -> float:
    """Barron semi-norm of x -> (|x| - eps) / (1 - eps): (d - 1) / (c_d (1 - eps))."""
    if not 0.0 <= eps < 1.0:
        raise ValueError("eps must lie in [0, 1)")
    return math.exp(math.log(d - 1) - log_c_d(d)) / (1.0 - eps)


def fit_dataset_bound(points, d: int, gamma_index: int | None = None) -> float:
    """Norm bound 2 gamma_k sum |y_i| / r_i for interpolating bumps on a data set.

    ``r_i`` is the distance from x_i to its nearest neighbour.  The default
    index k = (d + 1) / 2 follows the data-fitting estimate.
    """
    xs = np.array([np.atleast_1d(np.asarray(p[0], dtype=float)) for p in points])
    ys = np.array([float(p[1]) for p in points])
    if len(xs) < 2:
        raise ValueError("need at least two data points")
    dist = np.linalg.norm(xs[:, None, :] - xs[None, :, :], axis=-1)
    np.fill_diagonal(dist, np.inf)
    r = dist.min(axis=1)
    if np.any(r == 0.0):
        raise ValueError("duplicate data points")
    k = (d + 1) // 2 if gamma_index is None else gamma_index
    total = float(np.sum(np.abs(ys) / r))
    if total == 0.0:
        return 0.0
    return 2.0 * optimal_gamma(k) * total


def mollification_rate(d: int, alpha: float, m: int):
    """Balanced mollification width and the resulting approximation rate for m neurons."""
    if alpha <= 0 or m < 1:
        raise ValueError("alpha > 0 and m >= 1 required")
    denom = 2.0 * (d + 1 + alpha)
    return m ** (-1.0 / denom), m ** (-alpha / denom)


def _positive(ys):
    ys = np.asarray(ys, dtype=float)
    if np.any(ys <= 0.0) or not np.all(np.isfinite(ys)):
        raise ValueError("values must be positive and finite")
    return ys


def fit_power_law(xs, ys):
    """Least squares fit of y = coeff * x^exponent in log-log coordinates."""
    xs = _positive(xs)
    ys = _positive(ys)
    slope, intercept = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(math.exp(intercept)), float(slope)


def fit_exp_law(xs, ys):
    """Least squares fit of log y = intercept + slope * x."""
    ys = _positive(ys)
    slope, intercept = np.polyfit(np.asarray(xs, dtype=float), np.log(ys), 1)
    return float(intercept), float(slope)


def plateau_gamma(eps: float, n: int) -> float:
    """Minimal total variation of a measure on [eps, 1] meeting the n + 2 moment conditions."""
    return solve_moment_system(make_nodes(Scheme.OPTIMAL, n, eps)).gamma


def sweep_one(d: int, scheme=Scheme.OPTIMAL, quad_points: int = DEFAULT_QUAD_POINTS, grid: int = 2001) -> SweepRecord:
    if d < 3 or d % 2 == 0:
        raise ValueError(f"dimension must be odd and >= 3, got {d}")
    scheme = Scheme(scheme)
    n = (d - 1) // 2
    m = solve_moment_system(make_nodes(scheme, n))
    bump = build_f(build_g(m), d, quad_points)
    r = np.linspace(0.0, 1.0, grid)[1:]
    fp = np.abs(bump.derivative(r))
    l1, avg = radial_integrals(bump)
    return SweepRecord(
        d=d,
        scheme=scheme.value,
        gamma=m.gamma,
        gamma_over_d=m.gamma / d,
        lipschitz_bound=lipschitz_bound(d, m.tv_even),
        max_abs_fprime=float(max(fp.max(), abs(bump.origin_slope()))),
        radial_l1=l1,
        ball_avg=avg,
        remez_level=remez_sqrt(n, 0.0).level,
    )


def thread_count() -> int:
    env = os.environ.get("BUMPFORGE_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def run_sweep(d_list, scheme=Scheme.OPTIMAL, quad_points: int = DEFAULT_QUAD_POINTS, threads: int | None = None):
    """One record per dimension, returned in the order of ``d_list``."""
    d_list = list(d_list)
    for d in d_list:
        if d < 3 or d % 2 == 0:
            raise ValueError(f"dimension must be odd and >= 3, got {d}")
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(d_list) <= 1:
        return [sweep_one(d, scheme, quad_points) for d in d_list]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda d: sweep_one(d, scheme, quad_points), d_list))


def fitted_laws(records):
    """Power-law exponents of gamma and radial_l1, exponential slope of ball_avg."""
    if len(records) < 2:
        return {}
    ds = [r.d for r in records]
    g_coeff, g_exp = fit_power_law(ds, [r.gamma for r in records])
    l_coeff, l_exp = fit_power_law(ds, [r.radial_l1 for r in records])
    b_int, b_slope = fit_exp_law(ds, [r.ball_avg for r in records])
    return {
        "gamma_power_coeff": g_coeff,
        "gamma_power_exponent": g_exp,
        "radial_l1_coeff": l_coeff,
        "radial_l1_exponent": l_exp,
        "ball_avg_log_intercept": b_int,
        "ball_avg_log_slope": b_slope,
    }
