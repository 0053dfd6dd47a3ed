"""Invariant suite behind ``bumpforge verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import decay_bound, lipschitz_bound, plateau_lower_bound
from .moments import DiscreteMeasure, MomentSystemError, alternates, solve_moment_system, verify_moments
from .polyapprox import RATIO_TOL, RemezError, nodes_optimal, remez_sqrt
from .profile import build_f, build_g

GRID = 10_000


@dataclass
class Check:
    invariant: str
    d: int
    passed: bool
    detail: str = ""

    def as_dict(self):
        return {"invariant": self.invariant, "d": self.d, "passed": self.passed, "detail": self.detail}


def _remez_checks(n, lo, d):
    mp = remez_sqrt(n, lo)
    res = mp.residual(mp.extremals)
    mags = np.abs(res)
    # the reference points join the grid so the sampled max cannot miss the peaks
    grid = np.union1d(np.linspace(lo, 1.0, GRID), mp.extremals)
    gmax = np.abs(mp.residual(grid)).max()
    yield Check("remez_alternation", d, bool(np.all(res[:-1] * res[1:] < 0)))
    yield Check(
        "remez_level_ratio",
        d,
        bool(np.all(mags >= mp.level / RATIO_TOL) and np.all(mags <= mp.level * RATIO_TOL)),
        f"level={mp.level:.6g}",
    )
    yield Check(
        "remez_sandwich",
        d,
        bool(mp.level * (1 - 1e-12) <= gmax <= RATIO_TOL * mp.level),
        f"grid max/level={gmax / mp.level:.9f}",
    )


def measure_checks(m: DiscreteMeasure, d: int, level: float | None = None, plateau_eps: float = 0.0):
    """Checks that only need the measure and its bump in dimension ``d``."""
    res = np.abs(verify_moments(m)).max()
    yield Check("moment_residual", d, bool(res <= 1e-8 * m.gamma), f"max residual={res:.3e}")
    yield Check("weight_alternation", d, alternates(m))
    if level is not None:
        dual = m.gamma * level
        yield Check("duality", d, bool(abs(dual - 1.0) <= 1e-6), f"gamma*level={dual:.12f}")
    b = build_f(build_g(m), d)
    yield Check("origin_value", d, bool(abs(b(0.0) - 1.0) <= 1e-10))
    outside = np.abs(b(np.array([1.0, 1.1, 1.5, 2.0]))).max()
    yield Check("vanishes_outside", d, bool(outside <= 1e-6), f"max |f(r>=1)|={outside:.3e}")
    r = np.linspace(0.0, 1.0, GRID + 2)[1:-1]
    f = b(r)
    rise = float(np.diff(f).max())
    yield Check("monotone", d, bool(rise <= 1e-10), f"max increase={rise:.3e}")
    yield Check("range", d, bool(f.min() >= -1e-10 and f.max() <= 1 + 1e-10), f"min={f.min():.3e}")
    fp = np.abs(b.derivative(r)).max()
    lip = lipschitz_bound(d, m.tv_even)
    yield Check("lipschitz", d, bool(fp <= lip * (1 + 1e-6)), f"max|f'|={fp:.6g} bound={lip:.6g}")
    if plateau_eps > 0.0:
        rp = np.linspace(0.0, plateau_eps * (1 - 1e-3), 200)
        dev = np.abs(b(rp) - 1.0).max()
        yield Check("plateau_flat", d, bool(dev <= 1e-6), f"max |f-1|={dev:.3e}")
    else:
        s1 = m.points[1]
        rl = np.linspace(0.0, s1, 201)
        slope = b.origin_slope()
        dev = np.abs(b(rl) - (1.0 + slope * rl)).max()
        yield Check("linear_segment", d, bool(dev <= 1e-6), f"slope={slope:.9g} dev={dev:.3e}")
        if d >= 5:
            rr = np.linspace(0.62, 1.0, 102)[1:-1]
            env = np.array([decay_bound(d, m.gamma, x) for x in rr])
            over = float((b(rr) - env * (1 + 1e-6)).max())
            yield Check("decay_envelope", d, bool(over <= 0.0), f"max(f - bound)={over:.3e}")


def run_checks(d_values, eps: float = 0.0):
    checks = []
    for d in d_values:
        n = (d - 1) // 2
        try:
            checks.extend(_remez_checks(n, eps * eps, d))
            m = solve_moment_system(nodes_optimal(n, eps))
            level = remez_sqrt(n, eps * eps).level
            checks.extend(measure_checks(m, d, level=level, plateau_eps=eps))
            if eps > 0.0:
                lb = plateau_lower_bound(eps, n, 0.5)
                checks.append(Check("plateau_lower_bound", d, bool(m.gamma >= lb), f"gamma={m.gamma:.6g} bound={lb:.6g}"))
        except (RemezError, MomentSystemError) as exc:
            checks.append(Check("solver", d, False, str(exc)))
    return checks


def summary(checks):
    failures = [c.as_dict() for c in checks if not c.passed]
    return {"passed": not failures, "checks": len(checks), "failures": failures}
