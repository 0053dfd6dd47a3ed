"""Atom weights from the generalized Vandermonde moment system.

For break points s_0 < ... < s_{n+1} the weights mu solve

    sum_i mu_i s_i       = 1
    sum_i mu_i s_i^(2k)  = 0,   k = 0..n

and gamma = sum_i |mu_i| is the one-dimensional weight-decay cost of the
profile built from them.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import ddarith as dd
from .polyapprox import NodeSet, Scheme

DD_THRESHOLD = 10  # n above this is solved in double-double
COINCIDE_TOL = 1e-14
RESIDUAL_TOL = 1e-10


class MomentSystemError(ArithmeticError):
    pass


class SingularSystemError(MomentSystemError):
    pass


class ConditioningError(MomentSystemError):
    pass


@dataclass(frozen=True)
class DiscreteMeasure:
    nodes: NodeSet
    weights: np.ndarray
    gamma: float
    tv_even: float

    @property
    def n(self):
        return self.nodes.n

    @property
    def points(self):
        return self.nodes.points

    @classmethod
    def from_weights(cls, nodes: NodeSet, weights) -> "DiscreteMeasure":
        w = np.asarray(weights, dtype=float)
        if w.shape != nodes.points.shape:
            raise ValueError("one weight per break point required")
        gamma = float(np.sum(np.abs(w)))
        return cls(nodes=nodes, weights=w, gamma=gamma, tv_even=2.0 * gamma)


def _rows(s, n):
    """Matrix rows: s, 1, s^2, s^4, ..., s^(2n)."""
    V = np.empty((n + 2, n + 2))
    V[0] = s
    sq = s * s
    V[1] = 1.0
    for k in range(1, n + 1):
        V[k + 1] = sq**k
    return V


def _rows_dd(s, n):
    rows = [[(x, 0.0) for x in s], [(1.0, 0.0)] * len(s)]
    sq = [dd.dd_mul((x, 0.0), (x, 0.0)) for x in s]
    cur = [(1.0, 0.0)] * len(s)
    for _ in range(n):
        cur = [dd.dd_mul(c, q) for c, q in zip(cur, sq)]
        rows.append(list(cur))
    return rows


def _residual_dd(s, n, weights):
    """Moment residuals accumulated in double-double."""
    rows = _rows_dd(s, n)
    rhs = [1.0] + [0.0] * (n + 1)
    out = np.empty(n + 2)
    for k, row in enumerate(rows):
        acc = (-rhs[k], 0.0)
        for a, w in zip(row, weights):
            acc = dd.dd_add(acc, dd.dd_mul(a, (float(w), 0.0)))
        out[k] = acc[0] + acc[1]
    return out


def solve_moment_system(nodes: NodeSet) -> DiscreteMeasure:
    """Weights mu_i for the given break points.

    Up to n = 10 a pivoted LU in double precision is used; beyond that the
    elimination runs in double-double and the result is rounded.  The
    residual is always checked in double-double.
    """
    s = np.asarray(nodes.points, dtype=float)
    n = nodes.n
    if np.any(np.diff(s) <= COINCIDE_TOL):
        raise SingularSystemError("break points coincide; moment matrix is singular")
    if n <= DD_THRESHOLD:
        rhs = np.zeros(n + 2)
        rhs[0] = 1.0
        try:
            w = np.linalg.solve(_rows(s, n), rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularSystemError(str(exc)) from exc
    else:
        rhs = [(1.0, 0.0)] + [(0.0, 0.0)] * (n + 1)
        try:
            sol = dd.dd_solve(_rows_dd(s, n), rhs)
        except ZeroDivisionError as exc:
            raise SingularSystemError(str(exc)) from exc
        w = np.array([hi + lo for hi, lo in sol])
    m = DiscreteMeasure.from_weights(nodes, w)
    res = np.max(np.abs(_residual_dd(s, n, w)))
    if not np.isfinite(res) or res > RESIDUAL_TOL * (1.0 + m.gamma):
        raise ConditioningError(f"moment residual {res:.3e} exceeds tolerance at n={n}")
    return m


def gamma_norm(m: DiscreteMeasure) -> float:
    return float(np.sum(np.abs(m.weights)))


def verify_moments(m: DiscreteMeasure) -> np.ndarray:
    """Residual vector: first moment minus one, then the even moments k = 0..n."""
    return _residual_dd(np.asarray(m.points, dtype=float), m.n, m.weights)


def alternates(m: DiscreteMeasure) -> bool:
    w = m.weights
    return bool(np.all(w[:-1] * w[1:] < 0.0))


def optimal_gamma(n: int, lo: float = 0.0) -> float:
    from .polyapprox import nodes_optimal

    return solve_moment_system(nodes_optimal(n, lo)).gamma


def measure_csv(m: DiscreteMeasure) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "s_i", "mu_i"])
    for i, (s, mu) in enumerate(zip(m.points, m.weights)):
        w.writerow([i, f"{s:.17g}", f"{mu:.17g}"])
    return buf.getvalue()


def read_measure_csv(text: str, scheme=Scheme.OPTIMAL, lo: float | None = None) -> DiscreteMeasure:
    rows = list(csv.DictReader(io.StringIO(text)))
    s = np.array([float(r["s_i"]) for r in rows])
    mu = np.array([float(r["mu_i"]) for r in rows])
    nodes = NodeSet(len(s) - 2, Scheme(scheme), s, lo=float(s[0]) if lo is None else lo)
    return DiscreteMeasure.from_weights(nodes, mu)
