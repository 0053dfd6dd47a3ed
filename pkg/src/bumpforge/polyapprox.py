"""Best uniform polynomial approximation of sqrt(t) and break-point schemes.

The Remez exchange works on ``[lo, 1]``.  Interior extremals are found by
two nested bisections: first the sign changes of the residual between
consecutive reference points, then the zeros of the residual's derivative
between consecutive residual roots.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P

BISECT_WIDTH = 1e-13
RATIO_TOL = 1.001


class RemezError(RuntimeError):
    """Raised when the exchange iteration cannot produce a valid reference."""


class Scheme(str, enum.Enum):
    OPTIMAL = "optimal"
    EQUIDISTANT = "equidistant"
    CHEBYSHEV = "chebyshev"


@dataclass(frozen=True)
class MinimaxPoly:
    """Best approximation of sqrt(t) on [lo, 1] by a degree-``degree`` polynomial.

    ``coeffs`` are monomial coefficients alpha_0..alpha_n.  Evaluation goes
    through a Chebyshev series on [lo, 1], which stays accurate where the
    monomial form does not.
    """

    degree: int
    lo: float
    coeffs: np.ndarray
    level: float
    extremals: np.ndarray
    iterations: int = 0
    _cheb: np.ndarray = field(default=None, repr=False, compare=False)

    def _x(self, t):
        return (2.0 * np.asarray(t, dtype=float) - (1.0 + self.lo)) / (1.0 - self.lo)

    def __call__(self, t):
        return C.chebval(self._x(t), self._cheb)

    def residual(self, t):
        """sqrt(t) - p(t)."""
        t = np.asarray(t, dtype=float)
        return np.sqrt(t) - self(t)


@dataclass(frozen=True)
class NodeSet:
    n: int
    scheme: Scheme
    points: np.ndarray
    lo: float = 0.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (self.n + 2,):
            raise ValueError(f"expected {self.n + 2} points, got {pts.shape}")
        if np.any(np.diff(pts) <= 0.0):
            raise ValueError("break points must be strictly increasing")
        if pts[0] < 0.0 or pts[-1] != 1.0:
            raise ValueError("break points must lie in [0, 1] and end at 1")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


def _bisect(fn, a, b, fa=None):
    """Root of ``fn`` in [a, b] given a sign change; stops at width 1e-13."""
    if fa is None:
        fa = fn(a)
    fb = fn(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise RemezError(f"bracket [{a!r}, {b!r}] lost its sign change")
    while b - a > BISECT_WIDTH:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = fn(m)
        if fm == 0.0:
            return m
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _level_solve(ref, lo):
    """Solve p(t_i) + (-1)^i e = sqrt(t_i) in a Chebyshev basis on [lo, 1].

    Returns (chebyshev coefficients, signed e).
    """
    m = len(ref)
    n = m - 2
    x = (2.0 * ref - (1.0 + lo)) / (1.0 - lo)
    A = np.empty((m, m))
    A[:, : n + 1] = C.chebvander(x, n)
    A[:, n + 1] = (-1.0) ** np.arange(m)
    sol = np.linalg.solve(A, np.sqrt(ref))
    return sol[: n + 1], sol[n + 1]


def remez_sqrt(n: int, lo: float = 0.0, max_iter: int = 100) -> MinimaxPoly:
    """Minimax polynomial of degree ``n`` for sqrt(t) on [lo, 1].

    The reference starts equidistant with both endpoints pinned.  Iteration
    stops once the residual magnitudes at the updated reference agree to the
    ratio 1.001; a last level solve on that reference fixes the returned
    coefficients and level.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if not 0.0 <= lo < 1.0:
        raise ValueError("lo must lie in [0, 1)")
    lo = float(lo)
    if n == 0:
        return _finish(0, lo, np.array([lo, 1.0]), 0)

    ref = np.linspace(lo, 1.0, n + 2)
    for it in range(1, max_iter + 1):
        cheb, _ = _level_solve(ref, lo)
        scale = 2.0 / (1.0 - lo)
        dcheb = C.chebder(cheb) * scale

        def r(t):
            return math.sqrt(t) - C.chebval((2.0 * t - (1.0 + lo)) / (1.0 - lo), cheb)

        def dr(t):
            return 0.5 / math.sqrt(t) - C.chebval((2.0 * t - (1.0 + lo)) / (1.0 - lo), dcheb)

        roots = [_bisect(r, ref[i], ref[i + 1]) for i in range(n + 1)]
        inner = [_bisect(dr, roots[i - 1], roots[i]) for i in range(1, n + 1)]
        new_ref = np.array([lo, *inner, 1.0])
        if np.any(np.diff(new_ref) <= 0.0):
            raise RemezError("reference points collapsed")
        mags = np.abs([r(t) for t in new_ref])
        ref = new_ref
        if mags.min() > 0.0 and mags.max() / mags.min() < RATIO_TOL:
            return _finish(n, lo, ref, it)
    raise RemezError(f"Remez did not reach ratio {RATIO_TOL} in {max_iter} iterations (n={n}, lo={lo})")


def _finish(n, lo, ref, iterations):
    if n == 0:
        # best constant is the midrange of sqrt over [lo, 1]
        c = 0.5 * (1.0 + math.sqrt(lo))
        cheb = np.array([c])
        level = 0.5 * (1.0 - math.sqrt(lo))
    else:
        cheb, e = _level_solve(ref, lo)
        level = abs(e)
    # monomial coefficients in t; the affine change of variable is exact enough
    # for reporting but evaluation stays on the Chebyshev series
    mono_x = C.cheb2poly(cheb)
    a, b = -(1.0 + lo) / (1.0 - lo), 2.0 / (1.0 - lo)
    coeffs = np.zeros(n + 1)
    shift = np.array([1.0])
    for k, ck in enumerate(mono_x):
        if k:
            shift = P.polymul(shift, [a, b])
        coeffs[: len(shift)] += ck * shift
    return MinimaxPoly(
        degree=n,
        lo=lo,
        coeffs=coeffs,
        level=float(level),
        extremals=np.asarray(ref, dtype=float),
        iterations=iterations,
        _cheb=cheb,
    )


def nodes_optimal(n: int, lo: float = 0.0) -> NodeSet:
    """Break points s_i = sqrt(t_i) from the minimax reference on [lo^2, 1]."""
    if not 0.0 <= lo < 1.0:
        raise ValueError("lo must lie in [0, 1)")
    mp = remez_sqrt(n, lo * lo)
    pts = np.sqrt(mp.extremals)
    pts[0], pts[-1] = lo, 1.0
    return NodeSet(n, Scheme.OPTIMAL, pts, lo=lo)


def nodes_equidistant(n: int, lo: float = 0.0) -> NodeSet:
    i = np.arange(n + 2)
    pts = lo + (1.0 - lo) * i / (n + 1)
    pts[-1] = 1.0
    return NodeSet(n, Scheme.EQUIDISTANT, pts, lo=lo)


def nodes_chebyshev(n: int) -> NodeSet:
    """Extrema of the Chebyshev polynomial on [0, 1], sorted increasingly."""
    i = np.arange(n + 1, -1, -1)
    pts = 0.5 + 0.5 * np.cos(i * np.pi / (n + 1))
    pts[0], pts[-1] = 0.0, 1.0
    if n % 2 == 1:
        pts[(n + 1) // 2] = 0.5
    return NodeSet(n, Scheme.CHEBYSHEV, pts)


def make_nodes(scheme, n: int, lo: float = 0.0) -> NodeSet:
    scheme = Scheme(scheme)
    if scheme is Scheme.OPTIMAL:
        return nodes_optimal(n, lo)
    if scheme is Scheme.EQUIDISTANT:
        return nodes_equidistant(n, lo)
    if lo != 0.0:
        raise ValueError("chebyshev nodes are fixed on [0, 1]")
    return nodes_chebyshev(n)
