"""One-dimensional profile g and the radial bump f it induces in R^d.

g(s) = sum_i mu_i * max(s_i - |s|, 0) is even and piecewise linear.  The
radial profile is

    f(r) = c_d * int_{-1}^{1} g(r s) (1 - s^2)^((d-3)/2) ds

and is evaluated by composite Simpson on panels split at every kink
s = s_i / r, so each panel integrates a polynomial.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .special import c_d
from .moments import DiscreteMeasure

DEFAULT_QUAD_POINTS = 1001
_CHUNK = 256
TAIL_FROM = 2.0**-0.5


@dataclass(frozen=True)
class ProfileG:
    measure: DiscreteMeasure

    @property
    def points(self):
        return self.measure.points

    @property
    def weights(self):
        return self.measure.weights

    def __call__(self, s):
        s = np.abs(np.asarray(s, dtype=float))
        out = np.maximum(self.points - s[..., None], 0.0) @ self.weights
        return out if out.ndim else float(out)

    def derivative(self, s):
        """g'(s); at a kink the right derivative is returned for s >= 0."""
        s = np.asarray(s, dtype=float)
        active = self.points > np.abs(s)[..., None]
        out = -np.where(s < 0, -1.0, 1.0) * (active @ self.weights)
        return out if out.ndim else float(out)

    def segments(self):
        """Breakpoints z_0 = 0 <= ... and (offset, slope) with g = A - B z per segment.

        Segment j covers [z_j, z_{j+1}]; the last one, [1, inf), has g = 0.
        """
        s = self.points
        mu = self.weights
        z = np.concatenate([[0.0], s])
        # on [z_j, z_{j+1}] atoms with s_i > z_j are active
        A = np.array([np.dot(mu[j:], s[j:]) for j in range(len(s) + 1)])
        B = np.array([np.sum(mu[j:]) for j in range(len(s) + 1)])
        return z, A, B


def build_g(m: DiscreteMeasure) -> ProfileG:
    return ProfileG(m)


def _weight_exponent(d):
    if d < 3 or d % 2 == 0:
        raise ValueError(f"dimension must be odd and >= 3, got {d}")
    return (d - 3) // 2


@dataclass(frozen=True)
class RadialBump:
    """Radial profile f_d of the bump built from ``g``.

    ``quad_points`` is the Simpson node count over [-1, 1] given to every
    smooth piece: each kink panel in [0, 1] gets (quad_points - 1) / 2
    intervals, so the rule does not change as r moves.
    """

    d: int
    g: ProfileG
    quad_points: int = DEFAULT_QUAD_POINTS
    _m: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _weight_exponent(self.d)
        if self.quad_points < 11 or self.quad_points % 2 == 0:
            raise ValueError("quad_points must be odd and >= 11")
        m = (self.quad_points - 1) // 2
        object.__setattr__(self, "_m", m + (m % 2))

    @property
    def n(self):
        return (self.d - 1) // 2

    @property
    def c_d(self):
        return c_d(self.d)

    def _simpson(self, a, b, weight):
        """Per-panel Simpson integrals of weight(s) and s * weight(s) on [a, b]."""
        m = self._m
        u = np.linspace(0.0, 1.0, m + 1)
        simp = np.ones(m + 1)
        simp[1:-1:2], simp[2:-1:2] = 4.0, 2.0
        h = (b - a) / (3.0 * m)
        s = a[..., None] + (b - a)[..., None] * u
        w = weight(s)
        return (w @ simp) * h, ((w * s) @ simp) * h

    def _head(self, r):
        """Integrals over s in [0, 1] split at s = z_j / r."""
        k = _weight_exponent(self.d)
        z, _, _ = self.g.segments()
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            edges = np.where(r[:, None] > 0, z[None, :] / r[:, None], np.inf)
        edges = np.concatenate([np.minimum(edges, 1.0), np.ones((len(r), 1))], axis=1)
        return self._simpson(edges[:, :-1], edges[:, 1:], lambda s: (1.0 - s * s) ** k)

    def _tail(self, r):
        """Integrals over z in [r, 1] of (z^2 - r^2)^k, split at the break points."""
        k = _weight_exponent(self.d)
        z, _, _ = self.g.segments()
        edges = np.clip(np.concatenate([z, [1.0]])[None, :], r[:, None], 1.0)
        rr = (r * r)[:, None, None]
        return self._simpson(edges[:, :-1], edges[:, 1:], lambda x: (x * x - rr) ** k)

    def _f(self, r):
        _, A, B = self.g.segments()
        k = _weight_exponent(self.d)
        I0, I1 = self._head(r)
        out = 2.0 * self.c_d * (I0 @ A - r * (I1 @ B))
        # near the rim the head integral cancels terms of size gamma; the
        # orthogonality of g to (r^2 - z^2)^k gives a cancellation-free tail form
        tail = (r >= TAIL_FROM) & (r < 1.0)
        if np.any(tail):
            rt = r[tail]
            J0, J1 = self._tail(rt)
            sign = -1.0 if k % 2 == 0 else 1.0
            out[tail] = 2.0 * self.c_d * sign * rt ** (-1 - 2 * k) * (J0 @ A - J1 @ B)
        return np.where(r == 0.0, self.g(0.0), out)

    def _fprime(self, r):
        _, _, B = self.g.segments()
        _, I1 = self._head(r)
        out = -2.0 * self.c_d * (I1 @ B)
        return np.where(r == 0.0, self.origin_slope(), out)

    def _batched(self, fn, r):
        r = np.asarray(r, dtype=float)
        flat = r.reshape(-1)
        out = np.empty_like(flat)
        for i in range(0, len(flat), _CHUNK):
            out[i : i + _CHUNK] = fn(flat[i : i + _CHUNK])
        return out.reshape(r.shape) if r.ndim else float(out[0])

    def __call__(self, r):
        return self._batched(self._f, r)

    def derivative(self, r):
        return self._batched(self._fprime, r)

    def origin_slope(self):
        """Slope of the linear segment at the origin: g'(0+) * E[s] under the weight."""
        k = _weight_exponent(self.d)
        num = 1.0 / (2 * (k + 1))
        den = math.exp(math.lgamma(0.5) + math.lgamma(k + 1) - math.lgamma(k + 1.5)) / 2.0
        return float(self.g.derivative(0.0)) * num / den


def build_f(g: ProfileG, d: int, quad_points: int = DEFAULT_QUAD_POINTS) -> RadialBump:
    if d > 2 * g.measure.n + 1:
        raise ValueError(f"profile with n={g.measure.n} only vanishes outside the ball for d <= {2 * g.measure.n + 1}")
    return RadialBump(d, g, quad_points)


def eval_f(b: RadialBump, r):
    return b(r)


def eval_f_prime(b: RadialBump, r):
    return b.derivative(r)


def closed_form_d3(r):
    """Exact d = 3 profile built on the optimal break points (0, 1/2, 1)."""
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r <= 0.5, 1.0 - 1.5 * r, np.where(r <= 1.0, 0.5 * r - 1.0 + 0.5 / r, 0.0))
    return out if out.ndim else float(out)


def closed_form_d3_prime(r):
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r <= 0.5, -1.5, np.where(r <= 1.0, 0.5 * (1.0 - 1.0 / (r * r)), 0.0))
    return out if out.ndim else float(out)


def radial_rule(b: RadialBump, points: int = 4001):
    """Composite Simpson nodes and weights on [0, 1], split at the break points."""
    pts = b.g.points
    edges = np.unique(np.concatenate([[0.0], pts[(pts > 0) & (pts < 1)], [1.0]]))
    m = max(2, math.ceil((points - 1) / (len(edges) - 1)))
    m += m % 2
    u = np.linspace(0.0, 1.0, m + 1)
    w = np.ones(m + 1)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        nodes.append(lo + (hi - lo) * u)
        weights.append(w * (hi - lo) / (3.0 * m))
    return np.concatenate(nodes), np.concatenate(weights)


def radial_l1(b: RadialBump, points: int = 4001) -> float:
    """int_0^1 f(r) dr."""
    r, w = radial_rule(b, points)
    return float(w @ b(r))


def ball_average(b: RadialBump, points: int = 4001) -> float:
    """Mean of f over the unit ball: d * int_0^1 f(r) r^(d-1) dr."""
    r, w = radial_rule(b, points)
    return float(b.d * (w @ (b(r) * r ** (b.d - 1))))


def radial_integrals(b: RadialBump, points: int = 4001):
    """(radial_l1, ball_average) from a single evaluation of f."""
    r, w = radial_rule(b, points)
    f = b(r)
    return float(w @ f), float(b.d * (w @ (f * r ** (b.d - 1))))


def mixed_profile(m_dim: int, g: ProfileG, quad_points: int = DEFAULT_QUAD_POINTS) -> RadialBump:
    """Bump in R^m_dim from a profile whose measure satisfies n >= (m_dim-1)/2 moments."""
    _weight_exponent(m_dim)
    m = (m_dim - 1) // 2
    if m > g.measure.n:
        raise ValueError(f"m={m} exceeds the n={g.measure.n} moment conditions of the profile")
    return RadialBump(m_dim, g, quad_points)


def default_grid(points: int = 1001, r_max: float = 1.2):
    return np.linspace(0.0, r_max, points)


def profile_csv(b: RadialBump, radii=None) -> str:
    r = default_grid() if radii is None else np.asarray(radii, dtype=float)
    f = b(r)
    fp = b.derivative(r)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "f", "f_prime"])
    for row in zip(r, f, fp):
        w.writerow([f"{x:.17g}" for x in row])
    return buf.getvalue()
