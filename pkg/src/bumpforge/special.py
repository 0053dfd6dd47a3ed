"""Sphere-area quotients for the dimension-reduction integral."""

import math


def log_c_d(d: float) -> float:
    return math.lgamma(d / 2.0) - 0.5 * math.log(math.pi) - math.lgamma((d - 1) / 2.0)


def c_d(d: int) -> float:
    """1 / int_{-1}^{1} (1 - s^2)^((d-3)/2) ds = Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2))."""
    if d < 2:
        raise ValueError("c_d needs d >= 2")
    return math.exp(log_c_d(d))


def grad_factor(d: int) -> float:
    """Largest gradient of one averaged ReLU ridge per unit weight: c_d / (d - 1)."""
    return math.exp(log_c_d(d) - math.log(d - 1))
