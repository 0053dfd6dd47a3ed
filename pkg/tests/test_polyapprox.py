import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bumpforge.polyapprox import (
    NodeSet,
    RemezError,
    Scheme,
    make_nodes,
    nodes_chebyshev,
    nodes_equidistant,
    nodes_optimal,
    remez_sqrt,
)


def dense_max(mp, pts=200_001):
    # a grid alone can undershoot the peaks, so the reference joins it
    t = np.union1d(np.linspace(mp.lo, 1.0, pts), mp.extremals)
    return np.abs(mp.residual(t)).max()


class TestRemezKnownCases:
    def test_constant(self):
        mp = remez_sqrt(0)
        assert mp.level == 0.5
        assert mp(0.3) == pytest.approx(0.5)

    def test_constant_shifted_interval(self):
        mp = remez_sqrt(0, 0.25)
        assert mp.level == pytest.approx(0.25)
        assert mp(0.9) == pytest.approx(0.75)

    def test_linear(self):
        # best line for sqrt on [0, 1] is t + 1/8, touching at 0, 1/4, 1
        mp = remez_sqrt(1)
        np.testing.assert_allclose(mp.coeffs, [0.125, 1.0], atol=1e-12)
        np.testing.assert_allclose(mp.extremals, [0.0, 0.25, 1.0], atol=1e-12)
        assert mp.level == pytest.approx(0.125, abs=1e-13)

    def test_linear_on_subinterval(self):
        # chord slope on [a, 1]: 1/(1+sqrt a), tangency where 1/(2 sqrt t) equals it
        a = 0.09
        mp = remez_sqrt(1, a)
        slope = 1.0 / (1.0 + math.sqrt(a))
        assert mp.coeffs[1] == pytest.approx(slope, rel=1e-12)
        assert mp.extremals[1] == pytest.approx((0.5 / slope) ** 2, rel=1e-10)


class TestRemezEquioscillation:
    @pytest.mark.parametrize("n", [2, 3, 5, 8, 12, 15])
    def test_dense_grid_matches_level(self, n):
        mp = remez_sqrt(n)
        assert mp.level <= dense_max(mp) <= 1.001 * mp.level

    @pytest.mark.parametrize("n", [2, 6, 11])
    def test_alternating_signs(self, n):
        res = remez_sqrt(n).residual(remez_sqrt(n).extremals)
        assert np.all(np.sign(res[:-1]) != np.sign(res[1:]))
        np.testing.assert_allclose(np.abs(res), remez_sqrt(n).level, rtol=1e-3)

    def test_level_decreases_with_degree(self):
        levels = [remez_sqrt(n).level for n in range(12)]
        assert all(a > b for a, b in zip(levels, levels[1:]))

    def test_bernstein_scaling(self):
        # n * E_n(sqrt, [0,1]) tends to half the Bernstein constant for |x|
        assert 15 * remez_sqrt(15).level == pytest.approx(0.1401, abs=0.005)

    def test_endpoints_in_reference(self):
        mp = remez_sqrt(7, 0.16)
        assert mp.extremals[0] == 0.16 and mp.extremals[-1] == 1.0

    def test_iteration_cap(self):
        with pytest.raises(RemezError):
            remez_sqrt(9, max_iter=1)

    @pytest.mark.parametrize("bad", [dict(n=-1), dict(n=3, lo=1.0), dict(n=3, lo=-0.1)])
    def test_rejects_bad_input(self, bad):
        with pytest.raises(ValueError):
            remez_sqrt(**bad)

    @settings(max_examples=15, deadline=None)
    @given(n=st.integers(1, 9), lo=st.floats(0.0, 0.8))
    def test_sandwich_property(self, n, lo):
        mp = remez_sqrt(n, lo)
        assert mp.level <= dense_max(mp, 20_001) * (1 + 1e-12)
        assert dense_max(mp, 20_001) <= 1.001 * mp.level


class TestNodes:
    def test_optimal_d3(self):
        np.testing.assert_allclose(nodes_optimal(1).points, [0.0, 0.5, 1.0], atol=1e-12)

    def test_optimal_is_sqrt_of_reference(self):
        mp = remez_sqrt(6, 0.25)
        np.testing.assert_allclose(nodes_optimal(6, 0.5).points, np.sqrt(mp.extremals), rtol=1e-15)

    def test_equidistant(self):
        np.testing.assert_allclose(nodes_equidistant(2).points, [0, 1 / 3, 2 / 3, 1])
        np.testing.assert_allclose(nodes_equidistant(1, 0.5).points, [0.5, 0.75, 1.0])

    def test_chebyshev(self):
        np.testing.assert_allclose(nodes_chebyshev(2).points, [0, 0.25, 0.75, 1], atol=1e-15)
        assert nodes_chebyshev(3).points[2] == 0.5

    @pytest.mark.parametrize("scheme", list(Scheme))
    @pytest.mark.parametrize("n", [1, 4, 15])
    def test_make_nodes_shape(self, scheme, n):
        ns = make_nodes(scheme, n)
        assert len(ns) == n + 2 and ns.points[0] == 0.0 and ns.points[-1] == 1.0
        assert ns.scheme is scheme

    def test_chebyshev_rejects_lo(self):
        with pytest.raises(ValueError):
            make_nodes("chebyshev", 3, 0.2)

    @pytest.mark.parametrize(
        "pts",
        [[0.0, 0.5], [0.0, 0.5, 0.5, 1.0], [-0.1, 0.3, 1.0], [0.0, 0.4, 0.9]],
    )
    def test_nodeset_validation(self, pts):
        with pytest.raises(ValueError):
            NodeSet(len(pts) - 2 if len(pts) != 2 else 1, Scheme.OPTIMAL, np.array(pts))
