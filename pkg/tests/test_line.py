"""Closed-form line solver: thresholds, per-channel values, and invariants."""

import math

import numpy as np
import pytest

from rainbowdp import (
    Epsilon,
    InvalidSimplexError,
    LineBoundary,
    SumNotOneError,
    Thresholds,
    UNBOUNDED,
    b_star,
    g_star,
    line_graph,
    line_values,
    r_star,
    rank_view,
    solve_line,
    solve_line_binary,
    tau_b,
    tau_r,
    thresholds,
    verify_dp,
)
from rainbowdp.line import (
    _blue_growth,
    _blue_saturated,
    _green_decay,
    _green_high,
    _red_bridge,
    _red_decay,
    _red_growth,
)

EPS_REF = Epsilon(0.1823)
# Reference boundaries A and B: same masses, top two ranks swapped.
BOUNDARY_A = (0.0545, 0.1636, 0.7818)
BOUNDARY_B = (0.1636, 0.0545, 0.7818)


class TestThresholds:
    def test_reference_a(self):
        assert tau_b(BOUNDARY_A[0], EPS_REF) == 12
        assert tau_r(BOUNDARY_A[0], BOUNDARY_A[1], EPS_REF) == 5

    def test_reference_b(self):
        assert tau_b(BOUNDARY_B[0], EPS_REF) == 6
        assert tau_r(BOUNDARY_B[0], BOUNDARY_B[1], EPS_REF) == 5

    def test_above_saturation_level(self):
        # 0.5 * (e**ln2 + 1) = 1.5 > 1, so the braced expression is negative.
        assert tau_b(0.5, Epsilon(math.log(2))) == 0

    def test_zero_mass_unbounded(self):
        assert tau_b(0.0, Epsilon(0.3)) == UNBOUNDED
        assert tau_r(0.0, 0.0, Epsilon(0.3)) == UNBOUNDED

    def test_full_mass(self):
        assert tau_r(0.6, 0.4, EPS_REF) == 0

    def test_eps_zero(self):
        assert tau_b(0.3, Epsilon(0.0)) == UNBOUNDED
        assert tau_b(0.7, Epsilon(0.0)) == 0

    def test_pair_never_below_top(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            b0, r0, _ = rng.dirichlet((1.0, 1.0, 1.0))
            eps = Epsilon(float(rng.uniform(0.05, 2.0)))
            tb, tr = tau_b(b0, eps), tau_r(b0, r0, eps)
            if tb != UNBOUNDED and tr != UNBOUNDED:
                assert tr <= tb

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(ValueError):
            Thresholds(tau_b=3, tau_r=5, t_bar=0.4)


def _lb(boundary=BOUNDARY_A, eps=EPS_REF, n=40):
    return LineBoundary(*boundary, eps, n)


class TestLineBoundary:
    def test_display_precision_accepted(self):
        lb = _lb()
        assert lb.b0 == 0.0545

    def test_gross_sum_error_rejected(self):
        with pytest.raises(SumNotOneError):
            LineBoundary(0.5, 0.6, 0.1, EPS_REF, 3)

    def test_pair_mass_above_one_rejected(self):
        with pytest.raises(InvalidSimplexError):
            LineBoundary(0.6, 0.4004, 0.0, EPS_REF, 3)

    def test_bad_length(self):
        with pytest.raises(ValueError):
            LineBoundary(0.2, 0.3, 0.5, EPS_REF, 0)


class TestBlueChannel:
    def test_growth_value(self):
        lb = _lb()
        th = thresholds(lb)
        assert b_star(1, lb, th) == pytest.approx(0.0545 * math.exp(0.1823), abs=1e-15)

    def test_branches_agree_at_threshold(self):
        lb = _lb()
        th = thresholds(lb)
        assert _blue_growth(th.tau_b, lb) == pytest.approx(
            _blue_saturated(th.tau_b, lb, th.tau_b), abs=1e-12
        )

    def test_full_mass_stays_one(self):
        lb = LineBoundary(1.0, 0.0, 0.0, EPS_REF, 10)
        th = thresholds(lb)
        assert th.tau_b == 0
        assert all(b_star(i, lb, th) == pytest.approx(1.0, abs=1e-12) for i in range(10))

    def test_binary_saturated_closed_form(self):
        # tau_b = 0 here, so index i sits i steps into the damped regime.
        lb = LineBoundary(0.5, 0.5, 0.0, Epsilon(math.log(2)), 12)
        th = thresholds(lb)
        assert th.tau_b == 0
        for i in range(12):
            assert b_star(i, lb, th) == pytest.approx(1.0 - 0.5 * 2.0**-i, abs=1e-12)


class TestRedChannel:
    def test_growth_value(self):
        lb = _lb()
        th = thresholds(lb)
        assert r_star(5, lb, th) == pytest.approx(0.1636 * math.exp(5 * 0.1823), abs=1e-14)

    def test_branches_agree_at_thresholds(self):
        lb = _lb()
        th = thresholds(lb)
        assert _red_growth(th.tau_r, lb) == pytest.approx(
            _red_bridge(th.tau_r, lb, th.tau_r), abs=1e-12
        )
        assert _red_bridge(th.tau_b, lb, th.tau_r) == pytest.approx(
            _red_decay(th.tau_b, lb, th.tau_r, th.tau_b), abs=1e-12
        )

    def test_binary_bridge_reduces(self):
        # With the top two ranks exhausting the mass, the bridge regime
        # collapses to the complement of the growing top channel.
        b0 = 0.23
        lb = LineBoundary(b0, 1.0 - b0, 0.0, Epsilon(0.4), 10)
        th = thresholds(lb)
        assert th.tau_r == 0
        for i in range(1, int(th.tau_b) + 1):
            assert _red_bridge(i, lb, th.tau_r) == pytest.approx(
                1.0 - math.exp(i * 0.4) * b0, abs=1e-12
            )


class TestGreenChannel:
    def test_boundary_value(self):
        lb = _lb((0.2, 0.3, 0.5))
        th = thresholds(lb)
        assert g_star(0, lb, th) == pytest.approx(0.5, abs=1e-15)

    def test_branches_agree_at_threshold(self):
        lb = _lb()
        th = thresholds(lb)
        assert _green_high(th.tau_r, lb) == pytest.approx(
            _green_decay(th.tau_r, lb, th.tau_r), abs=1e-12
        )

    def test_sum_identity(self):
        sol = line_values(_lb())
        total = sol.b + sol.r + sol.g
        assert np.max(np.abs(total - 1.0)) <= 1e-12


class TestLineValues:
    def test_range_and_monotonicity(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            vec = rng.dirichlet((1.0, 1.0, 1.0))
            eps = Epsilon(float(rng.uniform(0.05, 2.0)))
            sol = line_values(LineBoundary(*map(float, vec), eps, 15))
            th = sol.thresholds
            for arr in (sol.b, sol.r, sol.g):
                assert np.all(arr >= 0.0) and np.all(arr <= 1.0)
            assert np.all(np.diff(sol.b) >= -1e-12)
            for i in range(14):
                if i > th.tau_r:
                    assert sol.g[i + 1] <= sol.g[i] + 1e-12
                if i > th.tau_b:
                    assert sol.r[i + 1] <= sol.r[i] + 1e-12

    def test_growth_regime_below_saturation_level(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            vec = rng.dirichlet((1.0, 1.0, 1.0))
            eps = Epsilon(float(rng.uniform(0.05, 2.0)))
            lb = LineBoundary(*map(float, vec), eps, 15)
            sol = line_values(lb)
            th = sol.thresholds
            for i in range(15):
                if i < th.tau_b:
                    assert sol.b[i] <= th.t_bar + 1e-12
                if i < th.tau_r:
                    assert sol.b[i] + sol.r[i] <= th.t_bar + 1e-12

    def test_eps_zero_constant(self):
        sol = line_values(LineBoundary(0.2, 0.3, 0.5, Epsilon(0.0), 8))
        assert np.allclose(sol.b, 0.2, atol=1e-15)
        assert np.allclose(sol.r, 0.3, atol=1e-15)
        assert np.allclose(sol.g, 0.5, atol=1e-15)

    def test_zero_boundary_mass_channels(self):
        sol = line_values(LineBoundary(0.0, 0.0, 1.0, Epsilon(0.5), 8))
        assert np.all(sol.b == 0.0)
        assert np.all(sol.r == 0.0)
        assert np.all(sol.g == 1.0)


class TestSolveLine:
    def test_single_index(self):
        m = solve_line(LineBoundary(0.2, 0.3, 0.5, EPS_REF, 1))
        assert m["0"].p == (0.2, 0.3, 0.5)

    def test_is_private_on_its_line(self):
        m = solve_line(_lb())
        report = verify_dp(m, line_graph(40), EPS_REF)
        assert report.ok

    def test_rank_view_matches_channels(self):
        from rainbowdp import Palette, Rainbow

        palette = Palette(("blue", "red", "green"))
        rainbow = Rainbow.from_colors(palette, ("green", "blue", "red"))
        lb = _lb((0.2, 0.3, 0.5))
        m = solve_line(lb, palette, rainbow)
        sol = line_values(lb)
        for i in range(lb.n):
            rv = rank_view(m[str(i)], rainbow)
            assert rv == pytest.approx((sol.b[i], sol.r[i], sol.g[i]), abs=0)


class TestSolveLineBinary:
    def test_matches_ternary_embedding(self):
        eps = Epsilon(0.31)
        m2 = solve_line_binary(0.2, eps, 12)
        sol = line_values(LineBoundary(0.2, 0.8, 0.0, eps, 12))
        for i in range(12):
            assert m2[str(i)].p[0] == sol.b[i]
            assert m2[str(i)].p[1] == sol.r[i]

    def test_complement(self):
        m = solve_line_binary(0.37, Epsilon(0.2), 10)
        for i in range(10):
            b, r = m[str(i)].p
            assert b + r == pytest.approx(1.0, abs=1e-12)
