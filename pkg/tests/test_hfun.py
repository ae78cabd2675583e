"""The representing density: residue route, contour route, moments, atoms."""

import math

import numpy as np
import pytest

from foxwright import (
    HfunEvalConfig,
    HfunMethod,
    ParameterSet,
    derive_constants,
    gamma_ratio,
    get_evaluator,
    hfun_nonneg_scan,
    moment_identity_check,
    shift_parameters,
)
from foxwright.catalog import DOUBLE_POLE, EXP_COLLAPSE, IDENTITY, TWIN_QUARTER
from foxwright.errors import (
    ConstraintError,
    OutsideDomainError,
    PoleCollisionError,
)
from foxwright.hfun import MeasureEvaluator

# an upper/lower pair one step apart has the classical beta density
# t^alpha (1-t)^(beta-alpha-1) / gamma(beta-alpha) as its measure
BETA_LIKE = ParameterSet([(0.7, 1.0)], [(2.3, 1.0)])


def beta_density(t, alpha=0.7, beta=2.3):
    return t**alpha * (1.0 - t) ** (beta - alpha - 1.0) / math.gamma(beta - alpha)


class TestRouteAgreement:
    @pytest.mark.parametrize("params", [TWIN_QUARTER, DOUBLE_POLE, BETA_LIKE])
    def test_residue_vs_contour(self, params):
        ev = get_evaluator(params)
        ts = np.array([0.1, 0.5, 0.8]) * ev.rho
        res = ev.density(ts, method=HfunMethod.RESIDUE_SERIES)
        con = ev.density(ts, method=HfunMethod.REGULARIZED_CONTOUR)
        assert np.max(np.abs(res - con)) < 1e-7

    def test_degenerate_set_both_routes_zero(self):
        ev = get_evaluator(EXP_COLLAPSE)
        assert ev.degenerate
        ts = np.array([0.2, 1.0, 1.8])
        assert np.all(ev.density(ts, method=HfunMethod.RESIDUE_SERIES) == 0.0)
        assert np.all(ev.density(ts, method=HfunMethod.REGULARIZED_CONTOUR) == 0.0)


class TestKnownDensities:
    @pytest.mark.parametrize("t", [0.05, 0.2, 0.5, 0.8, 0.95])
    def test_beta_density_oracle(self, t):
        ev = get_evaluator(BETA_LIKE)
        got = float(ev.density(np.array([t]))[0])
        assert got == pytest.approx(beta_density(t), rel=2e-7)

    def test_double_pole_small_t_slope(self):
        # H(t) ~ (2/pi) t as t -> 0 for the double-pole set
        ev = get_evaluator(DOUBLE_POLE)
        ts = np.array([1e-4, 3e-4, 1e-3, 3e-3, 1e-2])
        hs = ev.density(ts)
        assert np.max(np.abs(hs / ts - 2.0 / math.pi)) < 0.02

    def test_log_log_slope_matches_gamma_abscissa(self):
        # the small-t exponent of H equals min(alpha_i / A_i)
        ev = get_evaluator(DOUBLE_POLE)
        ts = np.logspace(-4, -2, 9)
        hs = ev.density(ts)
        slope = np.polyfit(np.log(ts), np.log(hs), 1)[0]
        want = min(a / s for a, s in DOUBLE_POLE.upper)
        assert slope == pytest.approx(want, rel=0.05)


class TestMomentIdentity:
    @pytest.mark.parametrize("params", [EXP_COLLAPSE, TWIN_QUARTER, DOUBLE_POLE, IDENTITY])
    def test_integer_and_half_integer_orders(self, params):
        ks = [float(k) for k in range(9)] + [0.5, 1.5, 2.5]
        report = moment_identity_check(params, ks)
        assert report.max_rel_err < 1e-6
        assert report.ok()

    def test_beta_like_moments_exact(self):
        ev = get_evaluator(BETA_LIKE)
        for k in (0.0, 0.5, 1.0, 2.0, 3.5):
            want = gamma_ratio(BETA_LIKE, k)  # = gamma(0.7+k)/gamma(2.3+k)
            assert ev.moment(k) == pytest.approx(want, rel=1e-9)
            assert ev.atom_mellin(k) == 0.0  # mu > 0: no endpoint atom

    def test_atom_mellin_twin_quarter(self):
        # m = 1 atom transform: eta rho^s (s + l1) with l1 = 1/8
        ev = get_evaluator(TWIN_QUARTER)
        c = derive_constants(TWIN_QUARTER)
        for s in (0.0, 1.0, 2.5):
            want = c.eta * c.rho**s * (s + 0.125)
            assert ev.atom_mellin(s) == pytest.approx(want, rel=1e-12)

    def test_collapse_set_is_pure_atom(self):
        ev = get_evaluator(EXP_COLLAPSE)
        assert ev.measure_integral(lambda t: 1.0 / t) == 0.0
        c = derive_constants(EXP_COLLAPSE)
        for k in (0.0, 1.0, 2.0):
            assert gamma_ratio(EXP_COLLAPSE, k) == pytest.approx(
                c.eta * c.rho**k, rel=1e-12
            )


class TestShiftLaw:
    @pytest.mark.parametrize("delta", [0.5, 1.0, -0.25])
    def test_density_picks_up_power(self, delta):
        base = get_evaluator(DOUBLE_POLE)
        shifted = get_evaluator(shift_parameters(DOUBLE_POLE, delta))
        ts = np.array([0.1, 0.4, 0.7, 0.9])
        got = shifted.density(ts)
        want = ts**delta * base.density(ts)
        assert np.max(np.abs(got - want) / (1.0 + np.abs(want))) < 1e-10


class TestNonnegScan:
    @pytest.mark.parametrize("params", [EXP_COLLAPSE, TWIN_QUARTER, DOUBLE_POLE, BETA_LIKE])
    def test_catalog_densities_nonnegative(self, params):
        report = hfun_nonneg_scan(params)
        assert report.nonneg
        assert report.min_value >= -report.tol_abs


class TestGuards:
    def test_unbalanced_set_rejected(self):
        with pytest.raises(ConstraintError):
            MeasureEvaluator(ParameterSet([(1.0, 1.0)], [(1.0, 2.0)]))

    def test_negative_non_integer_mu_rejected(self):
        # mu = -0.5 is neither a polynomial order nor a positive density case
        with pytest.raises(ConstraintError):
            MeasureEvaluator(ParameterSet([(1.5, 1.0)], [(1.0, 1.0)]))

    def test_density_outside_support(self):
        ev = get_evaluator(DOUBLE_POLE)
        with pytest.raises(OutsideDomainError):
            ev.density(np.array([1.5]))
        with pytest.raises(OutsideDomainError):
            ev.density(np.array([-0.1]))

    def test_pole_collision_detected(self):
        # two upper rows 5e-7 apart put residue clusters closer than the
        # resolvable gap but farther than the merge threshold
        params = ParameterSet(
            [(1.0, 1.0), (1.0 + 5e-7, 1.0)], [(1.5, 1.0), (1.5, 1.0)]
        )
        ev = get_evaluator(params)
        with pytest.raises(PoleCollisionError):
            ev.density(np.array([0.3]), method=HfunMethod.RESIDUE_SERIES)

    def test_config_validation(self):
        from foxwright.errors import ParameterError

        with pytest.raises(ParameterError):
            HfunEvalConfig(tol=0.0)
        with pytest.raises(ParameterError):
            HfunEvalConfig(contour_cutoff=-1.0)
        with pytest.raises(ParameterError):
            HfunEvalConfig(max_residue_terms=8)

    def test_explicit_cutoff_sets_panel_count(self):
        ev = MeasureEvaluator(DOUBLE_POLE, HfunEvalConfig(contour_cutoff=12.0))
        assert len(ev._tau) == 12 * 16  # 16 Gauss-Legendre points per unit panel


class TestEvaluatorCache:
    def test_same_params_same_object(self):
        assert get_evaluator(DOUBLE_POLE) is get_evaluator(DOUBLE_POLE)

    def test_custom_config_not_cached_into_default(self):
        custom = get_evaluator(DOUBLE_POLE, HfunEvalConfig(contour_cutoff=8.0))
        default = get_evaluator(DOUBLE_POLE)
        assert custom is not default
