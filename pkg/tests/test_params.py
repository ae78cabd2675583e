"""Parameter rows, derived constants, convergence classes, shifts."""

import math

import pytest

from foxwright import (
    Convergence,
    ParameterSet,
    classify_convergence,
    correction_coeffs,
    derive_constants,
    gamma_ratio,
    in_domain,
    shift_parameters,
)
from foxwright.catalog import DOUBLE_POLE, EXP_COLLAPSE, IDENTITY, TWIN_QUARTER
from foxwright.errors import ParameterError
from foxwright.params import gamma_ratio_log_signed


class TestDerivedConstants:
    def test_exp_collapse(self):
        c = derive_constants(EXP_COLLAPSE)
        assert c.delta == pytest.approx(0.0, abs=1e-15)
        assert c.rho == pytest.approx(2.0, rel=1e-14)
        assert c.mu == pytest.approx(0.0, abs=1e-14)
        assert c.eta == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-14)
        assert c.gamma_abscissa == pytest.approx(-1.0, abs=1e-14)
        assert c.m_order == 0

    def test_twin_quarter(self):
        c = derive_constants(TWIN_QUARTER)
        assert c.rho == pytest.approx(2.0, rel=1e-14)
        assert c.mu == pytest.approx(-1.0, abs=1e-13)
        assert c.eta == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)), rel=1e-13)
        assert c.m_order == 1

    def test_double_pole(self):
        c = derive_constants(DOUBLE_POLE)
        assert c.rho == pytest.approx(1.0, rel=1e-14)
        assert c.mu == pytest.approx(0.0, abs=1e-14)
        assert c.eta == pytest.approx(1.0, rel=1e-13)
        assert c.m_order == 0

    def test_identity(self):
        c = derive_constants(IDENTITY)
        assert c.rho == pytest.approx(1.0)
        assert c.mu == pytest.approx(0.0, abs=1e-15)
        assert c.eta == pytest.approx(1.0, rel=1e-14)
        assert c.m_order == 0

    def test_non_integer_mu_has_no_order(self):
        # beta-density style set: mu = beta - alpha = 1.6 > 0, not -m
        ps = ParameterSet([(0.7, 1.0)], [(2.3, 1.0)])
        c = derive_constants(ps)
        assert c.mu == pytest.approx(1.6, rel=1e-14)
        assert c.m_order is None


class TestCorrectionCoeffs:
    def test_twin_quarter_closed_forms(self):
        l = correction_coeffs(TWIN_QUARTER, 2)
        assert l[0] == pytest.approx(1.0, rel=1e-14)
        assert l[1] == pytest.approx(1.0 / 8.0, rel=1e-12)
        assert l[2] == pytest.approx(9.0 / 128.0, rel=1e-12)

    def test_leading_coefficient_always_one(self):
        for ps in (EXP_COLLAPSE, TWIN_QUARTER, DOUBLE_POLE, IDENTITY):
            assert correction_coeffs(ps, 0)[0] == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("mu1", [0.2, 0.35, 0.5, 0.65, 0.8])
    def test_four_param_closed_form(self, mu1):
        # two lower rows (a, mu1), (b, nu1) and one upper (1, 1), with
        # mu1 + nu1 = 1 and a + b = 1/2 so that mu = -1:
        # l_1 = 1/12 - (6a^2-6a+1)/(12 mu1) - (6b^2-6b+1)/(12 nu1)
        nu1 = 1.0 - mu1
        a, b = 0.2, 0.3
        ps = ParameterSet([(1.0, 1.0)], [(a, mu1), (b, nu1)])
        want = (
            1.0 / 12.0
            - (6.0 * a * a - 6.0 * a + 1.0) / (12.0 * mu1)
            - (6.0 * b * b - 6.0 * b + 1.0) / (12.0 * nu1)
        )
        assert correction_coeffs(ps, 1)[1] == pytest.approx(want, rel=1e-12)


class TestValidation:
    def test_nonpositive_scale_rejected(self):
        with pytest.raises(ParameterError):
            ParameterSet([(1.0, 0.0)], [(1.0, 1.0)])
        with pytest.raises(ParameterError):
            ParameterSet([(1.0, 1.0)], [(1.0, -0.5)])

    def test_upper_pole_on_series_index_rejected(self):
        # gamma(-1 + k) has poles at k = 0 and k = 1
        with pytest.raises(ParameterError):
            ParameterSet([(-1.0, 1.0)], [(1.0, 1.0)])

    def test_empty_both_rows_rejected(self):
        with pytest.raises(ParameterError):
            ParameterSet([], [])

    def test_non_finite_rejected(self):
        with pytest.raises(ParameterError):
            ParameterSet([(math.inf, 1.0)], [(1.0, 1.0)])


class TestSerialization:
    def test_json_roundtrip(self):
        for ps in (EXP_COLLAPSE, TWIN_QUARTER, DOUBLE_POLE):
            assert ParameterSet.from_json(ps.to_json()) == ps

    def test_hash_stable_and_distinct(self):
        assert EXP_COLLAPSE.hash_key() == EXP_COLLAPSE.hash_key()
        assert len(EXP_COLLAPSE.hash_key()) == 16
        hashes = {ps.hash_key() for ps in (EXP_COLLAPSE, TWIN_QUARTER, DOUBLE_POLE, IDENTITY)}
        assert len(hashes) == 4

    def test_malformed_json_raises(self):
        with pytest.raises(ParameterError):
            ParameterSet.from_json("{not json")
        with pytest.raises(ParameterError):
            ParameterSet.from_json('{"upper": [[1, 1]]}')


class TestConvergence:
    def test_balanced_sets_entire(self):
        for ps in (EXP_COLLAPSE, TWIN_QUARTER, DOUBLE_POLE, IDENTITY):
            assert classify_convergence(ps) is Convergence.ENTIRE_PLANE
            assert in_domain(ps, 100.0)

    def test_disk_case(self):
        # lifting by an extra (1,1) upper row moves the balance to -1
        lifted = ParameterSet([(1.0, 1.0), *DOUBLE_POLE.upper], list(DOUBLE_POLE.lower))
        cls = classify_convergence(lifted)
        assert cls in (Convergence.DISK, Convergence.BOUNDARY_SUMMABLE)
        c = derive_constants(lifted)
        assert c.conv_radius == pytest.approx(1.0, rel=1e-13)
        assert in_domain(lifted, 0.5)
        assert not in_domain(lifted, 1.5)

    def test_divergent_case(self):
        ps = ParameterSet([(1.0, 2.0)], [(1.0, 0.5)])
        assert classify_convergence(ps) is Convergence.DIVERGENT
        assert not in_domain(ps, 0.1)
        assert in_domain(ps, 0.0)


class TestShift:
    @pytest.mark.parametrize("delta", [-0.5, 0.25, 1.0, 2.0])
    def test_shift_laws(self, delta):
        base = derive_constants(DOUBLE_POLE)
        shifted = shift_parameters(DOUBLE_POLE, delta)
        cs = derive_constants(shifted)
        # balanced shift: balance and rho invariant, mu invariant,
        # eta picks up rho^delta
        assert cs.delta == pytest.approx(base.delta, abs=1e-14)
        assert cs.rho == pytest.approx(base.rho, rel=1e-13)
        assert cs.mu == pytest.approx(base.mu, abs=1e-12)
        assert cs.eta == pytest.approx(base.eta * base.rho**delta, rel=1e-12)

    def test_shift_eta_law_nontrivial_rho(self):
        base = derive_constants(EXP_COLLAPSE)
        cs = derive_constants(shift_parameters(EXP_COLLAPSE, 1.0))
        assert cs.eta == pytest.approx(base.eta * 2.0, rel=1e-13)

    def test_shift_rows(self):
        shifted = shift_parameters(EXP_COLLAPSE, 0.5)
        assert shifted.upper == ((1.5, 1.0),)
        assert shifted.lower == ((0.75, 0.5), (1.25, 0.5))


class TestGammaRatio:
    @pytest.mark.parametrize("k", [0.0, 0.5, 1.0, 2.5, 5.0])
    def test_matches_direct_lgamma(self, k):
        ps = DOUBLE_POLE
        direct = math.exp(
            sum(math.lgamma(a + k * s) for a, s in ps.upper)
            - sum(math.lgamma(b + k * s) for b, s in ps.lower)
        )
        assert gamma_ratio(ps, k) == pytest.approx(direct, rel=1e-13)

    def test_known_value_at_zero(self):
        # double-pole: gamma(1/2) gamma(3/2) / gamma(1)^2 = pi/2
        assert gamma_ratio(DOUBLE_POLE, 0.0) == pytest.approx(math.pi / 2.0, rel=1e-14)

    def test_signed_variant_handles_negative_gamma(self):
        # one upper pair with negative argument: gamma(-0.5) < 0
        ps = ParameterSet([(-0.5, 1.0)], [(1.0, 1.0)])
        log_mag, sign = gamma_ratio_log_signed(ps, 0.0)
        assert sign == -1.0
        assert math.exp(log_mag) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-13)
