import random
from fractions import Fraction

import pytest

from logcalc import catalog
from logcalc.scalars import ExactScalar, Exponent, LatticeViolation, pi_scalar
from logcalc.series import LogSeries, Monomial
from logcalc.substitution import (
    mobius_arg_powers,
    series_exp,
    series_log1p,
    subst_scaled_exp,
    subst_x_exp_y,
    subst_x_inverse,
    subst_x_plus_y,
    subst_xy,
)


def mono(e, k=0, v="x"):
    return Monomial.var(v, e, k)


def random_family(seed, count=30):
    rng = random.Random(seed)
    return [catalog.random_log_series(rng) for _ in range(count)]


class TestShiftSubstitution:
    def test_log_shift_expansion(self):
        out = subst_x_plus_y(LogSeries.log_variable("x"), "x", "y", 3)
        expect = (
            LogSeries.log_variable("x")
            + LogSeries.monomial(mono(-1) * Monomial.var("y", 1))
            + LogSeries.monomial(mono(-2) * Monomial.var("y", 2), Fraction(-1, 2))
            + LogSeries.monomial(mono(-3) * Monomial.var("y", 3), Fraction(1, 3))
        )
        assert out.equal_terms(expect.with_trunc({"y": 3}))

    def test_geometric_binomial(self):
        out = subst_x_plus_y(LogSeries.variable("x", -1), "x", "y", 2)
        expect = (
            LogSeries.variable("x", -1)
            - LogSeries.monomial(mono(-2) * Monomial.var("y", 1))
            + LogSeries.monomial(mono(-3) * Monomial.var("y", 2))
        )
        assert out.equal_terms(expect.with_trunc({"y": 2}))

    def test_squared_log_against_derivative_oracle(self):
        f = LogSeries.monomial(Monomial.log("x", 2))
        assert subst_x_plus_y(f, "x", "y", 2) == f.exp_diffop("y", LogSeries.one(), "x", 2)

    def test_taylor_theorem_family(self):
        for f in random_family(17):
            for order in (3, 8):
                assert f.exp_diffop("y", LogSeries.one(), "x", order) == subst_x_plus_y(f, "x", "y", order)

    def test_yx_replacement_fails(self):
        # replacing the expansion variable by y*x breaks the shift theorem
        f = LogSeries.log_variable("x")
        scaled = f.exp_diffop("y", LogSeries.variable("x"), "x", 4)  # = lg x + y exactly
        shift = subst_x_plus_y(f, "x", "y", 4)
        assert scaled != shift


class TestScalingSubstitution:
    def test_half_power_exponential(self):
        out = subst_x_exp_y(LogSeries.variable("x", Fraction(1, 2)), "x", "y", 2)
        expect = (
            LogSeries.variable("x", Fraction(1, 2))
            + LogSeries.monomial(mono(Fraction(1, 2)) * Monomial.var("y", 1), Fraction(1, 2))
            + LogSeries.monomial(mono(Fraction(1, 2)) * Monomial.var("y", 2), Fraction(1, 8))
        )
        assert out.equal_terms(expect.with_trunc({"y": 2}))

    def test_log_picks_up_plain_shift(self):
        out = subst_x_exp_y(LogSeries.log_variable("x"), "x", "y", 5)
        expect = LogSeries.log_variable("x") + LogSeries.variable("y")
        assert out.equal_terms(expect.with_trunc({"y": 5}))

    def test_x_log_x(self):
        f = LogSeries.monomial(mono(1, 1))
        out = subst_x_exp_y(f, "x", "y", 1)
        oracle = f.exp_diffop("y", LogSeries.variable("x"), "x", 1)
        assert out == oracle

    def test_scaling_theorem_family(self):
        for f in random_family(23):
            for order in (3, 8):
                assert f.exp_diffop("y", LogSeries.variable("x"), "x", order) == subst_x_exp_y(f, "x", "y", order)


class TestProductSubstitution:
    def test_half_power_with_log(self):
        f = LogSeries.monomial(mono(Fraction(1, 2), 1))
        out = subst_xy(f, "x", "y")
        expect = LogSeries.monomial(
            Monomial.var("x", Fraction(1, 2), 1) * Monomial.var("y", Fraction(1, 2))
        ) + LogSeries.monomial(Monomial.var("x", Fraction(1, 2)) * Monomial.var("y", Fraction(1, 2), 1))
        assert out == expect

    def test_plain_power(self):
        assert subst_xy(LogSeries.variable("x", 3), "x", "y") == LogSeries.monomial(
            mono(3) * Monomial.var("y", 3)
        )

    def test_linearity(self):
        f = LogSeries.variable("x", 2) + LogSeries.log_variable("x")
        out = subst_xy(f, "x", "y")
        assert out == subst_xy(LogSeries.variable("x", 2), "x", "y") + subst_xy(
            LogSeries.log_variable("x"), "x", "y"
        )


class TestScaledExponentialSubstitution:
    def test_half_power_sign_flip(self):
        f = LogSeries.variable("x", Fraction(1, 2))
        assert subst_scaled_exp(f, "x", pi_scalar(2)) == f.scale(-1)

    def test_log_shift_rule(self):
        out = subst_scaled_exp(LogSeries.log_variable("x"), "x", pi_scalar(1))
        assert out == LogSeries.log_variable("x") + LogSeries.constant(pi_scalar())

    def test_depends_on_zeta_not_its_exponential(self):
        fx = LogSeries.variable("x")
        assert subst_scaled_exp(fx, "x", pi_scalar(2)) == subst_scaled_exp(fx, "x", pi_scalar(4)) == fx
        fxl = LogSeries.monomial(mono(1, 1))
        a = subst_scaled_exp(fxl, "x", pi_scalar(2))
        b = subst_scaled_exp(fxl, "x", pi_scalar(4))
        assert a != b
        assert a == fxl + LogSeries.variable("x").scale(pi_scalar(2))

    def test_identity_on_integral_log_free(self):
        f = LogSeries.variable("x", 3) - LogSeries.variable("x", -2).scale(5)
        for p in (1, 2, 3):
            assert subst_scaled_exp(f, "x", pi_scalar(2 * p)) == f

    def test_non_real_exponent_rejected(self):
        f = LogSeries.variable("x", Exponent(0, 1))
        with pytest.raises(LatticeViolation):
            subst_scaled_exp(f, "x", pi_scalar(1))

    def test_non_pi_monomial_rejected(self):
        f = LogSeries.variable("x")
        with pytest.raises(Exception):
            subst_scaled_exp(f, "x", pi_scalar(1) + ExactScalar.from_rational(1))

    def test_group_law(self):
        f = LogSeries.monomial(mono(Fraction(1, 3), 2))
        one_step = subst_scaled_exp(f, "x", pi_scalar(3))
        two_step = subst_scaled_exp(subst_scaled_exp(f, "x", pi_scalar(1)), "x", pi_scalar(2))
        assert one_step == two_step


class TestInverseSubstitution:
    def test_sign_convention(self):
        f = LogSeries.monomial(mono(2, 1))
        assert subst_x_inverse(f, "x") == LogSeries.monomial(mono(-2, 1), -1)

    def test_half_power(self):
        f = LogSeries.variable("x", Fraction(1, 2))
        assert subst_x_inverse(f, "x") == LogSeries.variable("x", Fraction(-1, 2))

    def test_involution(self):
        rng = random.Random(2)
        for _ in range(20):
            f = catalog.random_log_series(rng)
            assert subst_x_inverse(subst_x_inverse(f, "x"), "x") == f


class TestMobiusArgument:
    def test_geometric_series(self):
        power, _ = mobius_arg_powers(Exponent(1), "y", "x", 2)
        expect = (
            LogSeries.variable("x")
            + LogSeries.monomial(mono(2) * Monomial.var("y", 1))
            + LogSeries.monomial(mono(3) * Monomial.var("y", 2))
        )
        assert power.equal_terms(expect.with_trunc({"y": 2}))

    def test_log_part(self):
        _, logpart = mobius_arg_powers(Exponent(1), "y", "x", 2)
        expect = (
            LogSeries.log_variable("x")
            + LogSeries.monomial(mono(1) * Monomial.var("y", 1))
            + LogSeries.monomial(mono(2) * Monomial.var("y", 2), Fraction(1, 2))
        )
        assert logpart.equal_terms(expect.with_trunc({"y": 2}))

    def test_power_additivity(self):
        a, _ = mobius_arg_powers(Exponent(Fraction(1, 2)), "y", "x", 4)
        b, _ = mobius_arg_powers(Exponent(Fraction(1, 3)), "y", "x", 4)
        c, _ = mobius_arg_powers(Exponent(Fraction(5, 6)), "y", "x", 4)
        assert a * b == c


class TestHomomorphy:
    def test_substitutions_respect_products(self):
        rng = random.Random(31)
        for _ in range(15):
            f = catalog.random_log_series(rng, max_terms=2, max_log_power=2)
            g = catalog.random_log_series(rng, max_terms=2, max_log_power=2)
            n = 4
            assert subst_x_plus_y(f * g, "x", "y", n) == subst_x_plus_y(f, "x", "y", n) * subst_x_plus_y(g, "x", "y", n)
            assert subst_x_exp_y(f * g, "x", "y", n) == subst_x_exp_y(f, "x", "y", n) * subst_x_exp_y(g, "x", "y", n)
            assert subst_xy(f * g, "x", "y") == subst_xy(f, "x", "y") * subst_xy(g, "x", "y")
            assert subst_x_inverse(f * g, "x") == subst_x_inverse(f, "x") * subst_x_inverse(g, "x")


class TestFormalLogExp:
    @pytest.mark.parametrize("order", range(1, 13))
    def test_log_of_exp_is_identity(self, order):
        ex = series_exp(LogSeries.variable("x"), "x", order) - LogSeries.one()
        out = series_log1p(ex, "x", order)
        assert out.equal_terms(LogSeries.variable("x").with_trunc({"x": order}))

    def test_exp_of_log(self):
        lg = series_log1p(LogSeries.variable("x"), "x", 8)
        out = series_exp(lg, "x", 8)
        expect = (LogSeries.one() + LogSeries.variable("x")).with_trunc({"x": 8})
        assert out.equal_terms(expect)

    def test_valuation_guard(self):
        with pytest.raises(ValueError):
            series_exp(LogSeries.one(), "x", 3)
