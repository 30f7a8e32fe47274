import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logcalc import catalog
from logcalc.parser import ParseError, parse_expr, parse_exponent, parse_scalar
from logcalc.printer import exponent_str, scalar_str, series_str
from logcalc.scalars import ExactScalar, Exponent, LatticeViolation, imaginary_unit, pi_scalar, root_of_unity
from logcalc.series import LogSeries, Monomial


class TestParseExamples:
    def test_single_term(self):
        f = parse_expr("x^(1/2)*lg(x)^2")
        assert f == LogSeries.monomial(Monomial.var("x", Fraction(1, 2), 2))

    def test_two_terms_canonical_order(self):
        # sorted by (variable, exponent, log power): the lg term has x-exponent 0
        f = parse_expr("2*x + lg(x)")
        assert series_str(f) == "lg(x) + 2*x"
        assert parse_expr(series_str(f)) == f

    def test_lattice_violation(self):
        with pytest.raises(LatticeViolation):
            parse_expr("x^(1/7)")

    def test_syntax_error_carries_position(self):
        with pytest.raises(ParseError) as err:
            parse_expr("x^")
        assert "column" in str(err.value)

    def test_scalar_literals(self):
        assert parse_scalar("3/4") == ExactScalar.from_rational(Fraction(3, 4))
        assert parse_scalar("i") == imaginary_unit()
        assert parse_scalar("Pi^2") == pi_scalar() * pi_scalar()
        assert parse_scalar("e(1/2)") == imaginary_unit()
        assert parse_scalar("1/2+1/3*i") == ExactScalar.from_rational(Fraction(1, 2)) + imaginary_unit() * Fraction(1, 3)

    def test_gaussian_exponent(self):
        e = parse_exponent("1/2-2/3*i")
        assert e == Exponent(Fraction(1, 2), Fraction(-2, 3))
        assert parse_exponent(exponent_str(e)) == e

    def test_division_by_monomial(self):
        assert parse_expr("x/2") == LogSeries.variable("x").scale(Fraction(1, 2))
        assert parse_expr("1/x") == LogSeries.variable("x", -1)

    def test_division_by_sum_rejected(self):
        with pytest.raises(ParseError):
            parse_expr("1/(x+1)")

    def test_negative_monomial_power(self):
        assert parse_expr("(x*y)^-2") == LogSeries.monomial(
            Monomial.var("x", -2) * Monomial.var("y", -2)
        )


class TestRoundTrip:
    def test_spec_format_example(self):
        text = "(1/2)*x^(-1/2) + 3*x^(1/2)*lg(x)^2"
        f = parse_expr(text)
        assert series_str(f) == text

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=150, deadline=None)
    def test_parse_after_print_random_series(self, seed):
        rng = random.Random(seed)
        f = catalog.random_log_series(rng, max_terms=5)
        assert parse_expr(series_str(f)).equal_terms(f)

    def test_print_is_canonical_fixed_point(self):
        texts = [
            "x + lg(y)*y^(-1/3) - (5/7)*z^(2+1/2*i)",
            "Pi*x - e(5/6)*lg(x)^3",
            "(1 + Pi)*x",
        ]
        for text in texts:
            once = series_str(parse_expr(text))
            assert series_str(parse_expr(once)) == once


class TestScalarPrinting:
    def test_zero(self):
        assert scalar_str(ExactScalar.zero()) == "0"

    def test_mixed_pi_terms_sorted(self):
        s = pi_scalar() ** 2 + root_of_unity(Fraction(1, 6)) - pi_scalar(3)
        text = scalar_str(s)
        assert parse_scalar(text) == s

    def test_pure_root(self):
        assert scalar_str(root_of_unity(Fraction(1, 6))) == "e(1/6)"
