"""Formal calculus with a log variable, step by step.

lg(x) is an independent formal variable tied to x only through the
derivative rule d/dx [x^n lg(x)^m] = n x^(n-1) lg(x)^m + m x^(n-1) lg(x)^(m-1).
Everything below is computed exactly (rational / cyclotomic coefficients).

Run:  python demos/01_log_calculus.py
"""

from fractions import Fraction

from logcalc import (
    Exponent,
    LogSeries,
    Monomial,
    kth_derivative_closed_form,
    parse_expr,
    series_str,
    subst_x_exp_y,
    subst_x_plus_y,
)

print("== derivatives ==")
f = parse_expr("x^(1/2)*lg(x)^3")
print("f           =", series_str(f))
print("df/dx       =", series_str(f.d_dx("x")))
print("d2f/dx2     =", series_str(f.d_dx("x").d_dx("x")))

print()
print("== closed-form k-th derivative vs iterated derivative ==")
n, m, k = Exponent(Fraction(-2, 3)), 4, 5
closed = kth_derivative_closed_form(n, m, k)
iterated = LogSeries.monomial(Monomial.var("x", n, m))
for _ in range(k):
    iterated = iterated.d_dx("x")
print("closed form :", series_str(closed))
print("agrees with five applications of d/dx:", closed == iterated)

print()
print("== the formal Taylor theorem, two independent routes ==")
g = parse_expr("lg(x)^2 + x^(-1/2)")
order = 5
route_a = g.exp_diffop("y", LogSeries.one(), "x", order)  # e^(y d/dx) g
route_b = subst_x_plus_y(g, "x", "y", order)  # binomial + log-series expansion
print("e^(y d/dx) g =", series_str(route_a))
print("routes agree exactly at order", order, ":", route_a == route_b)

print()
print("== the scaling theorem: e^(y x d/dx) g = g(x e^y) ==")
route_a = g.exp_diffop("y", LogSeries.variable("x"), "x", order)
route_b = subst_x_exp_y(g, "x", "y", order)
print("routes agree exactly at order", order, ":", route_a == route_b)

print()
print("== a documented failure: y cannot be replaced by y*x ==")
lg = LogSeries.log_variable("x")
scaled = lg.exp_diffop("y", LogSeries.variable("x"), "x", 4)  # = lg(x) + y exactly
shift = subst_x_plus_y(lg, "x", "y", 4)  # has the alternating (y/x)^i tail
print("e^(y x d/dx) lg x =", series_str(scaled))
print("lg(x+y)           =", series_str(shift))
print("equal?", scaled == shift, " (they must differ)")
