"""Exact scalar arithmetic for the whole library.

Three layers, each exact:

* rationals (``fractions.Fraction``, re-exported as ``Rat``),
* the cyclotomic field Q(zeta_2L) in canonical reduced form, where L is the
  global lattice bound (default 12, so zeta_24 and its powers cover halves,
  thirds and quarters),
* Laurent polynomials in a transcendental symbol Pi (standing for the
  constant pi*i) with cyclotomic coefficients: :class:`ExactScalar`.

Exponents of formal variables live on the Gaussian lattice (1/L)Z[i] and are
modelled by :class:`Exponent`.

Division of an :class:`ExactScalar` is only defined by invertible monomials
c*Pi^k; everything else raises :class:`UnsupportedDivision`.  This is what
keeps equality decidable: Pi never cancels against anything.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Rat = Fraction

DEFAULT_LATTICE = 12
_lattice = DEFAULT_LATTICE


class LatticeViolation(ValueError):
    """A rational fell off the (1/L)Z lattice, or roots of unity left Q(zeta_2L)."""


class UnsupportedDivision(ZeroDivisionError):
    """Division by a scalar that is not an invertible Pi-monomial."""


def lattice_bound() -> int:
    """The global denominator bound L: exponents live in (1/L)Z[i]."""
    return _lattice


def set_lattice_bound(value: int) -> None:
    """Reconfigure L (clears nothing retroactively: values from a previous L
    refuse to mix with new ones)."""
    global _lattice
    if value < 1:
        raise ValueError("lattice bound must be a positive integer")
    _lattice = value


def _check_lattice(q: Fraction, what: str = "exponent") -> Fraction:
    if _lattice % q.denominator != 0:
        raise LatticeViolation(
            f"{what} {q} has denominator {q.denominator}, which does not divide L={_lattice}"
        )
    return q


# ---------------------------------------------------------------------------
# dense rational polynomials (coefficient lists, low degree first)

def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] -= c * bi
        _poly_trim(a)
        if not a:
            break
    return _poly_trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, list(cyclotomic_polynomial(d)))
            assert not r
    return tuple(p)


@lru_cache(maxsize=None)
def _reduction_cache(order: int) -> tuple[int, tuple[tuple[Fraction, ...], ...]]:
    """phi(order) and the reduced representatives of zeta^k for k < 2*order."""
    phi_poly = cyclotomic_polynomial(order)
    deg = len(phi_poly) - 1
    reps = []
    for k in range(2 * order):
        p = [Fraction(0)] * k + [Fraction(1)]
        _, r = _poly_divmod(p, list(phi_poly))
        r = r + [Fraction(0)] * (deg - len(r))
        reps.append(tuple(r))
    return deg, tuple(reps)


class CyclotomicElem:
    """An element of Q(zeta_order) in canonical reduced form.

    ``coeffs`` has fixed length phi(order) and represents a polynomial in
    zeta_order of degree < phi(order), reduced modulo the order-th cyclotomic
    polynomial.
    """

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Fraction]):
        deg, _ = _reduction_cache(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"need {deg} coefficients for Q(zeta_{order}), got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q: Fraction | int, order: int | None = None) -> CyclotomicElem:
        order = order if order is not None else 2 * _lattice
        deg, _ = _reduction_cache(order)
        return CyclotomicElem(order, (Fraction(q),) + (Fraction(0),) * (deg - 1))

    @staticmethod
    def zeta_power(k: int, order: int | None = None) -> CyclotomicElem:
        order = order if order is not None else 2 * _lattice
        _, reps = _reduction_cache(order)
        return CyclotomicElem(order, reps[k % order])

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def _require_same_field(self, other: CyclotomicElem) -> None:
        if self.order != other.order:
            raise ValueError(
                f"mixing elements of Q(zeta_{self.order}) and Q(zeta_{other.order})"
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: CyclotomicElem) -> CyclotomicElem:
        self._require_same_field(other)
        return CyclotomicElem(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CyclotomicElem) -> CyclotomicElem:
        self._require_same_field(other)
        return CyclotomicElem(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CyclotomicElem:
        return CyclotomicElem(self.order, tuple(-a for a in self.coeffs))

    def scale(self, q: Fraction | int) -> CyclotomicElem:
        q = Fraction(q)
        return CyclotomicElem(self.order, tuple(a * q for a in self.coeffs))

    def __mul__(self, other: CyclotomicElem) -> CyclotomicElem:
        self._require_same_field(other)
        # rational fast path: almost all coefficients in practice are rational
        if self.is_rational():
            return other.scale(self.coeffs[0])
        if other.is_rational():
            return self.scale(other.coeffs[0])
        deg, _ = _reduction_cache(self.order)
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        _, r = _poly_divmod(prod, list(cyclotomic_polynomial(self.order)))
        r = r + [Fraction(0)] * (deg - len(r))
        return CyclotomicElem(self.order, r)

    def inverse(self) -> CyclotomicElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self.is_rational():
            return CyclotomicElem.from_rational(1 / self.coeffs[0], self.order)
        # extended Euclid in Q[x] against the (irreducible) cyclotomic polynomial
        deg, _ = _reduction_cache(self.order)
        r0, r1 = list(cyclotomic_polynomial(self.order)), _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            qs1 = _poly_mul(q, s1)
            n = max(len(s0), len(qs1))
            s = _poly_trim(
                [
                    (s0[i] if i < len(s0) else Fraction(0)) - (qs1[i] if i < len(qs1) else Fraction(0))
                    for i in range(n)
                ]
            )
            r0, r1, s0, s1 = r1, r, s1, s
        if not r1:
            raise ZeroDivisionError("element not invertible (unexpected for a field)")
        c = r1[0]
        inv = [a / c for a in s1]
        inv = inv + [Fraction(0)] * (deg - len(inv))
        return CyclotomicElem(self.order, inv[:deg])

    # -- comparisons / hashing ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclotomicElem):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def complex_value(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicElem(zeta_{self.order}; {list(self.coeffs)})"


ScalarLike = Union["ExactScalar", CyclotomicElem, Fraction, int]


class ExactScalar:
    """Laurent polynomial in Pi (= pi*i) over Q(zeta_2L), in canonical form.

    ``terms`` maps the integer power of Pi to a nonzero cyclotomic
    coefficient.  Pi is transcendental by construction: no operation ever
    merges distinct Pi-powers.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, CyclotomicElem] | None = None):
        clean: dict[int, CyclotomicElem] = {}
        if terms:
            order = None
            for k, c in terms.items():
                if order is None:
                    order = c.order
                elif c.order != order:
                    raise ValueError("mixed cyclotomic orders in one scalar")
                if not c.is_zero():
                    clean[int(k)] = c
        self.terms = clean
        self._hash: int | None = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> ExactScalar:
        return ExactScalar()

    @staticmethod
    def from_rational(q: Fraction | int) -> ExactScalar:
        q = Fraction(q)
        if q == 0:
            return ExactScalar()
        return ExactScalar({0: CyclotomicElem.from_rational(q)})

    @staticmethod
    def from_cyclotomic(c: CyclotomicElem) -> ExactScalar:
        return ExactScalar({0: c})

    @staticmethod
    def pi_power(k: int, coeff: Fraction | int = 1) -> ExactScalar:
        c = CyclotomicElem.from_rational(coeff)
        return ExactScalar({k: c})

    @staticmethod
    def coerce(v: ScalarLike) -> ExactScalar:
        if isinstance(v, ExactScalar):
            return v
        if isinstance(v, CyclotomicElem):
            return ExactScalar.from_cyclotomic(v)
        if isinstance(v, (int, Fraction)):
            return ExactScalar.from_rational(v)
        raise TypeError(f"cannot coerce {v!r} to ExactScalar")

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.terms or (set(self.terms) == {0} and self.terms[0].is_rational())

    def rational_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms[0].rational_value()

    def is_monomial(self) -> bool:
        """Exactly one Pi-power with an (automatically invertible) nonzero coefficient."""
        return len(self.terms) == 1

    def monomial_parts(self) -> tuple[int, CyclotomicElem]:
        if not self.is_monomial():
            raise UnsupportedDivision(f"{self} is not a Pi-monomial")
        [(k, c)] = self.terms.items()
        return k, c

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: ScalarLike) -> ExactScalar:
        other = ExactScalar.coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return ExactScalar(out)

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: ScalarLike) -> ExactScalar:
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other: ScalarLike) -> ExactScalar:
        return ExactScalar.coerce(other) + (-self)

    def __mul__(self, other: ScalarLike) -> ExactScalar:
        other = ExactScalar.coerce(other)
        if not self.terms or not other.terms:
            return ExactScalar()
        out: dict[int, CyclotomicElem] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                p = c1 * c2
                if k in out:
                    s = out[k] + p
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
                elif not p.is_zero():
                    out[k] = p
        return ExactScalar(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ExactScalar:
        if n < 0:
            k, c = self.monomial_parts()
            base = ExactScalar({-k: c.inverse()})
            return base ** (-n)
        out = ExactScalar.from_rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def div_monomial(self, other: ScalarLike) -> ExactScalar:
        """Exact division by a Pi-monomial c*Pi^k (or a plain nonzero constant)."""
        other = ExactScalar.coerce(other)
        if other.is_zero():
            raise UnsupportedDivision("division by zero")
        k, c = other.monomial_parts()
        cinv = c.inverse()
        return ExactScalar({p - k: coeff * cinv for p, coeff in self.terms.items()})

    def divided_by_rational(self, q: Fraction | int) -> ExactScalar:
        q = Fraction(q)
        if q == 0:
            raise UnsupportedDivision("division by zero")
        return ExactScalar({k: c.scale(1 / q) for k, c in self.terms.items()})

    # -- comparisons / misc -----------------------------------------------------

    def canonical_key(self) -> tuple:
        return tuple(sorted((k, c.order, c.coeffs) for k, c in self.terms.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.from_rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.canonical_key())
        return self._hash

    def complex_value(self) -> complex:
        """Floating evaluation with Pi -> pi*i; smoke-test backend only."""
        return sum(c.complex_value() * (1j * math.pi) ** k for k, c in self.terms.items())

    def __repr__(self) -> str:
        from .printer import scalar_str  # local import: printer depends on scalars

        return f"ExactScalar({scalar_str(self)})"


ZERO = ExactScalar.zero()
ONE = ExactScalar.from_rational(1)


def pi_scalar(coeff: Fraction | int = 1) -> ExactScalar:
    """coeff * Pi, i.e. coeff * (pi i)."""
    return ExactScalar.pi_power(1, coeff)


def root_of_unity(q: Fraction | int) -> ExactScalar:
    """Exact e^(pi i q) = zeta_2L^(qL); q must lie on the (1/L)Z lattice."""
    q = _check_lattice(Fraction(q), "root-of-unity argument")
    k = q * _lattice
    assert k.denominator == 1
    return ExactScalar.from_cyclotomic(CyclotomicElem.zeta_power(int(k)))


def imaginary_unit() -> ExactScalar:
    if _lattice % 2 != 0:
        raise LatticeViolation("i = e(1/2) needs an even lattice bound L")
    return root_of_unity(Fraction(1, 2))


def binom_general(m: ScalarLike, k: int) -> ExactScalar:
    """Generalized binomial coefficient m(m-1)...(m-k+1)/k! for scalar m."""
    if k < 0:
        raise ValueError("binomial lower index must be nonnegative")
    m = ExactScalar.coerce(m)
    out = ONE
    for t in range(k):
        out = out * (m - ExactScalar.from_rational(t))
    return out.divided_by_rational(math.factorial(k))


class Exponent:
    """A Gaussian rational on the lattice (1/L)Z[i]; exponent of a formal variable."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Fraction | int = 0, im: Fraction | int = 0):
        self.re = _check_lattice(Fraction(re))
        self.im = _check_lattice(Fraction(im))
        self._hash: int | None = None

    @staticmethod
    def coerce(v: "Exponent | Fraction | int") -> Exponent:
        if isinstance(v, Exponent):
            return v
        return Exponent(Fraction(v))

    def __add__(self, other: "Exponent | Fraction | int") -> Exponent:
        other = Exponent.coerce(other)
        return Exponent(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "Exponent | Fraction | int") -> Exponent:
        other = Exponent.coerce(other)
        return Exponent(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: "Exponent | Fraction | int") -> Exponent:
        return Exponent.coerce(other) - self

    def __neg__(self) -> Exponent:
        return Exponent(-self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def as_scalar(self) -> ExactScalar:
        out = ExactScalar.from_rational(self.re)
        if self.im:
            out = out + imaginary_unit() * ExactScalar.from_rational(self.im)
        return out

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Exponent(Fraction(other))
        if not isinstance(other, Exponent):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __lt__(self, other: "Exponent") -> bool:
        return self.sort_key() < other.sort_key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.re, self.im))
        return self._hash

    def __repr__(self) -> str:
        from .printer import exponent_str

        return f"Exponent({exponent_str(self)})"
