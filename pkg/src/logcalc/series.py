"""Sparse formal series in variables and their formal logarithms.

A :class:`LogSeries` is a finitely supported map from monomials
``prod_v v^(n_v) * lg(v)^(k_v)`` (exponents on the Gaussian lattice, log
powers in N) to coefficient vectors over a fixed finite-dimensional space.
``lg(v)`` is an independent commuting formal variable attached to ``v``, not
a function of it; the derivative rule below is what ties them together:

    d/dv [ v^n lg(v)^m ] = n v^(n-1) lg(v)^m + m v^(n-1) lg(v)^(m-1).

Optional per-variable truncation orders support working in W{x, lg x}[[y]]:
``trunc[y] = N`` means the series is only known modulo terms of y-exponent
greater than N, and all operations prune accordingly (and propagate the
bound pessimistically).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .scalars import (
    ONE,
    ExactScalar,
    Exponent,
    Rat,
    ScalarLike,
    binom_general,
)

VarId = str


class UndefinedProduct(TypeError):
    """Product of two vector-valued series over a space with no algebra structure."""


class VariableCollision(ValueError):
    """An expansion variable was required to be fresh but already occurs."""


class CoeffSpace:
    """A named finite-dimensional coefficient space; dim 1 with name 'scalar' is special."""

    __slots__ = ("name", "dim")

    def __init__(self, name: str, dim: int):
        if dim < 1:
            raise ValueError("coefficient space must have positive dimension")
        self.name = name
        self.dim = dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffSpace):
            return NotImplemented
        return self.name == other.name and self.dim == other.dim

    def __hash__(self) -> int:
        return hash((self.name, self.dim))

    def __repr__(self) -> str:
        return f"CoeffSpace({self.name!r}, dim={self.dim})"


SCALAR = CoeffSpace("scalar", 1)


class CoeffVector:
    """Sparse vector over a CoeffSpace with ExactScalar components."""

    __slots__ = ("space", "components", "_hash")

    def __init__(self, space: CoeffSpace, components: Mapping[int, ScalarLike] | None = None):
        self.space = space
        comp: dict[int, ExactScalar] = {}
        if components:
            for i, v in components.items():
                if not 0 <= i < space.dim:
                    raise IndexError(f"basis index {i} out of range for {space!r}")
                s = ExactScalar.coerce(v)
                if not s.is_zero():
                    comp[i] = s
        self.components = comp
        self._hash: int | None = None

    @staticmethod
    def zero(space: CoeffSpace) -> CoeffVector:
        return CoeffVector(space)

    @staticmethod
    def basis(space: CoeffSpace, i: int) -> CoeffVector:
        return CoeffVector(space, {i: ONE})

    @staticmethod
    def scalar(value: ScalarLike) -> CoeffVector:
        return CoeffVector(SCALAR, {0: ExactScalar.coerce(value)})

    def is_zero(self) -> bool:
        return not self.components

    def get(self, i: int) -> ExactScalar:
        return self.components.get(i, ExactScalar.zero())

    def scalar_value(self) -> ExactScalar:
        if self.space.dim != 1:
            raise ValueError("scalar_value on a non-one-dimensional space")
        return self.get(0)

    def __add__(self, other: CoeffVector) -> CoeffVector:
        if self.space != other.space:
            raise ValueError("adding vectors over different spaces")
        out = dict(self.components)
        for i, v in other.components.items():
            s = out.get(i)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(i, None)
            else:
                out[i] = s
        return CoeffVector(self.space, out)

    def __neg__(self) -> CoeffVector:
        return CoeffVector(self.space, {i: -v for i, v in self.components.items()})

    def __sub__(self, other: CoeffVector) -> CoeffVector:
        return self + (-other)

    def scale(self, s: ScalarLike) -> CoeffVector:
        s = ExactScalar.coerce(s)
        if s.is_zero():
            return CoeffVector(self.space)
        return CoeffVector(self.space, {i: v * s for i, v in self.components.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffVector):
            return NotImplemented
        return self.space == other.space and self.components == other.components

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space, tuple(sorted((i, v.canonical_key()) for i, v in self.components.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"CoeffVector({self.space.name}, {self.components})"


class Monomial:
    """Canonical product of var^exponent * lg(var)^logpower factors.

    Entries are kept sorted by variable name; a variable with exponent 0 and
    log power 0 is not stored, so structural equality is semantic equality.
    """

    __slots__ = ("entries", "_hash")

    def __init__(self, entries: Mapping[VarId, tuple[Exponent, int]] | None = None):
        items = []
        if entries:
            for v, (e, k) in sorted(entries.items()):
                e = Exponent.coerce(e)
                k = int(k)
                if k < 0:
                    raise ValueError("log powers must be nonnegative")
                if not e.is_zero() or k != 0:
                    items.append((v, e, k))
        self.entries: tuple[tuple[VarId, Exponent, int], ...] = tuple(items)
        self._hash: int | None = None

    UNIT: "Monomial"

    @staticmethod
    def var(v: VarId, exponent: Exponent | Fraction | int = 1, log_power: int = 0) -> Monomial:
        return Monomial({v: (Exponent.coerce(exponent), log_power)})

    @staticmethod
    def log(v: VarId, power: int = 1) -> Monomial:
        return Monomial({v: (Exponent(0), power)})

    def as_dict(self) -> dict[VarId, tuple[Exponent, int]]:
        return {v: (e, k) for v, e, k in self.entries}

    def exponent(self, v: VarId) -> Exponent:
        for name, e, _ in self.entries:
            if name == v:
                return e
        return Exponent(0)

    def log_power(self, v: VarId) -> int:
        for name, _, k in self.entries:
            if name == v:
                return k
        return 0

    def variables(self) -> tuple[VarId, ...]:
        return tuple(v for v, _, _ in self.entries)

    def without(self, v: VarId) -> Monomial:
        return Monomial({name: (e, k) for name, e, k in self.entries if name != v})

    def __mul__(self, other: Monomial) -> Monomial:
        d = self.as_dict()
        for v, e, k in other.entries:
            if v in d:
                e0, k0 = d[v]
                d[v] = (e0 + e, k0 + k)
            else:
                d[v] = (e, k)
        return Monomial(d)

    def sort_key(self) -> tuple:
        return tuple((v, e.sort_key(), k) for v, e, k in self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self) -> str:
        from .printer import monomial_str

        return f"Monomial({monomial_str(self)})"


Monomial.UNIT = Monomial()


TruncMap = Mapping[VarId, int]


def _merge_trunc(a: TruncMap, b: TruncMap) -> dict[VarId, int]:
    out = dict(a)
    for v, n in b.items():
        out[v] = min(out[v], n) if v in out else n
    return out


class LogSeries:
    """Finitely supported series with CoeffVector coefficients.

    Treat instances as immutable; all operations return new series.
    """

    __slots__ = ("space", "terms", "trunc")

    def __init__(
        self,
        space: CoeffSpace,
        terms: Mapping[Monomial, CoeffVector] | None = None,
        trunc: TruncMap | None = None,
    ):
        self.space = space
        self.trunc: dict[VarId, int] = dict(trunc) if trunc else {}
        clean: dict[Monomial, CoeffVector] = {}
        if terms:
            for m, vec in terms.items():
                if vec.space != space:
                    raise ValueError("coefficient vector over the wrong space")
                if vec.is_zero() or self._beyond_trunc(m):
                    continue
                clean[m] = vec
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(space: CoeffSpace = SCALAR, trunc: TruncMap | None = None) -> LogSeries:
        return LogSeries(space, {}, trunc)

    @staticmethod
    def one() -> LogSeries:
        return LogSeries(SCALAR, {Monomial.UNIT: CoeffVector.scalar(ONE)})

    @staticmethod
    def monomial(m: Monomial, coeff: ScalarLike = 1, trunc: TruncMap | None = None) -> LogSeries:
        return LogSeries(SCALAR, {m: CoeffVector.scalar(coeff)}, trunc)

    @staticmethod
    def variable(v: VarId, exponent: Exponent | Fraction | int = 1) -> LogSeries:
        return LogSeries.monomial(Monomial.var(v, exponent))

    @staticmethod
    def log_variable(v: VarId, power: int = 1) -> LogSeries:
        return LogSeries.monomial(Monomial.log(v, power))

    @staticmethod
    def constant(value: ScalarLike) -> LogSeries:
        return LogSeries(SCALAR, {Monomial.UNIT: CoeffVector.scalar(value)})

    @staticmethod
    def vector(vec: CoeffVector, m: Monomial = Monomial.UNIT, trunc: TruncMap | None = None) -> LogSeries:
        return LogSeries(vec.space, {m: vec}, trunc)

    # -- bookkeeping ------------------------------------------------------------

    def _beyond_trunc(self, m: Monomial) -> bool:
        for v, bound in self.trunc.items():
            if m.exponent(v).re > bound:
                return True
        return False

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[VarId]:
        out: set[VarId] = set()
        for m in self.terms:
            out.update(m.variables())
        return out

    def uses_variable(self, v: VarId) -> bool:
        return any(m.exponent(v) != 0 or m.log_power(v) != 0 for m in self.terms) or v in self.trunc

    def coeff(self, m: Monomial) -> CoeffVector:
        return self.terms.get(m, CoeffVector.zero(self.space))

    def scalar_coeff(self, m: Monomial) -> ExactScalar:
        return self.coeff(m).scalar_value()

    def with_trunc(self, trunc: TruncMap) -> LogSeries:
        return LogSeries(self.space, self.terms, _merge_trunc(self.trunc, trunc))

    def drop_trunc(self, v: VarId) -> LogSeries:
        t = {k: n for k, n in self.trunc.items() if k != v}
        return LogSeries(self.space, self.terms, t)

    def items(self) -> Iterable[tuple[Monomial, CoeffVector]]:
        return self.terms.items()

    def sorted_items(self) -> list[tuple[Monomial, CoeffVector]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    # -- ring operations ----------------------------------------------------------

    def __add__(self, other: LogSeries) -> LogSeries:
        if self.space != other.space:
            raise ValueError(f"adding series over {self.space!r} and {other.space!r}")
        out = dict(self.terms)
        for m, vec in other.terms.items():
            cur = out.get(m)
            s = vec if cur is None else cur + vec
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return LogSeries(self.space, out, _merge_trunc(self.trunc, other.trunc))

    def __neg__(self) -> LogSeries:
        return LogSeries(self.space, {m: -v for m, v in self.terms.items()}, self.trunc)

    def __sub__(self, other: LogSeries) -> LogSeries:
        return self + (-other)

    def scale(self, s: ScalarLike) -> LogSeries:
        s = ExactScalar.coerce(s)
        return LogSeries(self.space, {m: v.scale(s) for m, v in self.terms.items()}, self.trunc)

    def scale_vector(self, vec: CoeffVector) -> LogSeries:
        """Replace scalar coefficients by their multiples of a fixed vector."""
        if self.space != SCALAR:
            raise UndefinedProduct("scale_vector needs a scalar-coefficient series")
        if vec.space == SCALAR:
            return self.scale(vec.scalar_value())
        return LogSeries(
            vec.space,
            {m: vec.scale(c.scalar_value()) for m, c in self.terms.items()},
            self.trunc,
        )

    def __mul__(self, other: LogSeries) -> LogSeries:
        if self.space != SCALAR and other.space != SCALAR:
            raise UndefinedProduct(
                "product of two vector-valued series over a space with no declared algebra structure"
            )
        if self.space == SCALAR:
            scal, vec = self, other
        else:
            scal, vec = other, self
        trunc = _merge_trunc(self.trunc, other.trunc)
        out: dict[Monomial, CoeffVector] = {}
        space = vec.space
        for m1, c1 in scal.terms.items():
            s1 = c1.scalar_value()
            for m2, c2 in vec.terms.items():
                m = m1 * m2
                skip = False
                for v, bound in trunc.items():
                    if m.exponent(v).re > bound:
                        skip = True
                        break
                if skip:
                    continue
                p = c2.scale(s1)
                cur = out.get(m)
                s = p if cur is None else cur + p
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return LogSeries(space, out, trunc)

    def __pow__(self, n: int) -> LogSeries:
        if n < 0:
            raise ValueError("series powers must be nonnegative")
        out = LogSeries.one().with_trunc(self.trunc)
        for _ in range(n):
            out = out * self
        return out

    # -- differential structure ------------------------------------------------------

    def d_dx(self, v: VarId) -> LogSeries:
        """Formal derivative in v: the two-term rule acting on v^n lg(v)^m."""
        out: dict[Monomial, CoeffVector] = {}

        def put(m: Monomial, vec: CoeffVector) -> None:
            cur = out.get(m)
            s = vec if cur is None else cur + vec
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s

        for m, vec in self.terms.items():
            n = m.exponent(v)
            k = m.log_power(v)
            rest = m.without(v)
            if not n.is_zero():
                put(rest * Monomial.var(v, n - 1, k), vec.scale(n.as_scalar()))
            if k:
                put(rest * Monomial.var(v, n - 1, k - 1), vec.scale(k))
        trunc = dict(self.trunc)
        if v in trunc:
            trunc[v] -= 1
        return LogSeries(self.space, out, trunc)

    def apply_diffop(self, p: LogSeries, v: VarId) -> LogSeries:
        """Apply T = p(v) d/dv for a scalar Laurent polynomial p in v alone."""
        for m in p.terms:
            if any(name != v for name in m.variables()) or m.log_power(v) != 0:
                raise UndefinedProduct("the operator coefficient must be a Laurent polynomial in the derivation variable")
        return p * self.d_dx(v)

    def exp_diffop(self, y: VarId, p: LogSeries, v: VarId, order: int) -> LogSeries:
        """Truncated e^(y T) with T = p(v) d/dv: sum_{k<=order} y^k T^k / k!.

        y must be fresh; the result records trunc[y] = order.
        """
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if self.uses_variable(y) or p.uses_variable(y):
            raise VariableCollision(f"expansion variable {y!r} already occurs")
        acc = LogSeries.zero(self.space, {y: order})
        tk = self
        for k in range(order + 1):
            term = tk.scale(Fraction(1, math.factorial(k))) * LogSeries.variable(y, k)
            acc = acc + term
            if k < order:
                tk = tk.apply_diffop(p, v)
        return acc

    # -- misc ----------------------------------------------------------------------

    def map_coeffs(self, f: Callable[[CoeffVector], CoeffVector], space: CoeffSpace | None = None) -> LogSeries:
        space = space or self.space
        out: dict[Monomial, CoeffVector] = {}
        for m, vec in self.terms.items():
            w = f(vec)
            if not w.is_zero():
                cur = out.get(m)
                out[m] = w if cur is None else cur + w
        return LogSeries(space, out, self.trunc)

    def complex_value(self, point: Mapping[VarId, complex], log_point: Mapping[VarId, complex] | None = None) -> complex:
        """Float smoke-test evaluation of a scalar series; lg(v) defaults to log(point[v])."""
        import cmath

        if self.space != SCALAR:
            raise ValueError("complex_value is for scalar series")
        log_point = dict(log_point or {})
        total = 0 + 0j
        for m, vec in self.terms.items():
            val = vec.scalar_value().complex_value()
            for v, e, k in m.entries:
                z = point[v]
                ev = complex(e.re) + 1j * complex(e.im)
                val *= z**ev if ev != 0 else 1
                if k:
                    lz = log_point.get(v, cmath.log(z))
                    val *= lz**k
            total += val
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms and self.trunc == other.trunc

    def equal_terms(self, other: LogSeries) -> bool:
        """Equality of term maps, ignoring truncation metadata."""
        return self.space == other.space and self.terms == other.terms

    def __repr__(self) -> str:
        from .printer import series_str

        return f"LogSeries({series_str(self)})"


def kth_derivative_table(n: Exponent, m: ScalarLike, k: int) -> dict[int, ExactScalar]:
    """Coefficients of (d/dx)^k applied to x^n lg(x)^m, for arbitrary scalar m.

    Returns {j: c_j} where the j-th term is c_j * x^(n-k) lg(x)^(m-j),

        c_j = m(m-1)...(m-j+1) * e_{k-j}(n, n-1, ..., n-k+1),

    with e_i the elementary symmetric polynomial (the sum over descent
    positions of the word expansion of the derivative's two generators).
    """
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    m = ExactScalar.coerce(m)
    values = [(n - t).as_scalar() for t in range(k)]
    # elementary symmetric polynomials e_0..e_k of the k values
    elem = [ExactScalar.from_rational(1)] + [ExactScalar.zero()] * k
    for v in values:
        for i in range(k, 0, -1):
            elem[i] = elem[i] + elem[i - 1] * v
    out: dict[int, ExactScalar] = {}
    falling = ExactScalar.from_rational(1)
    for j in range(k + 1):
        c = falling * elem[k - j]
        if not c.is_zero():
            out[j] = c
        falling = falling * (m - ExactScalar.from_rational(j))
    return out


def kth_derivative_closed_form(n: Exponent, m: int, k: int, v: VarId = "x") -> LogSeries:
    """(d/dx)^k [x^n lg(x)^m] as a scalar LogSeries; m must be a natural number.

    For non-natural m the log powers m-j are no longer natural numbers, so the
    result is not a first-class series; use :func:`kth_derivative_table`.
    """
    if not isinstance(m, int) or m < 0:
        raise ValueError("closed-form derivative needs a natural log power; use kth_derivative_table")
    table = kth_derivative_table(n, m, k)
    terms: dict[Monomial, CoeffVector] = {}
    for j, c in table.items():
        if j > m:
            continue  # the falling factorial vanishes there anyway
        terms[Monomial.var(v, n - k, m - j)] = CoeffVector.scalar(c)
    return LogSeries(SCALAR, terms)
