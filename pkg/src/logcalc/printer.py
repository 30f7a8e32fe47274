"""Canonical text rendering of scalars, exponents, monomials and series.

The formats here are the bit-exact canonical serializations: terms sorted by
monomial key, scalars sorted by Pi-power then root-of-unity index.  The
parser inverts these exactly (parse . print = identity on canonical form).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import CyclotomicElem, ExactScalar, Exponent
from .series import LogSeries, Monomial


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def exponent_str(e: Exponent) -> str:
    if e.im == 0:
        return rational_str(e.re)
    im = rational_str(e.im) + "*i"
    if e.re == 0:
        return im
    if e.im > 0:
        return f"{rational_str(e.re)}+{im}"
    return f"{rational_str(e.re)}-{rational_str(-e.im)}*i"


def _cyclotomic_factors(c: CyclotomicElem) -> list[str]:
    """Summands of a cyclotomic element as strings: r or r*e(q), q = k/L."""
    L = c.order // 2
    out = []
    for k, coeff in enumerate(c.coeffs):
        if coeff == 0:
            continue
        if k == 0:
            out.append(rational_str(coeff))
        else:
            root = f"e({rational_str(Fraction(k, L))})"
            if coeff == 1:
                out.append(root)
            elif coeff == -1:
                out.append(f"-{root}")
            else:
                out.append(f"{rational_str(coeff)}*{root}")
    return out


def scalar_str(s: ExactScalar) -> str:
    if s.is_zero():
        return "0"
    parts: list[str] = []
    for k in sorted(s.terms):
        c = s.terms[k]
        factors = _cyclotomic_factors(c)
        if k == 0:
            body = " + ".join(factors) if len(factors) > 1 else factors[0]
            if len(factors) > 1:
                body = f"({body})"
        else:
            pi = "Pi" if k == 1 else f"Pi^{k}"
            if len(factors) == 1 and factors[0] == "1":
                body = pi
            elif len(factors) == 1 and factors[0] == "-1":
                body = f"-{pi}"
            elif len(factors) == 1:
                body = f"{factors[0]}*{pi}"
            else:
                body = f"({' + '.join(factors)})*{pi}"
        parts.append(body)
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


def _coeff_prefix(s: ExactScalar) -> str:
    """Coefficient rendering in front of a monomial (may need parentheses)."""
    if s.is_rational():
        q = s.rational_value()
        if q.denominator == 1:
            return str(q.numerator)
        return f"({rational_str(q)})" if q >= 0 else f"-({rational_str(-q)})"
    text = scalar_str(s)
    simple = all(ch not in text for ch in "+- ") or (
        text.startswith("-") and all(ch not in text[1:] for ch in "+- ")
    )
    return text if simple else f"({text})"


def monomial_str(m: Monomial) -> str:
    factors = []
    for v, e, k in m.entries:
        if not e.is_zero():
            factors.append(v if e == 1 else f"{v}^({exponent_str(e)})")
        if k:
            factors.append(f"lg({v})" if k == 1 else f"lg({v})^{k}")
    return "*".join(factors) if factors else "1"


def series_str(f: LogSeries) -> str:
    if f.is_zero():
        return "0"
    if f.space.dim != 1:
        # vector-valued: render componentwise, deterministic basis order
        parts = []
        for m, vec in f.sorted_items():
            comp = ", ".join(f"[{i}]={scalar_str(v)}" for i, v in sorted(vec.components.items()))
            parts.append(f"({comp})*{monomial_str(m)}")
        return " + ".join(parts)
    out = ""
    for m, vec in f.sorted_items():
        c = vec.scalar_value()
        mono = monomial_str(m)
        if mono == "1":
            text = _coeff_prefix(c)
        elif c == 1:
            text = mono
        elif c == -1:
            text = f"-{mono}"
        else:
            text = f"{_coeff_prefix(c)}*{mono}"
        if not out:
            out = text
        elif text.startswith("-"):
            out += f" - {text[1:]}"
        else:
            out += f" + {text}"
    return out
