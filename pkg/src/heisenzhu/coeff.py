"""Exact polynomial coefficients in the formal symbols ``a`` and ``λ``.

A :class:`Poly` is an immutable sparse polynomial with :class:`fractions.Fraction`
coefficients.  Monomials are exponent pairs ``(i, j)`` meaning ``a**i * λ**j``.
Fock-space vectors only ever use ``a``; module vectors use both.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Union

Scalar = Union[int, Fraction]
_VARS = ("a", "λ")


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Sparse polynomial in ``a`` and ``λ`` over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[tuple[int, int], Scalar] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    clean[exp] = _frac(c)
        self._terms = clean
        self._hash: int | None = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        if name == "a":
            return cls({(power, 0): 1})
        if name in ("λ", "lam", "lambda"):
            return cls({(0, power): 1})
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def coerce(cls, x: "Poly | Scalar") -> "Poly":
        return x if isinstance(x, Poly) else cls.const(x)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def constant(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def degree(self, name: str = "a") -> int:
        """Degree in one variable; ``-1`` for the zero polynomial."""
        idx = 0 if name == "a" else 1
        return max((e[idx] for e in self._terms), default=-1)

    def coefficient(self, exp: tuple[int, int]) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def by_a_degree(self) -> dict[int, "Poly"]:
        out: dict[int, dict[tuple[int, int], Fraction]] = {}
        for (i, j), c in self._terms.items():
            out.setdefault(i, {})[(0, j)] = c
        return {i: Poly(t) for i, t in out.items()}

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "Poly | Scalar") -> "Poly":
        other = Poly.coerce(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Poly | Scalar") -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: "Poly | Scalar") -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        if not isinstance(other, Poly):
            if not other:
                return Poly()
            return Poly({e: c * other for e, c in self._terms.items()})
        t: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(t)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Poly":
        d = _frac(other)
        return Poly({e: c / d for e, c in self._terms.items()})

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def subs(self, a: "Poly | Scalar | None" = None, lam: "Poly | Scalar | None" = None) -> "Poly":
        """Substitute values for ``a`` and/or ``λ``."""
        out = Poly()
        for (i, j), c in self._terms.items():
            term = Poly({(0 if a is not None else i, 0 if lam is not None else j): c})
            if a is not None:
                term = term * Poly.coerce(a) ** i
            if lam is not None:
                term = term * Poly.coerce(lam) ** j
            out = out + term
        return out

    # comparison ---------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # printing -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_monomial(exp: tuple[int, int]) -> str:
    parts = []
    for name, p in zip(_VARS, exp):
        if p == 1:
            parts.append(name)
        elif p > 1:
            parts.append(f"{name}^{p}")
    return " ".join(parts)


def _sort_key(exp: tuple[int, int]) -> tuple[int, int, int]:
    return (-(exp[0] + exp[1]), -exp[0], -exp[1])


def format_poly(p: Poly) -> str:
    """Canonical text form, e.g. ``3/2 a^2 - λ + 1``; zero prints as ``0``."""
    if p.is_zero():
        return "0"
    out = []
    for exp in sorted(p._terms, key=_sort_key):
        c = p._terms[exp]
        mono = _fmt_monomial(exp)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{_fmt_rational(mag)} {mono}"
        else:
            body = _fmt_rational(mag)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(a|λ|lam)(?:\^(\d+))?|([+-]))")


def parse_poly(text: str) -> Poly:
    """Parse a coefficient such as ``-3/2 a^2 + λ - 1``."""
    pos = 0
    text = text.strip()
    out = Poly()
    sign = 1
    cur: Poly | None = None
    seen_any = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad coefficient syntax at position {pos}: {text!r}")
        pos = m.end()
        num, var, power, op = m.groups()
        if op:
            if cur is not None:
                out = out + cur * sign
                cur = None
            elif seen_any and op == "-" and sign == -1:
                raise ValueError(f"bad coefficient syntax at position {pos}: {text!r}")
            sign = -1 if op == "-" else 1
            continue
        seen_any = True
        factor = Poly.const(Fraction(num)) if num else Poly.var(var, int(power or 1))
        cur = factor if cur is None else cur * factor
    if cur is not None:
        out = out + cur * sign
    elif seen_any or text:
        raise ValueError(f"dangling operator in coefficient: {text!r}")
    return out
