"""Fock space of the rank-one Heisenberg vertex operator algebra.

Basis vectors are partitions: the tuple ``(k1, ..., kj)`` with ``k1 >= ... >= kj >= 1``
stands for ``α(-k1)···α(-kj)1``.  A :class:`FockVector` is a finite combination of
partitions with coefficients in ``Q[a]`` (see :mod:`heisenzhu.coeff`).

Most hot loops work on plain dictionaries ``{partition: coefficient}`` whose values
are ints, Fractions or :class:`~heisenzhu.coeff.Poly`; the public functions wrap them.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .coeff import Poly, Scalar

ModeMonomial = tuple[int, ...]
RawVec = dict  # {ModeMonomial: coefficient}

VACUUM: ModeMonomial = ()


# ---------------------------------------------------------------------------
# partitions


def _partitions(n: int, largest: int) -> Iterator[ModeMonomial]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _basis(n: int) -> tuple[ModeMonomial, ...]:
    return tuple(_partitions(n, n))


def basis_of_weight(n: int) -> list[ModeMonomial]:
    """All partitions of ``n`` in reverse-lexicographic order (largest part first)."""
    if n < 0:
        raise ValueError("weight must be non-negative")
    return list(_basis(n))


def basis_up_to(n: int) -> list[ModeMonomial]:
    out: list[ModeMonomial] = []
    for w in range(n + 1):
        out.extend(_basis(w))
    return out


def weight(mono: ModeMonomial) -> int:
    return sum(mono)


def insert_mode(mono: ModeMonomial, k: int) -> ModeMonomial:
    """Multiply the monomial by ``α(-k)`` (``k >= 1``), keeping descending order."""
    i = 0
    n = len(mono)
    while i < n and mono[i] > k:
        i += 1
    return mono[:i] + (k,) + mono[i:]


def remove_mode(mono: ModeMonomial, k: int) -> ModeMonomial:
    i = mono.index(k)
    return mono[:i] + mono[i + 1 :]


def multiply_monomials(m1: ModeMonomial, m2: ModeMonomial) -> ModeMonomial:
    return tuple(sorted(m1 + m2, reverse=True))


# ---------------------------------------------------------------------------
# raw dictionary kernels


def raw_add(acc: RawVec, vec: Mapping, scale=1) -> RawVec:
    """``acc += scale * vec`` in place, dropping zeros."""
    for mono, c in vec.items():
        v = acc.get(mono, 0) + scale * c
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)
    return acc


def raw_scale(vec: Mapping, s) -> RawVec:
    if not s:
        return {}
    return {m: c * s for m, c in vec.items()}


def raw_apply_mode(m: int, vec: Mapping, zero_value=None) -> RawVec:
    """Apply ``α(m)``.  ``zero_value`` is what ``α(0)`` multiplies by (``None`` means 0)."""
    out: RawVec = {}
    if m < 0:
        k = -m
        for mono, c in vec.items():
            key = insert_mode(mono, k)
            out[key] = out.get(key, 0) + c
        return out
    if m == 0:
        if zero_value is None:
            return out
        return {mono: c * zero_value for mono, c in vec.items() if c * zero_value}
    for mono, c in vec.items():
        cnt = mono.count(m)
        if cnt:
            key = remove_mode(mono, m)
            v = out.get(key, 0) + m * cnt * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def raw_apply_word(word: Sequence[int], vec: Mapping, zero_value=None) -> RawVec:
    out = dict(vec)
    for m in reversed(word):
        out = raw_apply_mode(m, out, zero_value)
        if not out:
            break
    return out


def raw_multiply(p: Mapping, vec: Mapping) -> RawVec:
    """Multiply two vectors as commuting polynomials in creation modes."""
    out: RawVec = {}
    for m1, c1 in p.items():
        for m2, c2 in vec.items():
            key = multiply_monomials(m1, m2)
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def raw_max_weight(vec: Mapping) -> int:
    return max((sum(m) for m in vec), default=-1)


def raw_virasoro(n: int, vec: Mapping, a_value=None, zero_value=None) -> RawVec:
    """``L(n)`` with the quadratic part and an optional ``-(n+1) a α(n)`` term."""
    out: RawVec = {}
    top = raw_max_weight(vec)
    if top < 0:
        return out
    # pairs p <= q with p + q = n; the right-hand (annihilating) mode must be <= top
    lo = n - top
    p = lo
    while 2 * p <= n:
        q = n - p
        if q <= top or q < 0:
            if p == q:
                term = raw_apply_mode(p, raw_apply_mode(q, vec, zero_value), zero_value)
                raw_add(out, term, Fraction(1, 2))
            else:
                # normal order: creation (negative) mode on the left
                left, right = (p, q) if p < q else (q, p)
                term = raw_apply_mode(left, raw_apply_mode(right, vec, zero_value), zero_value)
                raw_add(out, term)
        p += 1
    if a_value is not None and n != -1:
        term = raw_apply_mode(n, vec, zero_value)
        raw_add(out, term, a_value * (-(n + 1)))
    return out


def raw_shift(vec: Mapping) -> RawVec:
    """``(L(-1) + L(0)) v`` on the vacuum module, computed monomial by monomial."""
    out: RawVec = {}
    for mono, c in vec.items():
        w = sum(mono)
        if w == 0:
            continue
        out[mono] = out.get(mono, 0) + w * c
        # L(-1) acts as the derivation α(-k) -> k α(-k-1)
        seen = set()
        for i, k in enumerate(mono):
            if k in seen:
                continue
            seen.add(k)
            cnt = mono.count(k)
            key = insert_mode(mono[:i] + mono[i + 1 :], k + 1)
            out[key] = out.get(key, 0) + k * cnt * c
    return {m: c for m, c in out.items() if c}


# compiled kernels replace the ones above when the extension is built;
# HEISENZHU_PURE=1 forces the pure-Python versions
PURE_KERNELS = {
    "insert_mode": insert_mode,
    "multiply_monomials": multiply_monomials,
    "raw_add": raw_add,
    "raw_apply_mode": raw_apply_mode,
    "raw_multiply": raw_multiply,
    "raw_shift": raw_shift,
}
try:
    if os.environ.get("HEISENZHU_PURE"):
        raise ImportError("pure kernels requested")
    from ._core import insert_mode, multiply_monomials, raw_add, raw_apply_mode, raw_multiply, raw_shift  # noqa: F811

    HAVE_CORE = True
except ImportError:
    HAVE_CORE = False


# ---------------------------------------------------------------------------
# public vector type


class FockVector:
    """Immutable finite combination of partitions with ``Q[a]`` coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[ModeMonomial, Poly | Scalar] | None = None):
        clean: dict[ModeMonomial, Poly] = {}
        if terms:
            for mono, c in terms.items():
                p = Poly.coerce(c)
                if not p.is_zero():
                    if p.degree("λ") > 0:
                        raise ValueError("Fock coefficients cannot involve λ")
                    clean[tuple(mono)] = p
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, mono: Iterable[int], coeff: Poly | Scalar = 1) -> "FockVector":
        parts = tuple(sorted(mono, reverse=True))
        if any(k <= 0 for k in parts):
            raise ValueError("mode indices in a state must be negative (k >= 1)")
        return cls({parts: coeff})

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "FockVector":
        return cls()

    @classmethod
    def from_raw(cls, raw: Mapping) -> "FockVector":
        return cls(raw)

    @classmethod
    def from_layers(cls, layers: Mapping[int, Mapping]) -> "FockVector":
        acc: dict[ModeMonomial, Poly] = {}
        for deg, raw in layers.items():
            for mono, c in raw.items():
                acc[mono] = acc.get(mono, Poly()) + Poly({(deg, 0): c})
        return cls(acc)

    # views ------------------------------------------------------------
    @property
    def terms(self) -> dict[ModeMonomial, Poly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: ModeMonomial) -> Poly:
        return self._terms.get(tuple(mono), Poly())

    def is_zero(self) -> bool:
        return not self._terms

    def a_degree(self) -> int:
        return max((c.degree("a") for c in self._terms.values()), default=-1)

    def is_a_free(self) -> bool:
        return self.a_degree() <= 0

    def layers(self) -> dict[int, dict[ModeMonomial, Fraction]]:
        """Split by powers of ``a``: ``{i: raw}`` with ``self = Σ a^i raw_i``."""
        out: dict[int, dict[ModeMonomial, Fraction]] = {}
        for mono, c in self._terms.items():
            for (i, _), q in c.items():
                out.setdefault(i, {})[mono] = q
        return out

    def raw(self) -> dict[ModeMonomial, Fraction]:
        """Rational coefficients; only valid for ``a``-free vectors."""
        if not self.is_a_free():
            raise ValueError("vector depends on the parameter a")
        return {m: c.constant() for m, c in self._terms.items()}

    def weights(self) -> list[int]:
        return sorted({sum(m) for m in self._terms})

    def max_weight(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def component(self, n: int) -> "FockVector":
        return FockVector({m: c for m, c in self._terms.items() if sum(m) == n})

    def homogeneous_components(self) -> dict[int, "FockVector"]:
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {w: FockVector(t) for w, t in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def subs_a(self, value: Scalar) -> "FockVector":
        return FockVector({m: c.subs(a=value) for m, c in self._terms.items()})

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, Poly()) + c
        return FockVector(t)

    def __neg__(self) -> "FockVector":
        return FockVector({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __mul__(self, s: Poly | Scalar) -> "FockVector":
        if isinstance(s, FockVector):
            return NotImplemented
        return FockVector({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s: Scalar) -> "FockVector":
        return FockVector({m: c / s for m, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FockVector):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"FockVector({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def _lift(raw_fn, v: FockVector, *args, **kwargs) -> FockVector:
    """Apply an a-independent linear raw operation layer by layer."""
    layers = {}
    for deg, raw in v.layers().items():
        layers[deg] = raw_fn(raw, *args, **kwargs)
    return FockVector.from_layers(layers)


def apply_mode(m: int, v: FockVector) -> FockVector:
    """Apply ``α(m)`` to ``v``; ``α(0)`` acts as zero on the vacuum module."""
    return _lift(lambda raw: raw_apply_mode(m, raw), v)


def apply_word(word: Sequence[int], v: FockVector) -> FockVector:
    """Apply ``α(m1)···α(ms)``; the last mode acts first."""
    return _lift(lambda raw: raw_apply_word(word, raw), v)


def virasoro_mode(n: int, v: FockVector) -> FockVector:
    """``L_a(n) v`` with ``a`` symbolic."""
    layers: dict[int, dict] = {}
    for deg, raw in v.layers().items():
        quad = raw_virasoro(n, raw)
        raw_add(layers.setdefault(deg, {}), quad)
        if n != -1:
            lin = raw_apply_mode(n, raw)
            raw_add(layers.setdefault(deg + 1, {}), lin, -(n + 1))
    return FockVector.from_layers(layers)


def shift_generator(v: FockVector) -> FockVector:
    """``(L_a(-1) + L_a(0)) v``; the parameter ``a`` drops out on the vacuum module."""
    return _lift(raw_shift, v)


def omega() -> FockVector:
    """The conformal vector ``½α(-1)²1 + aα(-2)1``."""
    return FockVector({(1, 1): Fraction(1, 2), (2,): Poly.var("a")})


# ---------------------------------------------------------------------------
# text form


def _fmt_factor(k: int, e: int) -> str:
    return f"a(-{k})" if e == 1 else f"a(-{k})^{e}"


def format_monomial(mono: ModeMonomial, ket: str = "|0>") -> str:
    groups: list[tuple[int, int]] = []
    for k in mono:
        if groups and groups[-1][0] == k:
            groups[-1] = (k, groups[-1][1] + 1)
        else:
            groups.append((k, 1))
    return " ".join(_fmt_factor(k, e) for k, e in groups) + ket


def term_order(mono: ModeMonomial) -> tuple:
    """Printing order: by weight, then the reverse-lexicographic basis order."""
    return (sum(mono), tuple(-k for k in mono))


def format_terms(terms: Mapping[ModeMonomial, Poly], ket: str = "|0>") -> str:
    pieces: list[tuple[Fraction, str]] = []
    for mono in sorted(terms, key=term_order):
        poly = Poly.coerce(terms[mono])
        for exp, c in sorted(poly.items(), key=lambda t: (t[0][0], t[0][1])):
            scal = _fmt_scalar_monomial(abs(c), exp)
            body = format_monomial(mono, ket)
            if scal:
                body = f"{scal} {body}"
            pieces.append((c, body))
    if not pieces:
        return "0"
    out = []
    for c, body in pieces:
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def _fmt_scalar_monomial(mag: Fraction, exp: tuple[int, int]) -> str:
    parts = []
    if mag != 1:
        parts.append(str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}")
    for name, p in zip(("a", "λ"), exp):
        if p == 1:
            parts.append(name)
        elif p > 1:
            parts.append(f"{name}^{p}")
    return " ".join(parts)


def format_element(v: FockVector) -> str:
    """Canonical grammar string; the zero vector prints as ``0``."""
    return format_terms(v.terms, "|0>")


class ParseError(ValueError):
    """Syntax error in an element string; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOK = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ket>\|(?:0|λ|lam)>)
  | (?P<mode>a\(\s*(?P<sign>[+-]?)\s*(?P<idx>\d+)\s*\))
  | (?P<num>\d+(?:/\d+)?)
  | (?P<var>a|λ|lam)
  | (?P<pow>\^\s*(?P<exp>\d+))
  | (?P<op>[+-])
  | (?P<star>\*)
    """,
    re.VERBOSE,
)


def parse_terms(text: str, ket: str = "|0>", allow_lambda: bool = False) -> dict[ModeMonomial, Poly]:
    """Parse ``[coeff] factor* KET`` terms joined by ``+``/``-``."""
    kets = {"|0>"} if ket == "|0>" else {"|λ>", "|lam>"}
    pos = 0
    n = len(text)
    result: dict[ModeMonomial, Poly] = {}
    sign = 1
    coeff: Poly | None = None
    factors: list[int] = []
    last: str | None = None  # kind of previous significant token
    expect_term = True
    have_term = False
    _last_var = _before_var = Poly.const(1)

    while pos < n:
        m = _TOK.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = pos
        pos = m.end()
        if kind == "ws":
            continue
        if kind == "op":
            if not expect_term and last != "ket":
                raise ParseError("operator inside a term", start)
            if expect_term and last == "op":
                raise ParseError("two operators in a row", start)
            sign = (-1 if m.group("op") == "-" else 1) * (sign if last == "op" else 1)
            expect_term = True
            last = "op"
            continue
        if kind == "ket":
            if m.group("ket") not in kets:
                raise ParseError(f"expected {ket}", start)
            c = coeff if coeff is not None else Poly.const(1)
            mono = tuple(sorted(factors, reverse=True))
            result[mono] = result.get(mono, Poly()) + c * sign
            coeff, factors, sign = None, [], 1
            expect_term = False
            have_term = True
            last = "ket"
            continue
        if last == "ket":
            raise ParseError("missing '+' or '-' between terms", start)
        if kind == "mode":
            if m.group("sign") != "-" or int(m.group("idx")) == 0:
                raise ParseError("mode index in a state must be negative", start)
            factors.append(int(m.group("idx")))
            last = "mode"
            continue
        if kind == "pow":
            e = int(m.group("exp"))
            if last == "mode":
                if e == 0:
                    factors.pop()
                else:
                    factors.extend([factors[-1]] * (e - 1))
            elif last == "var" and coeff is not None:
                coeff = _before_var * (_last_var**e)
            else:
                raise ParseError("misplaced exponent", start)
            last = "pow"
            continue
        if kind == "star":
            last = "star"
            continue
        if factors:
            raise ParseError("scalar after a mode factor", start)
        if kind == "num":
            factor = Poly.const(Fraction(m.group("num")))
        else:
            name = m.group("var")
            if name in ("λ", "lam") and not allow_lambda:
                raise ParseError("λ is not allowed in a Fock element", start)
            factor = Poly.var("a" if name == "a" else "λ")
            _last_var = factor
            _before_var = coeff if coeff is not None else Poly.const(1)
        coeff = factor if coeff is None else coeff * factor
        last = "var" if kind == "var" else "num"
    if factors or coeff is not None:
        raise ParseError(f"term not terminated by {ket}", n)
    if last == "op":
        raise ParseError("dangling operator", n)
    if not have_term:
        if text.strip() == "0":
            return {}
        raise ParseError("empty element", 0)
    return {mono: c for mono, c in result.items() if not c.is_zero()}


def parse_element(text: str) -> FockVector:
    """Parse the element grammar, e.g. ``"3/2 a(-2)|0> - a(-1)|0>"``."""
    if text.strip() == "0":
        return FockVector()
    return FockVector(parse_terms(text, "|0>"))


__all__ = [
    "FockVector",
    "ModeMonomial",
    "ParseError",
    "VACUUM",
    "apply_mode",
    "apply_word",
    "basis_of_weight",
    "basis_up_to",
    "format_element",
    "format_monomial",
    "omega",
    "parse_element",
    "shift_generator",
    "virasoro_mode",
]
