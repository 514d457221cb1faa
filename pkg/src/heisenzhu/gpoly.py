"""Polynomials in commuting ``x, y`` and non-commuting ``Y, Z, W``.

A :class:`GeneratorPoly` is a finite sum of ``c · x^i y^j · w`` with ``w`` a
word in the letters ``Y, Z, W``.  Words are kept verbatim until
:func:`normal_form` rewrites them with the relations of the level-two
quotient.  The canonical basis after rewriting is ``x^i y^j`` with ``j <= 2``
together with ``x^i Y``, ``x^i Z`` and ``x^i W``.
"""

from __future__ import annotations

import itertools
import random
import re
from fractions import Fraction
from typing import Iterator, Mapping

Key = tuple[int, int, str]  # (x exponent, y exponent, word)
LETTERS = "YZW"


class GeneratorPoly:
    """Immutable sparse map ``(i, j, word) -> Fraction``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, int | Fraction] | None = None):
        clean: dict[Key, Fraction] = {}
        for (i, j, w), c in (terms or {}).items():
            if i < 0 or j < 0 or any(ch not in LETTERS for ch in w):
                raise ValueError(f"bad term {(i, j, w)!r}")
            c = Fraction(c)
            if c:
                clean[(i, j, w)] = clean.get((i, j, w), 0) + c
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def const(cls, c: int | Fraction = 1) -> "GeneratorPoly":
        return cls({(0, 0, ""): c})

    @classmethod
    def x(cls, power: int = 1) -> "GeneratorPoly":
        return cls({(power, 0, ""): 1})

    @classmethod
    def y(cls, power: int = 1) -> "GeneratorPoly":
        return cls({(0, power, ""): 1})

    @classmethod
    def word(cls, w: str) -> "GeneratorPoly":
        return cls({(0, 0, w): 1})

    @classmethod
    def coerce(cls, other) -> "GeneratorPoly":
        return other if isinstance(other, GeneratorPoly) else cls.const(other)

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _key_order(kv[0])))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other) -> "GeneratorPoly":
        other = GeneratorPoly.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return GeneratorPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "GeneratorPoly":
        return GeneratorPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "GeneratorPoly":
        return self + (-GeneratorPoly.coerce(other))

    def __rsub__(self, other) -> "GeneratorPoly":
        return GeneratorPoly.coerce(other) - self

    def __mul__(self, other) -> "GeneratorPoly":
        """Free product: commutative parts multiply, words concatenate."""
        if not isinstance(other, GeneratorPoly):
            c = Fraction(other)
            return GeneratorPoly({k: v * c for k, v in self._terms.items()})
        out: dict[Key, Fraction] = {}
        for (i1, j1, w1), c1 in self._terms.items():
            for (i2, j2, w2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2, w1 + w2)
                out[k] = out.get(k, 0) + c1 * c2
        return GeneratorPoly(out)

    def __rmul__(self, other) -> "GeneratorPoly":
        return self * other

    def __truediv__(self, other) -> "GeneratorPoly":
        return self * (1 / Fraction(other))

    def __pow__(self, e: int) -> "GeneratorPoly":
        out = GeneratorPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratorPoly):
            try:
                other = GeneratorPoly.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"GeneratorPoly({format_gpoly(self)!r})"

    def __str__(self) -> str:
        return format_gpoly(self)

    def degree(self) -> int:
        """Degree with ``x`` of weight 1, ``y`` and ``Y`` of weight 2, ``Z`` and ``W`` of weight 3."""
        wt = {"Y": 2, "Z": 3, "W": 3}
        return max((i + 2 * j + sum(wt[ch] for ch in w) for i, j, w in self._terms), default=-1)


def _key_order(k: Key) -> tuple:
    i, j, w = k
    return (len(w), w, i + 2 * j, j, i)


# ---------------------------------------------------------------------------
# printing and parsing


def _fmt_coeff(c: Fraction, rest: str) -> str:
    if not rest:
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if c == 1:
        return rest
    if c == -1:
        return "-" + rest
    num = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return f"{num} {rest}"


def format_gpoly(p: GeneratorPoly) -> str:
    """Canonical text, e.g. ``"x^2 - y + 4"`` or ``"1/8 x^4 - Y"``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for (i, j, w), c in sorted(p._terms.items(), key=lambda kv: _print_order(kv[0])):
        factors = []
        if i:
            factors.append("x" if i == 1 else f"x^{i}")
        if j:
            factors.append("y" if j == 1 else f"y^{j}")
        for letter, run in itertools.groupby(w):
            k = len(list(run))
            factors.append(letter if k == 1 else f"{letter}^{k}")
        text = _fmt_coeff(c, " ".join(factors))
        if parts:
            parts.append(f"- {text[1:]}" if text.startswith("-") else f"+ {text}")
        else:
            parts.append(text)
    return " ".join(parts)


def _print_order(k: Key) -> tuple:
    i, j, w = k
    return (len(w), w, -(i + 2 * j), -i)


_GTOK = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[xyYZW])|(?P<op>[-+*^()]))")


class GPolyParseError(ValueError):
    pass


def parse_gpoly(text: str) -> GeneratorPoly:
    """Parse sums, products (juxtaposition or ``*``), powers and parentheses."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _GTOK.match(text, pos)
        if not m or m.end() == pos:
            raise GPolyParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    parser = _GParser(tokens)
    out = parser.expr()
    if parser.i != len(tokens):
        raise GPolyParseError(f"trailing input at token {parser.i}")
    return out


class _GParser:
    def __init__(self, tokens):
        self.t = tokens
        self.i = 0

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> GeneratorPoly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        out = self.product() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            term = self.product()
            out = out + term if op == "+" else out - term
        return out

    def product(self) -> GeneratorPoly:
        out = self.power()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                out = out * self.power()
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                out = out * self.power()
            else:
                return out

    def power(self) -> GeneratorPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise GPolyParseError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom(self) -> GeneratorPoly:
        kind, val = self.take()
        if kind == "num":
            return GeneratorPoly.const(Fraction(val))
        if kind == "var":
            if val == "x":
                return GeneratorPoly.x()
            if val == "y":
                return GeneratorPoly.y()
            return GeneratorPoly.word(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise GPolyParseError("missing closing parenthesis")
            return inner
        raise GPolyParseError(f"unexpected token {val!r}")


# ---------------------------------------------------------------------------
# rewriting


def _wz_image() -> dict[Key, Fraction]:
    # 1/8 (x^2 - y)(x^2 - y + 2) - Y
    t = (GeneratorPoly.x(2) - GeneratorPoly.y())
    return ((t * (t + 2)) / 8 - GeneratorPoly.word("Y")).terms


PAIR_RULES: dict[str, dict[Key, Fraction]] = {
    "ZY": {},
    "YW": {},
    "YZ": {(0, 0, "Z"): Fraction(1)},
    "WY": {(0, 0, "W"): Fraction(1)},
    "ZW": {(0, 0, "Y"): Fraction(1)},
    "WZ": _wz_image(),
    "YY": {(0, 0, "Y"): Fraction(1)},
    "ZZ": {},
    "WW": {},
}

# y^3 = (3x^2 + 6) y^2 - (3x^4 + 12x^2 + 8) y + x^6 + 6x^4 + 8x^2
_Y_CUBE: dict[tuple[int, int], Fraction] = {
    (2, 2): Fraction(3), (0, 2): Fraction(6),
    (4, 1): Fraction(-3), (2, 1): Fraction(-12), (0, 1): Fraction(-8),
    (6, 0): Fraction(1), (4, 0): Fraction(6), (2, 0): Fraction(8),
}


def _rewrite_words(terms: dict[Key, Fraction], rng: random.Random | None) -> dict[Key, Fraction]:
    todo = dict(terms)
    done: dict[Key, Fraction] = {}
    while todo:
        key = next(iter(todo)) if rng is None else rng.choice(list(todo))
        c = todo.pop(key)
        if not c:
            continue
        i, j, w = key
        if len(w) <= 1:
            done[key] = done.get(key, 0) + c
            continue
        positions = range(len(w) - 1)
        p = 0 if rng is None else rng.choice(list(positions))
        pre, pair, post = w[:p], w[p:p + 2], w[p + 2:]
        for (di, dj, mid), d in PAIR_RULES[pair].items():
            k = (i + di, j + dj, pre + mid + post)
            todo[k] = todo.get(k, 0) + c * d
    return {k: v for k, v in done.items() if v}


def _reduce_y(terms: dict[Key, Fraction]) -> dict[Key, Fraction]:
    out: dict[Key, Fraction] = {}
    todo = dict(terms)
    while todo:
        (i, j, w), c = todo.popitem()
        if not c:
            continue
        if w and j:
            # y acts as x^2 + 4 next to a letter
            for k in range(j + 1):
                coeff = c * _binom(j, k) * 4 ** (j - k)
                key = (i + 2 * k, 0, w)
                out[key] = out.get(key, 0) + coeff
        elif not w and j >= 3:
            for (di, dj), d in _Y_CUBE.items():
                key = (i + di, j - 3 + dj, w)
                todo[key] = todo.get(key, 0) + c * d
        else:
            out[(i, j, w)] = out.get((i, j, w), 0) + c
    return {k: v for k, v in out.items() if v}


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def normal_form(p: GeneratorPoly, rng: random.Random | None = None) -> GeneratorPoly:
    """Rewrite words first, then powers of ``y``.

    ``rng`` picks the next term and the rewrite position at random; the result
    does not depend on it when the rule set is confluent.
    """
    return GeneratorPoly(_reduce_y(_rewrite_words(p.terms, rng)))


def multiply_in_A2(p: GeneratorPoly, q: GeneratorPoly) -> GeneratorPoly:
    return normal_form(GeneratorPoly.coerce(p) * GeneratorPoly.coerce(q))


def is_normal(p: GeneratorPoly) -> bool:
    return all(len(w) <= 1 and (j == 0 if w else j <= 2) for i, j, w in p.terms)


def normal_basis(max_x: int) -> list[GeneratorPoly]:
    """``x^i y^j`` (``j <= 2``) and ``x^i Y, x^i Z, x^i W`` for ``i <= max_x``."""
    out = [GeneratorPoly({(i, j, ""): 1}) for i in range(max_x + 1) for j in range(3)]
    out += [GeneratorPoly({(i, 0, w): 1}) for w in LETTERS for i in range(max_x + 1)]
    return out


# ---------------------------------------------------------------------------
# the three-summand picture

XPoly = tuple[Fraction, ...]  # dense coefficients of a polynomial in x, lowest degree first


def _xtrim(c: list) -> XPoly:
    while c and not c[-1]:
        c.pop()
    return tuple(Fraction(v) for v in c)


def xpoly_add(p: XPoly, q: XPoly) -> XPoly:
    n = max(len(p), len(q))
    return _xtrim([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)])


def xpoly_mul(p: XPoly, q: XPoly) -> XPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _xtrim(out)


def xpoly_scale(p: XPoly, c: Fraction) -> XPoly:
    return _xtrim([v * c for v in p])


def xpoly_pow(p: XPoly, e: int) -> XPoly:
    out: XPoly = (Fraction(1),)
    for _ in range(e):
        out = xpoly_mul(out, p)
    return out


def format_xpoly(p: XPoly) -> str:
    return format_gpoly(GeneratorPoly({(i, 0, ""): c for i, c in enumerate(p)}))


Matrix2 = tuple[tuple[XPoly, XPoly], tuple[XPoly, XPoly]]
_ZERO2: Matrix2 = (((), ()), ((), ()))
_LETTER_MATRIX: dict[str, Matrix2] = {
    "Y": (((), ()), ((), (Fraction(1),))),
    "Z": (((), ()), ((Fraction(1),), ())),
    "W": (((), (Fraction(1),)), ((), ())),
}


def mat_mul(a: Matrix2, b: Matrix2) -> Matrix2:
    return tuple(
        tuple(xpoly_add(xpoly_mul(a[i][0], b[0][j]), xpoly_mul(a[i][1], b[1][j])) for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def mat_add(a: Matrix2, b: Matrix2) -> Matrix2:
    return tuple(tuple(xpoly_add(a[i][j], b[i][j]) for j in range(2)) for i in range(2))  # type: ignore[return-value]


def mat_scale(a: Matrix2, p: XPoly) -> Matrix2:
    return tuple(tuple(xpoly_mul(a[i][j], p) for j in range(2)) for i in range(2))  # type: ignore[return-value]


_ID2: Matrix2 = (((Fraction(1),), ()), ((), (Fraction(1),)))

StructureImage = tuple[XPoly, XPoly, Matrix2]


def a2_structure_map(p: GeneratorPoly) -> StructureImage:
    """Images in ``C[x] ⊕ C[x] ⊕ C[x]⊗M_2``: ``y`` goes to ``x^2``, ``x^2 + 2`` and ``x^2 + 4``.

    ``Y, Z, W`` vanish in the first two summands and go to ``E22, E21, E12`` in
    the third.
    """
    x2 = (Fraction(0), Fraction(0), Fraction(1))
    y_images = [x2, xpoly_add(x2, (Fraction(2),)), xpoly_add(x2, (Fraction(4),))]
    c1: XPoly = ()
    c2: XPoly = ()
    m: Matrix2 = _ZERO2
    for (i, j, w), c in p.terms.items():
        xi = tuple([Fraction(0)] * i + [c])
        if not w:
            c1 = xpoly_add(c1, xpoly_mul(xi, xpoly_pow(y_images[0], j)))
            c2 = xpoly_add(c2, xpoly_mul(xi, xpoly_pow(y_images[1], j)))
        mat = _ID2
        for ch in w:
            mat = mat_mul(mat, _LETTER_MATRIX[ch])
        m = mat_add(m, mat_scale(mat, xpoly_mul(xi, xpoly_pow(y_images[2], j))))
    return c1, c2, m


def structure_product(a: StructureImage, b: StructureImage) -> StructureImage:
    return xpoly_mul(a[0], b[0]), xpoly_mul(a[1], b[1]), mat_mul(a[2], b[2])


def random_gpoly(rng: random.Random, terms: int = 3, max_x: int = 2, max_y: int = 2, max_word: int = 3) -> GeneratorPoly:
    """Random element of the free algebra with small integer coefficients."""
    out: dict[Key, Fraction] = {}
    for _ in range(terms):
        w = "".join(rng.choice(LETTERS) for _ in range(rng.randint(0, max_word)))
        k = (rng.randint(0, max_x), rng.randint(0, max_y), w)
        out[k] = out.get(k, 0) + rng.randint(-3, 3)
    return GeneratorPoly(out)


__all__ = [
    "GeneratorPoly",
    "GPolyParseError",
    "a2_structure_map",
    "format_gpoly",
    "is_normal",
    "multiply_in_A2",
    "normal_basis",
    "normal_form",
    "parse_gpoly",
    "random_gpoly",
    "structure_product",
]
