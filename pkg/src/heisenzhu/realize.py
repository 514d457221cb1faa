"""Fock realizations of generator polynomials and reduction onto them.

The letters are realized through the five generator vectors
``x = α(-1)1``, ``y = α(-1)^2 1``, ``ỹ = α(-1)α(-4)1``, ``z = α(-1)^2 α(-4)1``
and ``z̃ = α(-1)α(-4)^2 1`` with

    Y = (x^2 - 2y - ỹ)/12,  Z = (x^3 + 2xỹ + z̃)/32,
    W = -(2z + z̃ + 2xy - 2xỹ - 3x^3)/40,

where products are ``*_n``.  A term ``x^i y^j L_1 ... L_k`` is realized as the
right-nested product ``f_1 *_n (f_2 *_n (... *_n f_m))`` of its factors in the
order ``x, ..., y, ..., L_1, ..., L_k``.

Each realized vector travels with a low-weight representative and a
certificate that the difference lies in ``O_n(V)``.  Products reuse the
certificates of their factors through the ideal property, so no single
linear solve has to reach the weight of the full product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .certificate import Certificate, ProductTerm
from .coeff import Poly
from .fock import FockVector, parse_element, raw_add
from .gpoly import GeneratorPoly, normal_basis, normal_form
from .linalg import independent_subset, solve_exact
from .vertexop import star_n
from .zhu import normal_form_vector

GENERATOR_TEXT = {
    "x": "a(-1)|0>",
    "y": "a(-1)^2|0>",
    "yt": "a(-4) a(-1)|0>",
    "z": "a(-4) a(-1)^2|0>",
    "zt": "a(-4)^2 a(-1)|0>",
}


def generator_vector(name: str) -> FockVector:
    """One of ``x, y, yt, z, zt`` (``yt`` and ``zt`` stand for ``ỹ`` and ``z̃``)."""
    return parse_element(GENERATOR_TEXT[name])


@dataclass
class Realized:
    """A realized vector ``full``, its representative ``rep`` and a certificate for ``full - rep``."""

    full: FockVector
    rep: FockVector
    certificate: Certificate

    @property
    def level(self) -> int:
        return self.certificate.level

    def trivial(self) -> bool:
        return self.certificate.target.is_zero() and not self.certificate.terms and not self.certificate.products


def _exact(v: FockVector, n: int) -> Realized:
    return Realized(v, v, Certificate(target=FockVector(), level=n, cutoff=0))


def _finish(full: FockVector, raw_rep: FockVector, n: int, products: list[ProductTerm]) -> Realized:
    rep, flat = normal_form_vector(raw_rep, n)
    cert = Certificate(
        target=full - rep, level=n, cutoff=flat.cutoff, terms=flat.terms, products=products
    )
    return Realized(full, rep, cert)


def realized_product(a: Realized, b: Realized) -> Realized:
    """``a.full *_n b.full`` with representative ``NF(a.rep *_n b.rep)``."""
    n = a.level
    full = star_n(a.full, b.full, n)
    products: list[ProductTerm] = []
    if not a.trivial():
        products.append(ProductTerm("right", b.full, Poly.const(1), a.certificate))
    if not b.trivial():
        products.append(ProductTerm("left", a.rep, Poly.const(1), b.certificate))
    return _finish(full, star_n(a.rep, b.rep, n), n, products)


def realized_combination(parts: list[tuple[Fraction, Realized]], n: int) -> Realized:
    full = FockVector()
    rep = FockVector()
    products: list[ProductTerm] = []
    for c, r in parts:
        if not c:
            continue
        full = full + r.full * c
        rep = rep + r.rep * c
        if not r.trivial():
            products.append(ProductTerm("scale", FockVector.vacuum(), Poly.const(c), r.certificate))
    return _finish(full, rep, n, products)


@lru_cache(maxsize=None)
def realized_generator(name: str, n: int) -> Realized:
    return _exact(generator_vector(name), n)


@lru_cache(maxsize=None)
def realized_letter(letter: str, n: int) -> Realized:
    """``x``, ``y`` or one of ``Y, Z, W`` realized at level ``n``."""
    g = lambda s: realized_generator(s, n)  # noqa: E731
    mul = realized_product
    if letter in ("x", "y"):
        return g(letter)
    if letter == "Y":
        xx = mul(g("x"), g("x"))
        parts = [(Fraction(1, 12), xx), (Fraction(-2, 12), g("y")), (Fraction(-1, 12), g("yt"))]
    elif letter == "Z":
        xxx = mul(g("x"), mul(g("x"), g("x")))
        parts = [(Fraction(1, 32), xxx), (Fraction(2, 32), mul(g("x"), g("yt"))), (Fraction(1, 32), g("zt"))]
    elif letter == "W":
        xxx = mul(g("x"), mul(g("x"), g("x")))
        parts = [
            (Fraction(-2, 40), g("z")),
            (Fraction(-1, 40), g("zt")),
            (Fraction(-2, 40), mul(g("x"), g("y"))),
            (Fraction(2, 40), mul(g("x"), g("yt"))),
            (Fraction(3, 40), xxx),
        ]
    else:
        raise ValueError(f"unknown letter {letter!r}")
    return realized_combination(parts, n)


_TERM_CACHE: dict[tuple, Realized] = {}


def realized_term(i: int, j: int, word: str, n: int) -> Realized:
    """Right-nested product for ``x^i y^j word``."""
    key = (i, j, word, n)
    hit = _TERM_CACHE.get(key)
    if hit is not None:
        return hit
    factors = ["x"] * i + ["y"] * j + list(word)
    if not factors:
        out = _exact(FockVector.vacuum(), n)
    elif len(factors) == 1:
        out = realized_letter(factors[0], n)
    else:
        # peel the first factor so that shared tails are cached
        ri, rj = max(i - 1, 0), (j - 1 if i == 0 and j else j)
        tail_word = word[1:] if i == 0 and j == 0 else word
        out = realized_product(realized_letter(factors[0], n), realized_term(ri, rj, tail_word, n))
    _TERM_CACHE[key] = out
    return out


def realize(p: GeneratorPoly, n: int = 2) -> Realized:
    """Realize a generator polynomial as a Fock vector, termwise and verbatim."""
    parts = [(c, realized_term(i, j, w, n)) for (i, j, w), c in p.items()]
    if not parts:
        return _exact(FockVector(), n)
    if len(parts) == 1 and parts[0][0] == 1:
        return parts[0][1]
    return realized_combination(parts, n)


def relation_certificate(p: GeneratorPoly, n: int = 2) -> tuple[Realized, Certificate | None]:
    """Certificate that the realization of ``p`` lies in ``O_n(V)``, or ``None``.

    Succeeds exactly when the representative of the realization vanishes.
    """
    r = realize(p, n)
    if not r.rep.is_zero():
        return r, None
    return r, r.certificate


# ---------------------------------------------------------------------------
# reduction onto the generators


def _basis_reps(max_x: int) -> list[tuple[GeneratorPoly, Realized]]:
    return [(b, realize(b, 2)) for b in normal_basis(max_x)]


def reduce_level2(v: FockVector, max_x: int | None = None) -> tuple[GeneratorPoly, Certificate]:
    """Express ``v`` modulo ``O_2(V)`` in the normal basis of generator polynomials.

    Returns ``p`` in normal form and a certificate for ``v - realize(p)``.  The
    representative of ``v`` is matched against representatives of realized
    basis elements; the match is exact linear algebra over the non-pivot
    monomials.
    """
    n = 2
    if max_x is None:
        max_x = max(v.max_weight(), 0)
    rep_v, cert_v = normal_form_vector(v, n)
    layers = rep_v.layers()
    basis = _basis_reps(max_x)
    cols = sorted({m for _, r in basis for m in r.rep.terms} | set(rep_v.terms), key=lambda m: (sum(m), m))
    rows = [{m: c.constant() for m, c in r.rep.terms.items()} for _, r in basis]
    coeffs: dict[int, dict[int, Fraction]] = {}
    picked, coords = independent_subset(rows, cols)
    sub = [rows[i] for i in picked]
    for deg, layer in layers.items():
        sol = solve_exact(sub, [cols[j] for j in coords], layer)
        if sol is None:
            raise ArithmeticError("representatives of the normal basis do not span")
        check: dict = {}
        for row, c in zip(sub, sol):
            raw_add(check, row, c)
        if check != {m: c for m, c in layer.items() if c}:
            raise ArithmeticError(f"no expression found for a-degree {deg} with x-degree up to {max_x}")
        coeffs[deg] = {picked[k]: c for k, c in enumerate(sol) if c}
    if any(coeffs.get(d) for d in coeffs if d):
        raise ValueError("vector depends on a; reduce each a-layer separately")
    result = GeneratorPoly()
    parts: list[tuple[Fraction, Realized]] = []
    for idx, c in sorted(coeffs.get(0, {}).items()):
        b, r = basis[idx]
        result = result + b * c
        parts.append((c, r))
    products = [ProductTerm("scale", FockVector.vacuum(), Poly.const(1), cert_v)]
    full = FockVector()
    for c, r in parts:
        full = full + r.full * c
        if not r.trivial():
            products.append(ProductTerm("scale", FockVector.vacuum(), Poly.const(-c), r.certificate))
    cert = Certificate(target=v - full, level=n, cutoff=0, products=products)
    return normal_form(result), cert


def clear_caches() -> None:
    _TERM_CACHE.clear()
    realized_letter.cache_clear()
    realized_generator.cache_clear()


__all__ = [
    "Realized",
    "generator_vector",
    "realize",
    "realized_letter",
    "realized_product",
    "reduce_level2",
    "relation_certificate",
]
