"""Irreducible modules ``M_a(1, λ)`` with symbolic ``λ`` and zero-mode actions.

Vectors are finite sums ``Σ c · α(-k_1)...α(-k_r) v_λ`` with coefficients in
``Q[a, λ]``.  ``α(0)`` acts as ``λ`` and positive modes contract against
creation modes before annihilating ``v_λ``.

Zero modes of Fock states vanish on ``Ω_n`` for every element of ``O_n(V)``,
so a nonzero zero-mode image on the low-degree window disproves membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Mapping

from .coeff import Poly
from .fock import (
    FockVector,
    ModeMonomial,
    basis_up_to,
    format_terms,
    parse_terms,
    raw_add,
    raw_apply_mode,
    raw_virasoro,
)
from .vertexop import series_coefficient

LAMBDA = Poly.var("λ")
A = Poly.var("a")
KET = "|λ>"


class ModuleVector:
    """Immutable vector of ``M_a(1, λ)``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ModeMonomial, Poly | int | Fraction] | None = None):
        clean: dict[ModeMonomial, Poly] = {}
        for mono, c in (terms or {}).items():
            c = Poly.coerce(c)
            if not c.is_zero():
                clean[tuple(sorted(mono, reverse=True))] = c
        self._terms = clean

    @classmethod
    def highest(cls) -> "ModuleVector":
        """The highest-weight vector ``v_λ``."""
        return cls({(): 1})

    @classmethod
    def monomial(cls, mono, coeff=1) -> "ModuleVector":
        return cls({tuple(mono): coeff})

    @classmethod
    def from_fock(cls, v: FockVector) -> "ModuleVector":
        return cls(v.terms)

    @property
    def terms(self) -> dict[ModeMonomial, Poly]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self._terms)
        raw_add(out, other._terms)
        return ModuleVector(out)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def __mul__(self, s) -> "ModuleVector":
        s = Poly.coerce(s)
        return ModuleVector({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"ModuleVector({format_module(self)!r})"

    def __str__(self) -> str:
        return format_module(self)

    def max_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def subs(self, a=None, lam=None) -> "ModuleVector":
        return ModuleVector({m: c.subs(a=a, lam=lam) for m, c in self._terms.items()})


def format_module(w: ModuleVector) -> str:
    return format_terms(w.terms, KET)


def parse_module(text: str) -> ModuleVector:
    """Parse the element grammar with ``|λ>`` (or ``|lam>``) as the ket."""
    return ModuleVector(parse_terms(text, KET, allow_lambda=True))


def module_apply_mode(m: int, w: ModuleVector) -> ModuleVector:
    return ModuleVector(raw_apply_mode(m, w.terms, zero_value=LAMBDA))


def virasoro_module(nn: int, w: ModuleVector) -> ModuleVector:
    """``L(nn)`` with ``ω = ½α(-1)² + aα(-2)`` on ``M_a(1, λ)``."""
    return ModuleVector(raw_virasoro(nn, w.terms, a_value=A, zero_value=LAMBDA))


# ---------------------------------------------------------------------------
# modes of Fock states acting on modules


def _distributions(mult: int, lo: int, hi: int) -> Iterator[tuple[dict[int, int], int]]:
    """Ways to give nonzero indices in ``[lo, hi]`` to some of ``mult`` equal factors.

    Yields ``(counts, zeros)`` where ``counts`` maps index to number of factors.
    """
    values = [p for p in range(lo, hi + 1) if p != 0]

    def rec(i: int, left: int, acc: dict[int, int]):
        if i == len(values):
            yield dict(acc), left
            return
        for c in range(left + 1):
            if c:
                acc[values[i]] = c
            yield from rec(i + 1, left - c, acc)
            acc.pop(values[i], None)

    yield from rec(0, mult, {})


@lru_cache(maxsize=65536)
def _factor_options(k: int, mult: int, lo: int, hi: int) -> tuple:
    """Per distinct part ``k``: (index counts, number at index 0, weighted coefficient)."""
    out = []
    for counts, zeros in _distributions(mult, lo, hi):
        coeff = Fraction(factorial(mult), factorial(zeros))
        for p, c in counts.items():
            coeff /= factorial(c)
            coeff *= series_coefficient(k, p) ** c
        if not coeff:
            continue
        coeff *= series_coefficient(k, 0) ** zeros
        if coeff:
            out.append((tuple(sorted(counts.items())), zeros, coeff))
    return tuple(out)


def module_vertex_mode(u: ModeMonomial, m: int, w: ModuleVector) -> ModuleVector:
    """``u_m w`` for a Fock basis monomial ``u`` acting on a module vector.

    ``Y(u, x)`` is the normal-ordered product of the fields of the parts of
    ``u``; each part ``k`` contributes ``Σ_p c(k, p) α(p) x^{-p-k}``.
    """
    if w.is_zero():
        return ModuleVector()
    top = w.max_degree()
    s = m + 1 - sum(u)  # required sum of all indices
    if s > top:
        return ModuleVector()
    creation_cap = top - s  # total of |p| over creation indices
    parts: dict[int, int] = {}
    for k in u:
        parts[k] = parts.get(k, 0) + 1
    keys = sorted(parts)
    options = [_factor_options(k, parts[k], -creation_cap, top) for k in keys]
    out: dict[ModeMonomial, Poly] = {}

    def rec(i: int, coeff: Fraction, zeros: int, ann: list[int], cre: list[int], ann_sum: int, cre_sum: int):
        if ann_sum > top or cre_sum > creation_cap:
            return
        if i == len(keys):
            if ann_sum - cre_sum != s:
                return
            vec = w.terms
            for p in ann:
                vec = raw_apply_mode(p, vec)
                if not vec:
                    return
            for p in cre:
                vec = raw_apply_mode(p, vec)
            raw_add(out, vec, LAMBDA ** zeros * coeff)
            return
        for counts, z, c in options[i]:
            a2, c2, asum, csum = list(ann), list(cre), ann_sum, cre_sum
            for p, cnt in counts:
                if p > 0:
                    a2 += [p] * cnt
                    asum += p * cnt
                else:
                    c2 += [p] * cnt
                    csum -= p * cnt
            rec(i + 1, coeff * c, zeros + z, a2, c2, asum, csum)

    rec(0, Fraction(1), 0, [], [], 0, 0)
    return ModuleVector(out)


def zero_mode(u: FockVector, w: ModuleVector) -> ModuleVector:
    """``o(u) w = u_{wt u - 1} w``, extended linearly over the components of ``u``."""
    out: dict[ModeMonomial, Poly] = {}
    for mono, c in u.terms.items():
        img = module_vertex_mode(mono, sum(mono) - 1, w)
        raw_add(out, img.terms, c)
    return ModuleVector(out)


# ---------------------------------------------------------------------------
# witnesses


def witness_window(n: int) -> list[ModeMonomial]:
    """Monomials of degree ``<= n`` in search order; for ``n = 2`` this is ``v_λ, α(-1), α(-1)², α(-2)``."""
    return sorted(basis_up_to(n), key=lambda m: (sum(m), -len(m)))


@dataclass
class Witness:
    vector: ModuleVector
    image: ModuleVector

    def describe(self) -> str:
        scalar = _scalar_ratio(self.image, self.vector)
        if scalar is not None:
            return f"acts as {scalar} on {format_module(self.vector)}"
        return f"maps {format_module(self.vector)} to {format_module(self.image)}"

    def __bool__(self) -> bool:
        return True


@dataclass
class NotFound:
    level: int

    def describe(self) -> str:
        return f"no witness on degree <= {self.level} vectors"

    def __bool__(self) -> bool:
        return False


def _scalar_ratio(image: ModuleVector, vec: ModuleVector) -> Poly | None:
    (mono, c0), = vec.terms.items() if len(vec.terms) == 1 else ((None, None),)
    if mono is None or set(image.terms) != {mono} or not c0.is_constant():
        return None
    return image.terms[mono] / c0.constant()


def nonmembership_witness(p, n: int) -> Witness | NotFound:
    """First window vector on which the zero mode of ``p`` is nonzero.

    ``p`` is a :class:`FockVector` or a generator polynomial, which is realized
    through ``*_n`` products of the generator vectors first.
    """
    from .gpoly import GeneratorPoly

    if isinstance(p, GeneratorPoly):
        from .realize import realize

        p = realize(p, n).full
    for mono in witness_window(n):
        vec = ModuleVector.monomial(mono)
        img = zero_mode(p, vec)
        if not img.is_zero():
            return Witness(vec, img)
    return NotFound(n)


__all__ = [
    "ModuleVector",
    "NotFound",
    "Witness",
    "format_module",
    "module_apply_mode",
    "module_vertex_mode",
    "nonmembership_witness",
    "parse_module",
    "virasoro_module",
    "witness_window",
    "zero_mode",
]
