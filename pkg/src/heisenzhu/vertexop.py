"""Vertex operator modes, Zhu circle products and level-n star products.

``Y(u, x) v`` for ``u = α(-k1)···α(-kj)1`` is the normal-ordered product of the
series ``Σ_p (-1)^(k-1) C(p+k-1, k-1) α(p) x^(-p-k)``.  We split the factors of
``u`` into a creation part (modes ``p <= -k``, a power series in ``x``) and an
annihilation part (modes ``p >= 1``, a Laurent polynomial once applied to a fixed
``v``), and multiply the two.  ``α(0)`` kills the vacuum module, so ``p = 0``
never contributes, and modes ``-k < p < 0`` have vanishing binomial.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from math import comb
from typing import Mapping

from .fock import (
    FockVector,
    ModeMonomial,
    RawVec,
    insert_mode,
    raw_add,
    raw_apply_mode,
    raw_multiply,
)


def gbinom(n: int, k: int) -> int:
    """Binomial coefficient ``C(n, k)`` for any integer ``n`` and ``k >= 0``."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    return (-1) ** k * comb(k - n - 1, k)


def series_coefficient(k: int, p: int) -> int:
    """Coefficient of ``α(p) x^(-p-k)`` in ``Y(α(-k)1, x)``."""
    return (-1) ** (k - 1) * gbinom(p + k - 1, k - 1)


# ---------------------------------------------------------------------------
# creation and annihilation series


@lru_cache(maxsize=4096)
def _creation_series(c_mono: ModeMonomial, degree: int) -> tuple:
    """Coefficients ``E[0..degree]`` of the regular part for the factors ``c_mono``.

    ``E[q]`` is a raw vector (a polynomial in creation modes) and the full
    regular series is ``Σ_q E[q] x^q``.
    """
    if not c_mono:
        return ({(): 1},) + tuple({} for _ in range(degree))
    k = c_mono[0]
    rest = _creation_series(c_mono[1:], degree)
    out = []
    for q in range(degree + 1):
        acc: RawVec = {}
        for i in range(q + 1):
            tail = rest[q - i]
            if not tail:
                continue
            c = comb(i + k - 1, k - 1)
            for mono, coef in tail.items():
                key = insert_mode(mono, k + i)
                acc[key] = acc.get(key, 0) + c * coef
        out.append(acc)
    return tuple(out)


def _apply_singular(k: int, series: Mapping[int, RawVec]) -> dict[int, RawVec]:
    """Multiply a vector-valued Laurent polynomial by the singular part of ``Y(α(-k)1, x)``."""
    out: dict[int, RawVec] = {}
    for e, vec in series.items():
        top = max(sum(m) for m in vec)
        for p in range(1, top + 1):
            img = raw_apply_mode(p, vec)
            if img:
                c = series_coefficient(k, p)
                raw_add(out.setdefault(e - p - k, {}), img, c)
    return {e: v for e, v in out.items() if v}


@lru_cache(maxsize=65536)
def _annihilation_series(a_mono: ModeMonomial, v_mono: ModeMonomial) -> tuple:
    """``Π_{k in a_mono} Y^-(α(-k)1, x) v`` as a tuple of ``(exponent, raw)`` pairs."""
    if not a_mono:
        return ((0, {v_mono: 1}),)
    inner = dict(_annihilation_series(a_mono[1:], v_mono))
    return tuple(sorted(_apply_singular(a_mono[0], inner).items()))


def _sub_multisets(mono: ModeMonomial):
    """Yield ``(taken, left, multiplicity)`` over sub-multisets of ``mono``."""
    counts = sorted(Counter(mono).items(), reverse=True)
    for choice in product(*(range(n + 1) for _, n in counts)):
        taken: list[int] = []
        left: list[int] = []
        mult = 1
        for (k, n), t in zip(counts, choice):
            taken.extend([k] * t)
            left.extend([k] * (n - t))
            mult *= comb(n, t)
        yield tuple(taken), tuple(left), mult


@lru_cache(maxsize=65536)
def _mode_table(u_mono: ModeMonomial, v_mono: ModeMonomial, m_lo: int) -> tuple:
    """All nonzero ``u_m v`` with ``m >= m_lo`` as a tuple of ``(m, raw)`` pairs."""
    table: dict[int, RawVec] = {}
    for a_part, c_part, mult in _sub_multisets(u_mono):
        ann = _annihilation_series(a_part, v_mono)
        if not ann:
            continue
        e_min = ann[0][0]
        degree = -m_lo - 1 - e_min
        if degree < 0:
            continue
        crea = _creation_series(c_part, degree)
        for e, vec in ann:
            # coefficient of x^(-m-1) needs creation degree q = -m-1-e
            for q in range(0, -m_lo - 1 - e + 1):
                cq = crea[q]
                if not cq:
                    continue
                m = -1 - e - q
                raw_add(table.setdefault(m, {}), raw_multiply(cq, vec), mult)
    return tuple(sorted((m, v) for m, v in table.items() if v))


def mode_table(u_mono: ModeMonomial, v_mono: ModeMonomial, m_lo: int) -> dict[int, RawVec]:
    """``{m: u_m v}`` for ``m >= m_lo`` with ``u``, ``v`` basis monomials."""
    return {m: dict(v) for m, v in _mode_table(tuple(u_mono), tuple(v_mono), m_lo)}


def raw_mode_product(u: Mapping, m: int, v: Mapping) -> RawVec:
    out: RawVec = {}
    for um, uc in u.items():
        for vm, vc in v.items():
            t = dict(_mode_table(um, vm, m))
            if m in t:
                raw_add(out, t[m], uc * vc)
    return out


def clear_caches() -> None:
    _creation_series.cache_clear()
    _annihilation_series.cache_clear()
    _mode_table.cache_clear()


# ---------------------------------------------------------------------------
# residue products on raw vectors


def raw_weighted_residue(u_mono: ModeMonomial, v: Mapping, weights: Mapping[int, int]) -> RawVec:
    """``Σ_m weights[m] u_m v`` for a basis monomial ``u``."""
    out: RawVec = {}
    if not weights:
        return out
    m_lo = min(weights)
    for vm, vc in v.items():
        for m, vec in _mode_table(u_mono, vm, m_lo):
            w = weights.get(m)
            if w:
                raw_add(out, vec, w * vc)
    return out


@lru_cache(maxsize=None)
def circ_weights(wt: int, n: int) -> tuple:
    """Mode weights of ``u ∘_n``: ``C(wt+n, i)`` on ``u_(i-2n-2)``."""
    top = wt + n
    return tuple((i - 2 * n - 2, comb(top, i)) for i in range(top + 1))


@lru_cache(maxsize=None)
def star_weights(wt: int, n: int) -> tuple:
    """Mode weights of ``u *_n``."""
    acc: dict[int, int] = {}
    top = wt + n
    for m in range(n + 1):
        s = (-1) ** m * comb(m + n, n)
        for i in range(top + 1):
            j = i - n - m - 1
            acc[j] = acc.get(j, 0) + s * comb(top, i)
    return tuple(sorted((j, c) for j, c in acc.items() if c))


@lru_cache(maxsize=None)
def commutator_weights(wt: int) -> tuple:
    if wt == 0:
        return ()
    return tuple((i, comb(wt - 1, i)) for i in range(wt))


def raw_circ(u_mono: ModeMonomial, v: Mapping, n: int) -> RawVec:
    return raw_weighted_residue(u_mono, v, dict(circ_weights(sum(u_mono), n)))


def raw_star(u_mono: ModeMonomial, v: Mapping, n: int) -> RawVec:
    return raw_weighted_residue(u_mono, v, dict(star_weights(sum(u_mono), n)))


def _raw_bilinear(fn, u: Mapping, v: Mapping, *args) -> RawVec:
    out: RawVec = {}
    for um, uc in u.items():
        raw_add(out, fn(um, v, *args), uc)
    return out


def raw_circ_vec(u: Mapping, v: Mapping, n: int) -> RawVec:
    return _raw_bilinear(raw_circ, u, v, n)


def raw_star_vec(u: Mapping, v: Mapping, n: int) -> RawVec:
    return _raw_bilinear(raw_star, u, v, n)


# ---------------------------------------------------------------------------
# public operations on FockVector


def _lift2(fn, u: FockVector, v: FockVector) -> FockVector:
    """Extend a raw bilinear map to ``Q[a]`` coefficients."""
    layers: dict[int, RawVec] = {}
    for du, ru in u.layers().items():
        for dv, rv in v.layers().items():
            raw_add(layers.setdefault(du + dv, {}), fn(ru, rv))
    return FockVector.from_layers(layers)


def mode_product(u: FockVector, m: int, v: FockVector) -> FockVector:
    """The coefficient ``u_m v`` of ``x^(-m-1)`` in ``Y(u, x) v``."""
    return _lift2(lambda ru, rv: raw_mode_product(ru, m, rv), u, v)


def circ_n(u: FockVector, v: FockVector, n: int) -> FockVector:
    """``Res_x (1+x)^(wt u + n) Y(u, x) v / x^(2n+2)``, linear in ``u``."""
    if n < 0:
        raise ValueError("level must be non-negative")
    return _lift2(lambda ru, rv: raw_circ_vec(ru, rv, n), u, v)


def star_n(u: FockVector, v: FockVector, n: int) -> FockVector:
    """The level-``n`` Zhu product ``u *_n v``."""
    if n < 0:
        raise ValueError("level must be non-negative")
    return _lift2(lambda ru, rv: raw_star_vec(ru, rv, n), u, v)


def commutator_residue(u: FockVector, v: FockVector) -> FockVector:
    """``Res_x Y(u, x) v (1+x)^(wt u - 1)``; zero for ``wt u = 0``."""

    def fn(ru, rv):
        return _raw_bilinear(
            lambda um, vv: raw_weighted_residue(um, vv, dict(commutator_weights(sum(um)))), ru, rv
        )

    return _lift2(fn, u, v)


# ---------------------------------------------------------------------------
# independent route: the iterate formula


def mode_product_iterate(u_mono: ModeMonomial, m: int, v_mono: ModeMonomial) -> RawVec:
    """``u_m v`` by peeling one factor at a time with the iterate formula.

    For ``u = a_(-1) b`` with ``a = α(-k)1`` single-mode,
    ``(a_(-1) b)_m = Σ_i a_(-1-i) b_(m+i) + Σ_i b_(m-1-i) a_i``.
    """
    return dict(_iterate(tuple(u_mono), m, tuple(v_mono)))


def _single_mode(k: int, j: int, vec: Mapping) -> RawVec:
    """``(α(-k)1)_j`` applied to a raw vector."""
    c = gbinom(j, k - 1) * (-1) ** (k - 1)
    if not c:
        return {}
    p = j - k + 1
    if p == 0:
        return {}
    img = raw_apply_mode(p, vec)
    return {mm: cc * c for mm, cc in img.items()}


@lru_cache(maxsize=None)
def _iterate(u_mono: ModeMonomial, m: int, v_mono: ModeMonomial) -> tuple:
    if not u_mono:
        return (((v_mono, 1),) if m == -1 else ())
    k, b = u_mono[0], u_mono[1:]
    v = {v_mono: 1}
    if not b:
        return tuple(_single_mode(k, m, v).items())
    out: RawVec = {}
    wb, wv = sum(b), sum(v_mono)
    # first sum: b_(m+i) v vanishes once m + i > wb + wv - 1
    i = 0
    while m + i <= wb + wv - 1:
        inner = dict(_iterate(b, m + i, v_mono))
        if inner:
            raw_add(out, _single_mode(k, -1 - i, inner))
        i += 1
    # second sum: a_i v with i >= k, mode i-k+1 <= wt v
    for i in range(k, k + wv):
        av = _single_mode(k, i, v)
        for mono, c in av.items():
            raw_add(out, dict(_iterate(b, m - 1 - i, mono)), c)
    return tuple(out.items())


# ---------------------------------------------------------------------------
# closed multiplication formula


def star_formula_closed(exponents: Mapping[int, int] | tuple, v: FockVector, n: int) -> FockVector:
    """``α(-t)^(i_t)···α(-1)^(i_1)1 *_n v`` from the closed creation-mode sum plus corrections.

    ``exponents`` maps ``s -> i_s`` (or is the tuple ``(i_1, ..., i_t)``).  The
    creation part is the explicit sum over ``m``, ``j`` and compositions
    ``k_1 + ... + k_p = n - j`` with the weights ``C(k + s - 1, s - 1)``.  The
    correction collects the normal-ordered terms with at least one annihilator;
    for a single ``α(-t)`` it is the explicit sum over negative ``j``.
    """
    if isinstance(exponents, tuple):
        exps = {s + 1: i for s, i in enumerate(exponents) if i}
    else:
        exps = {s: i for s, i in exponents.items() if i}
    factors: list[int] = []
    for s in sorted(exps):
        factors.extend([s] * exps[s])
    r = sum(factors)
    u_mono = tuple(sorted(factors, reverse=True))

    def fn(rv: Mapping) -> RawVec:
        out = _closed_creation_part(tuple(factors), r, n, rv)
        if len(factors) == 1:
            raw_add(out, _g_single(factors[0], n, rv))
        elif factors:
            raw_add(out, _g_general(u_mono, n, rv))
        return out

    layers = {d: fn(rv) for d, rv in v.layers().items()}
    return FockVector.from_layers(layers)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _closed_creation_part(factors: tuple, r: int, n: int, v: Mapping) -> RawVec:
    out: RawVec = {}
    p = len(factors)
    for m in range(n + 1):
        sm = (-1) ** m * comb(m + n, n)
        for j in range(-m, n + 1):
            c = sm * gbinom(n + r, j + m)
            if not c:
                continue
            if p == 0:
                if j == n:
                    raw_add(out, v, c)
                continue
            acc: RawVec = {}
            for ks in _compositions(n - j, p):
                coef = 1
                mono: ModeMonomial = ()
                for kk, s in zip(ks, factors):
                    coef *= comb(kk + s - 1, s - 1)
                    mono = insert_mode(mono, kk + s)
                acc[mono] = acc.get(mono, 0) + coef
            raw_add(out, raw_multiply(acc, v), c)
    return out


def _g_single(t: int, n: int, v: Mapping) -> RawVec:
    """Correction for ``α(-t)1 *_n v``: the terms ``α(-j-t) v`` with ``j <= -1``."""
    out: RawVec = {}
    top = max((sum(mm) for mm in v), default=0)
    for m in range(n + 1):
        sm = (-1) ** m * comb(m + n, n)
        # α(-j-t) v is nonzero only for -j-t <= top
        for j in range(-1, -t - top - 1, -1):
            c = sm * gbinom(n + t, m + n - j) * gbinom(j + t - 1, t - 1)
            if c:
                mode = -j - t
                raw_add(out, raw_apply_mode(-mode, v) if mode < 0 else _annihilate(mode, v), c)
    return out


def _annihilate(mode: int, v: Mapping) -> RawVec:
    return raw_apply_mode(mode, v) if mode > 0 else {}


def _g_general(u_mono: ModeMonomial, n: int, v: Mapping) -> RawVec:
    """Normal-ordered terms of ``u *_n v`` with at least one annihilating factor."""
    weights = dict(star_weights(sum(u_mono), n))
    m_lo = min(weights)
    out: RawVec = {}
    for vm, vc in v.items():
        for a_part, c_part, mult in _sub_multisets(u_mono):
            if not a_part:
                continue
            ann = _annihilation_series(a_part, vm)
            if not ann:
                continue
            degree = -m_lo - 1 - ann[0][0]
            if degree < 0:
                continue
            crea = _creation_series(c_part, degree)
            for e, vec in ann:
                for q in range(0, degree + 1):
                    w = weights.get(-1 - e - q)
                    if w and crea[q]:
                        raw_add(out, raw_multiply(crea[q], vec), w * mult * vc)
    return out


__all__ = [
    "circ_n",
    "commutator_residue",
    "gbinom",
    "mode_product",
    "mode_product_iterate",
    "mode_table",
    "star_formula_closed",
    "star_n",
]
