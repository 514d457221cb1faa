"""Triangular rewriting of Fock monomials modulo single O_n generators.

Two families of generators have a unique leading monomial and let us push any
vector onto monomials with small parts:

* ``α(-k)1 ∘_n w`` is a pure creation polynomial times ``w`` whose top-weight
  term is ``C(2n+k, k-1) α(-(2n+1+k)) w``; it removes every part ``>= 2n+2``
  while lowering weight.
* ``shift(w')`` with ``w'`` obtained by lowering one part ``2n+1`` to ``2n``
  has the term ``2n·(#parts equal to 2n in w')`` on the monomial and otherwise
  only monomials with fewer parts ``2n+1``, parts ``>= 2n+2``, or lower weight.

After both rules, only parts ``<= max(2n, 1)`` remain ("standard" monomials).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Mapping

from .fock import ModeMonomial, RawVec, raw_add, raw_shift
from .vertexop import raw_circ


class Origin(tuple):
    """Tag of a spanning element: ``("circ", u, v)`` or ``("shift", w)``."""

    __slots__ = ()

    @classmethod
    def circ(cls, u: ModeMonomial, v: ModeMonomial) -> "Origin":
        return cls(("circ", tuple(u), tuple(v)))

    @classmethod
    def shift(cls, w: ModeMonomial) -> "Origin":
        return cls(("shift", tuple(w)))

    @property
    def kind(self) -> str:
        return self[0]

    def top_weight(self, n: int) -> int:
        if self[0] == "shift":
            return sum(self[1]) + 1
        return sum(self[1]) + sum(self[2]) + 2 * n + 1

    def vector(self, n: int) -> RawVec:
        if self[0] == "shift":
            return raw_shift({self[1]: 1})
        return raw_circ(self[1], {self[2]: 1}, n)

    def tag(self) -> str:
        from .fock import format_monomial

        if self[0] == "shift":
            return f"shift({format_monomial(self[1])})"
        return f"circ({format_monomial(self[1])},{format_monomial(self[2])})"

    def __repr__(self) -> str:
        return self.tag()


def standard_bound(n: int) -> int:
    """Largest part allowed in a standard monomial at level ``n``."""
    return max(2 * n, 1)


def is_standard(mono: ModeMonomial, n: int) -> bool:
    return not mono or mono[0] <= standard_bound(n)


def rule_for(mono: ModeMonomial, n: int) -> tuple[Origin, Fraction] | None:
    """The generator whose leading term is ``mono`` and the leading coefficient."""
    if not mono:
        return None
    top = mono[0]
    if top >= 2 * n + 2:
        k = top - 2 * n - 1
        w = mono[1:]
        origin = Origin.circ((k,), w)
        lead = origin_vector(origin, n).get(mono)
        return origin, Fraction(lead)
    if n >= 1 and top == 2 * n + 1:
        w = list(mono)
        w[0] = 2 * n
        w = tuple(sorted(w, reverse=True))
        origin = Origin.shift(w)
        lead = origin_vector(origin, n).get(mono)
        return origin, Fraction(lead)
    return None


_VEC_CACHE: dict[tuple, RawVec] = {}


def origin_vector(origin: Origin, n: int) -> RawVec:
    key = (origin, n)
    vec = _VEC_CACHE.get(key)
    if vec is None:
        vec = origin.vector(n)
        if len(_VEC_CACHE) < 200000:
            _VEC_CACHE[key] = vec
    return vec


def _order_key(mono: ModeMonomial, n: int) -> tuple:
    """Heap key: larger weight first, then parts beyond the bound, then #(2n+1)."""
    high = 2 * n + 1
    return (-sum(mono), -(mono[0] if mono else 0), -mono.count(high))


class Reducer:
    """Memoised projection onto standard monomials along the rule generators."""

    def __init__(self, n: int):
        self.n = n
        self._memo: dict[ModeMonomial, RawVec] = {}

    def reduce_monomial(self, mono: ModeMonomial) -> RawVec:
        memo = self._memo
        if mono in memo:
            return memo[mono]
        # iterative post-order evaluation to avoid deep recursion
        stack = [mono]
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            if is_standard(cur, self.n):
                memo[cur] = {cur: 1}
                stack.pop()
                continue
            origin, lead = rule_for(cur, self.n)
            vec = origin_vector(origin, self.n)
            missing = [m for m in vec if m != cur and m not in memo]
            if missing:
                stack.extend(missing)
                continue
            out: RawVec = {}
            for m, c in vec.items():
                if m != cur:
                    raw_add(out, memo[m], -Fraction(c) / lead)
            memo[cur] = out
            stack.pop()
        return memo[mono]

    def reduce(self, vec: Mapping) -> RawVec:
        out: RawVec = {}
        for m, c in vec.items():
            raw_add(out, self.reduce_monomial(m), c)
        return out

    def reduce_tracked(self, vec: Mapping) -> tuple[RawVec, dict[Origin, Fraction]]:
        """Reduce while recording rule coefficients: ``vec = rest + Σ c·rule``."""
        n = self.n
        work: RawVec = dict(vec)
        combo: dict[Origin, Fraction] = {}
        heap = [(_order_key(m, n), m) for m in work if not is_standard(m, n)]
        heapq.heapify(heap)
        while heap:
            _, mono = heapq.heappop(heap)
            c = work.get(mono)
            if not c:
                continue
            origin, lead = rule_for(mono, n)
            f = Fraction(c) / lead
            combo[origin] = combo.get(origin, 0) + f
            for m, gc in origin_vector(origin, n).items():
                had = m in work
                v = work.get(m, 0) - f * gc
                if v:
                    work[m] = v
                    if not had and not is_standard(m, n):
                        heapq.heappush(heap, (_order_key(m, n), m))
                else:
                    work.pop(m, None)
        return work, {o: c for o, c in combo.items() if c}


_REDUCERS: dict[int, Reducer] = {}


def reducer(n: int) -> Reducer:
    r = _REDUCERS.get(n)
    if r is None:
        r = _REDUCERS[n] = Reducer(n)
    return r
