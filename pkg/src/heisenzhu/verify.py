"""Registry of relations in the level-zero, level-one and level-two quotients, with a runner.

Each :class:`RelationEntry` turns one stated equivalence into executable
checks.  Right-hand sides are written out here as literals (mode monomials,
operator polynomials and generator polynomials) and are never produced by the
code paths under test.  Four kinds of entry exist:

``membership``
    the difference of the two sides lies in ``O_n(V)``;
``membership-with-filtration``
    the difference lies in ``O_n(V) + F_r(1)`` (or, for a few entries, in
    ``O_2(V)`` plus the span of monomials with at most one ``α(-1)``);
``module-table``
    zero-mode actions on the low-degree vectors of ``M_a(1, λ)`` match a table;
``oracle-equality``
    two independent computations agree exactly.

Statements quantified over all ``v`` or over exponents are run on samples and
are labelled "verified on sampled parameters".  Membership checks never report
a failure on their own: a difference that is not cleared within the budget is
``Unknown``.  ``Failed`` is reserved for table or oracle mismatches and for
certificates that do not replay, and always carries the exact residual.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Any, Callable, Iterable

from .certificate import Certificate, ProductTerm
from .coeff import Poly
from .fock import FockVector, basis_of_weight, format_element, raw_multiply, virasoro_mode
from .fockmod import LAMBDA, ModuleVector, format_module, zero_mode
from .gpoly import GeneratorPoly, parse_gpoly
from .linalg import independent_subset, solve_exact
from .realize import Realized, generator_vector, realize, realized_letter, reduce_level2
from .vertexop import gbinom, star_n
from .zhu import CutoffTooSmall, Proven, membership, normal_form_vector, set_cache_dir

SECTIONS = ("background", "generators", "relations", "structure", "appendix")
KINDS = ("membership", "membership-with-filtration", "module-table", "oracle-equality")
DEFAULT_BUDGET = 40
DEFAULT_BOUND = 3

PROVEN, REPRODUCED, UNKNOWN, FAILED = "Proven", "Reproduced", "Unknown", "Failed"
SAMPLED_LABEL = "verified on sampled parameters"


# ---------------------------------------------------------------------------
# literal building blocks


def E(i1: int = 0, i2: int = 0, i3: int = 0, i4: int = 0, i5: int = 0) -> FockVector:
    """``α(-1)^i1 α(-2)^i2 α(-3)^i3 α(-4)^i4 α(-5)^i5 1``; zero if an exponent is negative."""
    exps = (i1, i2, i3, i4, i5)
    if min(exps) < 0:
        return FockVector()
    parts: tuple[int, ...] = ()
    for k in range(5, 0, -1):
        parts += (k,) * exps[k - 1]
    return FockVector.monomial(parts)


def mode(k: int) -> FockVector:
    """The single creation mode ``α(-k)`` as an operator polynomial."""
    return FockVector.monomial((k,))


def mul(*vs: FockVector) -> FockVector:
    """Commutative product of creation-mode polynomials, the last one applied to ``1``."""
    out = FockVector.vacuum()
    for v in vs:
        out = FockVector(raw_multiply(out.terms, v.terms))
    return out


def star(u: FockVector, v: FockVector, n: int = 2) -> FockVector:
    return star_n(u, v, n)


def x_power(k: int, n: int = 2) -> FockVector:
    """Right-nested ``x *_n (x *_n (... x))`` with ``k`` factors."""
    out = FockVector.vacuum()
    for _ in range(k):
        out = star(X, out, n)
    return out


def L_minus_one(v: FockVector) -> FockVector:
    """``v_{-2} 1 = L(-1) v``."""
    return virasoro_mode(-1, v)


F = Fraction


ONE = FockVector.vacuum()
X = mode(1)
Yv = E(2)
A_OP = mode(1) + mode(2)
B_OP = mode(2) + mode(3)
C_OP = mode(3) + mode(4)
D_OP = mode(4) + mode(5)
P_OP = mode(3) * 10 + mode(4) * 15 + mode(5) * 6

#: samples for statements that hold for every ``v``
FOR_ALL_V = (ONE, E(1), E(0, 1), E(2))
#: samples ``(v, r)`` with ``v ∈ F_r(1)``
FILTERED_V = ((ONE, 0), (E(1), 1), (E(0, 1), 1), (E(2), 2))


def _vlabel(v: FockVector) -> str:
    return "v=" + format_element(v)


# ---------------------------------------------------------------------------
# payloads


@dataclass
class Sample:
    """A membership claim ``target ∈ O_n(V)`` (plus an optional extra span)."""

    label: str
    level: int
    target: Callable[[], FockVector] | None = None
    gpoly: GeneratorPoly | None = None
    filtration: int | None = None
    span: str | None = None  # "R": monomials with at most one α(-1)
    custom: Callable[[], Certificate] | None = None
    weight: int = 0  # weight of the stated sides, for differences that vanish identically


@dataclass
class ModuleCheck:
    label: str
    operator: Callable[[], FockVector]
    vector: ModuleVector
    expected: ModuleVector


@dataclass
class OracleCheck:
    label: str
    lhs: Callable[[], Any]
    rhs: Callable[[], Any]


Payload = Sample | ModuleCheck | OracleCheck


@dataclass
class RelationEntry:
    id: str
    section: str
    kind: str
    statement: str
    build: Callable[[int], list[Payload]]
    sampled: bool = False

    def payload(self, bound: int = DEFAULT_BOUND) -> list[Payload]:
        return self.build(bound)


@dataclass
class SampleResult:
    label: str
    status: str
    cutoff: int | None = None
    certificate: Certificate | None = None
    residual: str | None = None
    remainder: str | None = None
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"label": self.label, "status": self.status}
        if self.cutoff is not None:
            out["cutoff"] = self.cutoff
        if self.residual is not None:
            out["residual"] = self.residual
        if self.remainder is not None:
            out["remainder"] = self.remainder
        if self.note:
            out["note"] = self.note
        if self.certificate is not None:
            out["certificate_size"] = self.certificate.size()
        return out


@dataclass
class EntryResult:
    id: str
    section: str
    kind: str
    statement: str
    status: str
    cutoff: int | None
    seconds: float
    samples: list[SampleResult]
    sampled: bool = False
    certificates: list[str] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.status == FAILED

    def residuals(self) -> list[str]:
        return [s.residual for s in self.samples if s.residual is not None]

    def to_dict(self) -> dict[str, Any]:
        out = {
            "id": self.id,
            "section": self.section,
            "kind": self.kind,
            "statement": self.statement,
            "status": self.status,
            "cutoff": self.cutoff,
            "seconds": round(self.seconds, 3),
            "scope": SAMPLED_LABEL if self.sampled else "as stated",
            "samples": [s.to_dict() for s in self.samples],
        }
        if self.certificates:
            out["certificates"] = self.certificates
        return out


@dataclass
class Report:
    entries: list[EntryResult]
    budget: int

    def counts(self) -> dict[str, int]:
        out = {PROVEN: 0, REPRODUCED: 0, UNKNOWN: 0, FAILED: 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(e.failed for e in self.entries)

    def get(self, entry_id: str) -> EntryResult:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise KeyError(entry_id)

    def to_dict(self) -> dict[str, Any]:
        return {"budget": self.budget, "summary": self.counts(), "entries": [e.to_dict() for e in self.entries]}

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    def table(self) -> str:
        rows = [("id", "section", "kind", "status", "cutoff", "samples", "seconds")]
        for e in self.entries:
            scope = f"{len(e.samples)}*" if e.sampled else str(len(e.samples))
            rows.append(
                (e.id, e.section, e.kind, e.status, "-" if e.cutoff is None else str(e.cutoff), scope, f"{e.seconds:.2f}")
            )
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        c = self.counts()
        lines.append("")
        lines.append(f"* {SAMPLED_LABEL}")
        lines.append(
            f"{len(self.entries)} entries: {c[PROVEN]} Proven, {c[REPRODUCED]} Reproduced, "
            f"{c[UNKNOWN]} Unknown, {c[FAILED]} Failed (budget {self.budget})"
        )
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# registry construction

REGISTRY: dict[str, RelationEntry] = {}


def entry(entry_id: str, section: str, kind: str, statement: str, sampled: bool = False):
    def deco(fn: Callable[[int], list[Payload]]):
        if entry_id in REGISTRY:
            raise ValueError(f"duplicate registry id {entry_id}")
        REGISTRY[entry_id] = RelationEntry(entry_id, section, kind, statement, fn, sampled)
        return fn

    return deco


def gp(text: str) -> GeneratorPoly:
    return parse_gpoly(text)


def letter(name: str) -> FockVector:
    """Fock vector of ``Y``, ``Z`` or ``W`` at level two."""
    return realized_letter(name, 2).full


# ----- background: levels zero and one --------------------------------------


@entry("A0-xx", "background", "membership", "x *_0 x ≡_0 y")
def _a0(bound):
    return [Sample("x*x-y", 0, lambda: star(X, X, 0) - Yv, weight=2)]


@entry("A1-ideal", "background", "membership", "(x^2-y)(x^2-y+2) realized through *_1 lies in O_1")
def _a1(bound):
    return [Sample("(x^2-y)(x^2-y+2)", 1, gpoly=gp("(x^2-y)(x^2-y+2)"))]


# ----- generators: level-two reductions -------------------------------------


@entry(
    "recursion-level-2",
    "generators",
    "membership",
    "α(-m)v ≡_2 (-1)^(m+1)((m-4)(m-5)/2 α(-3) + (m-3)(m-5) α(-4) + (m-3)(m-4)/2 α(-5))v for m >= 3",
    sampled=True,
)
def _rec2(bound):
    out = []
    for m in range(3, 10):
        sign = (-1) ** (m + 1)
        rhs_op = (
            mode(3) * F((m - 4) * (m - 5), 2) + mode(4) * ((m - 3) * (m - 5)) + mode(5) * F((m - 3) * (m - 4), 2)
        ) * sign
        for v in FOR_ALL_V:
            out.append(Sample(f"m={m} {_vlabel(v)}", 2, lambda m=m, v=v, op=rhs_op: mul(mode(m), v) - mul(op, v)))
    return out


@entry(
    "recursion-level-2-forms",
    "generators",
    "oracle-equality",
    "the binomial-sum and expanded forms of the level-two recursion coefficients agree",
    sampled=True,
)
def _rec2forms(bound):
    def binomial_form(m):
        return [gbinom(m - 3, j - 1) * gbinom(m - j - 3, 3 - j) for j in (1, 2, 3)]

    def expanded(m):
        return [F((m - 4) * (m - 5), 2), F((m - 3) * (m - 5)), F((m - 3) * (m - 4), 2)]

    return [OracleCheck(f"m={m}", lambda m=m: binomial_form(m), lambda m=m: expanded(m)) for m in range(3, 16)]


@entry(
    "-5-reduction",
    "generators",
    "membership",
    "α(-5)v ≈ -((4 + wt v)/4) α(-4)v - 1/4 α(-4) v_{-2}1",
    sampled=True,
)
def _m5(bound):
    out = []
    for v in (ONE, E(1), E(2), E(0, 0, 0, 1), E(0, 1)):
        wt = max(v.max_weight(), 0)
        out.append(
            Sample(
                _vlabel(v),
                2,
                lambda v=v, wt=wt: mul(mode(5), v) + mul(mode(4), v) * F(4 + wt, 4) + mul(mode(4), L_minus_one(v)) * F(1, 4),
            )
        )
    return out


@entry("-5-reduction-vacuum", "generators", "membership", "α(-5)1 ≈ -α(-4)1")
def _m5vac(bound):
    return [Sample("vacuum", 2, lambda: E(0, 0, 0, 0, 1) + E(0, 0, 0, 1))]


def _reduce_level2_rhs(i1, i2, i3, i4, i5, v: FockVector) -> FockVector:
    """Right-hand side of the α(-5) elimination rule applied to ``α(-5)^i5 ... α(-1)^i1 v``."""
    wt_v = max(v.max_weight(), 0)
    total = wt_v - 1 + i1 + 2 * i2 + 3 * i3 + 4 * i4 + 5 * i5
    s1 = mul(E(i1, i2, i3, i4 + 1, i5 - 1), v) * total
    s2 = mul(mode(3) + mode(4) * 3 + mode(5) * 3, E(i1, i2, i3, i4 + 1, i5 - 2), v) * (5 * (i5 - 1))
    s3 = mul(E(i1, i2, i3 - 1, i4 + 2, i5 - 1), v) * (3 * i3)
    s4 = mul(E(i1, i2 - 1, i3 + 1, i4 + 1, i5 - 1), v) * (2 * i2)
    s5 = mul(E(i1 - 1, i2 + 1, i3, i4 + 1, i5 - 1), v) * i1
    s6 = mul(E(i1, i2, i3, i4 + 1, i5 - 1), L_minus_one(v))
    return (s1 - s2 + s3 + s4 + s5 + s6) * F(-1, 4 * (i4 + 1))


@entry(
    "reduce-equation-Heisenberg-level2",
    "generators",
    "membership",
    "α(-5)^i5 α(-4)^i4 α(-3)^i3 α(-2)^i2 α(-1)^i1 v ≡_2 -1/(4(i4+1)) (...) with i5 >= 1",
    sampled=True,
)
def _reduce_eq(bound):
    out = []
    for v in (ONE, E(1)):
        for i5 in (1, 2):
            for i4 in range(min(bound, 2) + 1):
                for i3 in (0, 1):
                    for i2 in (0, 1):
                        for i1 in (0, 1, 2):
                            if i1 + 2 * i2 + 3 * i3 + 4 * i4 + 5 * i5 + max(v.max_weight(), 0) > 22:
                                continue
                            label = f"i=({i1},{i2},{i3},{i4},{i5}) {_vlabel(v)}"
                            out.append(
                                Sample(
                                    label,
                                    2,
                                    lambda a=(i1, i2, i3, i4, i5), v=v: mul(E(*a), v) - _reduce_level2_rhs(*a, v),
                                )
                            )
    return out


@entry("multiplication-one-one", "generators", "oracle-equality", "α(-1)1 *_2 v = (10α(-3) + 15α(-4) + 6α(-5))v", sampled=True)
def _mult11(bound):
    vs = list(FOR_ALL_V) + [E(0, 0, 1), E(1, 0, 0, 1), E(0, 0, 0, 2)]
    return [OracleCheck(_vlabel(v), lambda v=v: star(X, v), lambda v=v: mul(P_OP, v)) for v in vs]


@entry(
    "multiplication-two-one",
    "generators",
    "oracle-equality",
    "α(-2)1 *_2 v = Σ_j (C(4,2-j) - 3C(4,3-j) + 6C(4,4-j)) (j+1) α(-j-2) v",
    sampled=True,
)
def _mult21(bound):
    def rhs(v):
        out = FockVector()
        for j in range(5):
            c = comb(4, 2 - j) if j <= 2 else 0
            c -= 3 * (comb(4, 3 - j) if j <= 3 else 0)
            c += 6 * comb(4, 4 - j)
            out = out + mul(mode(j + 2), v) * (c * (j + 1))
        return out

    vs = list(FOR_ALL_V) + [E(0, 0, 1), E(1, 0, 0, 1)]
    return [OracleCheck(_vlabel(v), lambda v=v: star(mode(2), v), lambda v=v: rhs(v)) for v in vs]


@entry(
    "reduce1-coefficient",
    "generators",
    "oracle-equality",
    "C(i+2,2) - 3C(i+2,3) + 6C(i+2,4) = (i^2-1)(i^2-4)/4",
    sampled=True,
)
def _reduce1(bound):
    def lhs(i):
        return F(comb(i + 2, 2) - 3 * comb(i + 2, 3) + 6 * comb(i + 2, 4))

    return [OracleCheck(f"i={i}", lambda i=i: lhs(i), lambda i=i: F((i * i - 1) * (i * i - 4), 4)) for i in range(0, 13)]


@entry(
    "reduce-alpha(-1)",
    "generators",
    "membership",
    "α(-1)^i 1 ≈ -α(-1)^(i-1) α(-2) 1 (shift relation on a power of α(-1))",
    sampled=True,
)
def _reduce_a1(bound):
    return [Sample(f"i={i}", 2, lambda i=i: E(i) + E(i - 1, 1)) for i in range(1, 7)]


def _o2_ops() -> dict[str, tuple[FockVector, FockVector]]:
    """Expanded mode form and shorthand form of the five operators that annihilate modulo O_2."""
    c2d = mode(3) + mode(4) * 2 + mode(5)
    return {
        "O21": (mul(mode(3) + mode(4), c2d), mul(C_OP, C_OP + D_OP)),
        "O21b": (mul(c2d, c2d), mul(C_OP + D_OP, C_OP + D_OP)),
        "O22": (mul(mode(4) + mode(5), c2d), mul(D_OP, C_OP + D_OP)),
        "O23": (
            mul(mode(2) + mode(3) * 2 + mode(4), mode(2) + mode(3) * 2 + mode(4)) + mul(mode(2) + mode(3), c2d) * 2,
            mul(B_OP + C_OP, B_OP + C_OP) + mul(B_OP, C_OP + D_OP) * 2,
        ),
        "O24": (
            mul(mode(1) + mode(2), mode(2) + mode(3) * 3 + mode(4) * 3 + mode(5))
            + mul(mode(2) + mode(3), mode(2) + mode(3) * 2 + mode(4)),
            mul(A_OP, B_OP + C_OP * 2 + D_OP) + mul(B_OP, B_OP + C_OP),
        ),
    }


_O2_TEXT = {
    "O21": "C(C+D)v ∈ O_2",
    "O21b": "(C+D)^2 v ∈ O_2",
    "O22": "D(C+D)v ∈ O_2",
    "O23": "((B+C)^2 + 2B(C+D))v ∈ O_2",
    "O24": "(A(B+2C+D) + B(B+C))v ∈ O_2",
}


def _register_o2(name: str) -> None:
    @entry(name, "generators", "membership", _O2_TEXT[name], sampled=True)
    def _build(bound, name=name):
        return [
            Sample(_vlabel(v), 2, lambda v=v: mul(_o2_ops()[name][0], v)) for v in FOR_ALL_V + (E(0, 0, 1), E(1, 1))
        ]


for _name in _O2_TEXT:
    _register_o2(_name)


@entry(
    "ABC-shorthand",
    "generators",
    "oracle-equality",
    "expanded mode forms equal their A, B, C, D shorthand; (A+B)(B+C) + A(C+D) = A(B+2C+D) + B(B+C)",
)
def _abc(bound):
    ops = _o2_ops()
    out = [OracleCheck(k, lambda k=k: ops[k][0], lambda k=k: ops[k][1]) for k in ops]
    out.append(
        OracleCheck(
            "O24-second-form",
            lambda: mul(A_OP + B_OP, B_OP + C_OP) + mul(A_OP, C_OP + D_OP),
            lambda: ops["O24"][1],
        )
    )
    return out


def _helprel_rhs(name: str, l: int) -> tuple[FockVector, FockVector]:
    """(lhs, rhs) of the listed reductions of products of α(-3), α(-4), α(-5) with low modes."""
    q = F(1, 4 * (l + 1))
    x2 = lambda v: star(X, v)  # noqa: E731
    if name == "45":
        return E(0, 0, 0, l, 1), -E(0, 0, 0, l + 1)
    if name == "34":
        return E(0, 0, 1, l), -E(0, 0, 0, l + 1)
    if name == "3^24":
        return E(0, 0, 2, l), E(0, 0, 0, l + 2)
    if name == "345":
        return E(0, 0, 1, l, 1), (E(0, 0, 0, l + 2) * -3 - E(0, 0, 1, l + 1) * (3 + 4 * (l + 1))) * q
    if name == "345b":
        return E(0, 0, 1, l, 1), E(0, 0, 0, l + 2)
    if name == "455":
        return E(0, 0, 0, l, 2), (E(0, 0, 1, l + 1) * 5 + E(0, 0, 0, l + 2) * (5 + 4 * (l + 1))) * q
    if name == "145":
        return E(1, 0, 0, l, 1), -E(0, 1, 0, l + 1) * q - E(1, 0, 0, l + 1) * F(1 + 4 * (l + 1), 4 * (l + 1))
    if name == "245":
        return E(0, 1, 0, l, 1), E(0, 0, 0, l + 2) * F(1, 2 * (l + 1)) - E(0, 1, 0, l + 1) * F(1 + 2 * (l + 1), 2 * (l + 1))
    if name == "234":
        return E(0, 1, 1, l), (
            x2(E(0, 1, 0, l)) * F(1, 10)
            - E(0, 1, 0, l + 1) * F(3 * (3 * l + 2), 10 * (l + 1))
            - E(0, 0, 0, l + 2) * F(3, 10 * (l + 1))
        )
    if name == "134":
        return E(1, 0, 1, l), (
            x2(E(1, 0, 0, l)) * F(1, 10)
            - E(1, 0, 0, l + 1) * F(3 * (6 * l + 5), 20 * (l + 1))
            + E(0, 1, 0, l + 1) * F(3, 20 * (l + 1))
        )
    if name == "224":
        return E(0, 2, 0, l), (
            x2(E(0, 1, 0, l)) * F(-3, 5)
            + E(0, 1, 0, l + 1) * F(7 * l + 3, 5 * (l + 1))
            - E(0, 0, 0, l + 2) * F(5 * l + 1, 5 * (l + 1))
        )
    raise KeyError(name)


_HELPREL = {
    "45": "α(-4)^l α(-5)1 ≡_2 -α(-4)^(l+1)1",
    "34": "α(-3)α(-4)^l 1 ≡_2 -α(-4)^(l+1)1",
    "3^24": "α(-3)^2 α(-4)^l 1 ≡_2 α(-4)^(l+2)1",
    "345": "α(-3)α(-4)^l α(-5)1 ≡_2 1/(4(l+1)) (-3α(-4)^(l+2) - (3+4(l+1)) α(-3)α(-4)^(l+1))1",
    "345b": "α(-3)α(-4)^l α(-5)1 ≡_2 α(-4)^(l+2)1",
    "455": "α(-4)^l α(-5)^2 1 ≡_2 1/(4(l+1)) (5α(-3)α(-4)^(l+1) + (5+4(l+1)) α(-4)^(l+2))1",
    "145": "α(-1)α(-4)^l α(-5)1 ≡_2 -1/(4(l+1)) α(-2)α(-4)^(l+1)1 - (1+4(l+1))/(4(l+1)) α(-1)α(-4)^(l+1)1",
    "245": "α(-2)α(-4)^l α(-5)1 ≡_2 1/(2(l+1)) α(-4)^(l+2)1 - (1+2(l+1))/(2(l+1)) α(-2)α(-4)^(l+1)1",
    "234": "α(-2)α(-3)α(-4)^l 1 ≡_2 1/10 x*α(-2)α(-4)^l 1 - 3(3l+2)/(10(l+1)) α(-2)α(-4)^(l+1)1 - 3/(10(l+1)) α(-4)^(l+2)1",
    "134": "α(-1)α(-3)α(-4)^l 1 ≡_2 1/10 x*α(-1)α(-4)^l 1 - 3(6l+5)/(20(l+1)) α(-1)α(-4)^(l+1)1 + 3/(20(l+1)) α(-2)α(-4)^(l+1)1",
    "224": "α(-2)^2 α(-4)^l 1 ≡_2 -3/5 x*α(-2)α(-4)^l 1 + (7l+3)/(5(l+1)) α(-2)α(-4)^(l+1)1 - (5l+1)/(5(l+1)) α(-4)^(l+2)1",
}


def _register_helprel(name: str) -> None:
    @entry(f"helprel-{name}", "generators", "membership", _HELPREL[name], sampled=True)
    def _build(bound, name=name):
        def target(l):
            lhs, rhs = _helprel_rhs(name, l)
            return lhs - rhs

        return [Sample(f"l={l}", 2, lambda l=l: target(l)) for l in range(bound + 1)]


for _name in _HELPREL:
    _register_helprel(_name)


@entry("powersalpha1", "generators", "membership", "x^{*l} ≡_2 (-1)^l α(-4)^l 1", sampled=True)
def _powers1(bound):
    return [Sample(f"l={l}", 2, lambda l=l: x_power(l) - E(0, 0, 0, l) * (-1) ** l) for l in range(bound + 3)]


@entry(
    "powersofalpha345",
    "generators",
    "membership",
    "α(-3)^k α(-4)^l α(-5)^m 1 ≡_2 (-1)^(k+m) α(-4)^(k+l+m) 1",
    sampled=True,
)
def _powers345(bound):
    out = []
    for k in range(bound + 1):
        for l in range(bound + 1):
            for m in range(bound + 1):
                out.append(
                    Sample(
                        f"k={k} l={l} m={m}",
                        2,
                        lambda k=k, l=l, m=m: E(0, 0, k, l, m) - E(0, 0, 0, k + l + m) * (-1) ** (k + m),
                    )
                )
    return out


#: largest ``k + l + m`` for which the power of ``x`` is formed (its weight is about 5(k+l+m))
POWER_X_LIMIT = 6


@entry(
    "powersofalpha345-x",
    "generators",
    "membership",
    "α(-3)^k α(-4)^l α(-5)^m 1 ≡_2 (-1)^l x^{*(k+l+m)}",
    sampled=True,
)
def _powers345x(bound):
    out = []
    for k in range(bound + 1):
        for l in range(bound + 1):
            for m in range(bound + 1):
                if k + l + m > POWER_X_LIMIT:
                    continue
                out.append(
                    Sample(
                        f"k={k} l={l} m={m}",
                        2,
                        lambda k=k, l=l, m=m: E(0, 0, k, l, m) - x_power(k + l + m) * (-1) ** l,
                    )
                )
    return out


def _redpow3_rhs(i, j, k, l) -> FockVector:
    def b(a1, a2, a3, a4):
        return E(a1, a2, a3, a4)

    t1 = (
        b(i, j, k + 1, l + 1) * (i + 2 * j + 3 * (k + 1) + 4 * (l + 1))
        + b(i, j, k, l + 2) * (3 * (k + 1))
        + b(i, j - 1, k + 2, l + 1) * (2 * j)
        + b(i - 1, j + 1, k + 1, l + 1) * i
    )
    t2 = (
        b(i, j, k, l + 2) * (i + 2 * j + 3 * k + 4 * (l + 2))
        + b(i, j, k - 1, l + 3) * (3 * k)
        + b(i, j - 1, k + 1, l + 2) * (2 * j)
        + b(i - 1, j + 1, k, l + 2) * i
    )
    return (
        b(i, j, k + 1, l + 1) * -3
        + t1 * F(1, 4 * (l + 1))
        - b(i, j, k, l + 2) * 2
        + t2 * F(1, 4 * (l + 2))
    )


@entry(
    "redpowersofalpha3",
    "generators",
    "membership",
    "α(-1)^i α(-2)^j α(-3)^(k+2) α(-4)^l 1 ≡_2 -3[i,j,k+1,l+1] + T1/(4(l+1)) - 2[i,j,k,l+2] + T2/(4(l+2))",
    sampled=True,
)
def _redpow3(bound):
    out = []
    for i in range(3):
        for j in range(2):
            for k in range(bound + 1):
                for l in range(bound + 1):
                    out.append(
                        Sample(
                            f"i={i} j={j} k={k} l={l}",
                            2,
                            lambda i=i, j=j, k=k, l=l: E(i, j, k + 2, l) - _redpow3_rhs(i, j, k, l),
                        )
                    )
    return out


@entry(
    "redpowersofalpha3-first",
    "generators",
    "membership",
    "α(-1)^i α(-2)^j α(-3)^(k+2) α(-4)^l 1 ≡_2 -3[i,j,k+1,l+1] - [i,j,k+1,l;α(-5)] - 2[i,j,k,l+2] - [i,j,k,l+1;α(-5)]",
    sampled=True,
)
def _redpow3_first(bound):
    def rhs(i, j, k, l):
        return (
            E(i, j, k + 1, l + 1) * -3
            - E(i, j, k + 1, l, 1)
            - E(i, j, k, l + 2) * 2
            - E(i, j, k, l + 1, 1)
        )

    out = []
    for i in range(3):
        for j in range(2):
            for k in range(bound + 1):
                for l in range(bound + 1):
                    out.append(
                        Sample(f"i={i} j={j} k={k} l={l}", 2, lambda i=i, j=j, k=k, l=l: E(i, j, k + 2, l) - rhs(i, j, k, l))
                    )
    return out


@entry(
    "two-two-three-four",
    "generators",
    "membership",
    "α(-2)^2 α(-3)^k α(-4)^l 1 expressed through α(-2)α(-3)^· α(-4)^· and α(-3)^· α(-4)^· α(-5)^· terms",
    sampled=True,
)
def _two_two(bound):
    def rhs(k, l):
        return (
            E(0, 1, k + 1, l) * -6
            - E(0, 1, k, l + 1) * 6
            + (
                E(0, 1, k, l + 1) * (2 + 3 * k + 4 * (l + 1))
                + E(0, 1, k - 1, l + 2) * (3 * k)
                + E(0, 0, k + 1, l + 1) * 2
            )
            * F(1, 2 * (l + 1))
            - E(0, 0, k + 2, l) * 6
            - E(0, 0, k + 1, l + 1) * 8
            - E(0, 0, k + 1, l, 1) * 2
            - E(0, 0, k, l + 2)
        )

    return [
        Sample(f"k={k} l={l}", 2, lambda k=k, l=l: E(0, 2, k, l) - rhs(k, l))
        for k in range(bound + 1)
        for l in range(bound + 1)
    ]


@entry(
    "one-two-two-three-four",
    "generators",
    "membership",
    "α(-1)α(-2)^2 α(-3)^k α(-4)^l 1 expressed through terms with fewer α(-2)",
    sampled=True,
)
def _one_two_two(bound):
    def rhs(k, l):
        return (
            E(1, 1, k + 1, l) * -6
            - E(1, 1, k, l + 1) * 6
            + (
                E(1, 1, k, l + 1) * (3 + 3 * k + 4 * (l + 1))
                + E(1, 1, k - 1, l + 2) * (3 * k)
                + E(1, 0, k + 1, l + 1) * 2
                + E(0, 2, k, l + 1)
            )
            * F(1, 2 * (l + 1))
            - E(1, 0, k + 2, l) * 6
            - E(1, 0, k + 1, l + 1) * 8
            + (
                E(1, 0, k + 1, l + 1) * (1 + 3 * (k + 1) + 4 * (l + 1))
                + E(1, 0, k, l + 2) * (3 * (k + 1))
                + E(0, 1, k + 1, l + 1)
            )
            * F(1, 2 * (l + 1))
            - E(1, 0, k, l + 2)
        )

    return [
        Sample(f"k={k} l={l}", 2, lambda k=k, l=l: E(1, 2, k, l) - rhs(k, l))
        for k in range(bound + 1)
        for l in range(bound + 1)
    ]


@entry(
    "red-301b",
    "generators",
    "membership",
    "[i,j,1,l] ≡_2 1/10 (x*[i,j,0,l] - 15[i,j,0,l+1] + 6/(4(l+1)) (i[i-1,j+1,0,l+1] + 2j[i,j-1,1,l+1] + (i+2j+4(l+1))[i,j,0,l+1]))",
    sampled=True,
)
def _red301b(bound):
    def rhs(i, j, l):
        inner = (
            E(i - 1, j + 1, 0, l + 1) * i
            + E(i, j - 1, 1, l + 1) * (2 * j)
            + E(i, j, 0, l + 1) * (i + 2 * j + 4 * (l + 1))
        )
        return (star(X, E(i, j, 0, l)) - E(i, j, 0, l + 1) * 15 + inner * F(6, 4 * (l + 1))) * F(1, 10)

    return [
        Sample(f"i={i} j={j} l={l}", 2, lambda i=i, j=j, l=l: E(i, j, 1, l) - rhs(i, j, l))
        for i in range(3)
        for j in range(2)
        for l in range(bound + 1)
    ]


@entry(
    "two-squared-four-reduce",
    "generators",
    "membership",
    "α(-1)α(-2)^2 α(-4)^(l+1) 1 expressed through terms with fewer α(-2)",
    sampled=True,
)
def _two_sq_four(bound):
    def rhs(l):
        return (
            E(1, 1, 1, l + 1) * -6
            - E(1, 1, 0, l + 2) * 6
            + (E(1, 1, 0, l + 2) * (3 + 4 * (l + 2)) + E(1, 0, 1, l + 2) * 2 + E(0, 2, 0, l + 2)) * F(1, 2 * (l + 2))
            - E(1, 0, 2, l + 1) * 6
            - E(1, 0, 1, l + 2) * 8
            + (E(1, 0, 1, l + 2) * (4 + 4 * (l + 2)) + E(1, 0, 0, l + 3) * 3 + E(0, 1, 1, l + 2)) * F(1, 2 * (l + 2))
            - E(1, 0, 0, l + 3)
        )

    return [Sample(f"l={l}", 2, lambda l=l: E(1, 2, 0, l + 1) - rhs(l)) for l in range(bound + 1)]


@entry(
    "one-three-squared-four",
    "generators",
    "membership",
    "α(-1)α(-3)^2 α(-4)^(l+1) 1 expressed through α(-1)α(-3)α(-4)^· and α(-1)α(-4)^· terms",
    sampled=True,
)
def _one_three_sq(bound):
    def rhs(l):
        return (
            E(1, 0, 1, l + 2) * -3
            - E(1, 0, 0, l + 3) * 2
            + (E(1, 0, 1, l + 2) * (4 + 4 * (l + 2)) + E(1, 0, 0, l + 3) * 3 + E(0, 1, 1, l + 2)) * F(1, 4 * (l + 2))
            + (E(1, 0, 0, l + 3) * (1 + 4 * (l + 3)) + E(0, 1, 0, l + 3)) * F(1, 4 * (l + 3))
        )

    return [Sample(f"l={l}", 2, lambda l=l: E(1, 0, 2, l + 1) - rhs(l)) for l in range(bound + 1)]


@entry(
    "red124to1424",
    "generators",
    "membership",
    "10[1,1,0,l] ≡_2 (7l+5)/(l+1)[1,0,0,l+1] - 3x*[1,0,0,l] - (4l+3)/(l+1)[0,1,0,l+1] + (10l+7)/(l+1)[0,0,0,l+2] + 6x*[0,1,0,l]",
    sampled=True,
)
def _red124(bound):
    def rhs(l):
        return (
            E(1, 0, 0, l + 1) * F(7 * l + 5, l + 1)
            - star(X, E(1, 0, 0, l)) * 3
            - E(0, 1, 0, l + 1) * F(4 * l + 3, l + 1)
            + E(0, 0, 0, l + 2) * F(10 * l + 7, l + 1)
            + star(X, E(0, 1, 0, l)) * 6
        )

    return [Sample(f"l={l}", 2, lambda l=l: E(1, 1, 0, l) * 10 - rhs(l)) for l in range(bound + 1)]


@entry(
    "eqnC",
    "generators",
    "membership",
    "3(4l+1)/(10(l+1)) [0,1,0,l+1] ≡_2 (2l+1)/(2(l+1))[1,0,0,l+1] - (5l+12)/(5(l+1))[0,0,0,l+2] + x*[1,0,0,l] + y*α(-4)^l - 6/5 x*[0,1,0,l]",
    sampled=True,
)
def _eqnC(bound):
    def target(l):
        lhs = E(0, 1, 0, l + 1) * F(3 * (4 * l + 1), 10 * (l + 1))
        rhs = (
            E(1, 0, 0, l + 1) * F(2 * l + 1, 2 * (l + 1))
            - E(0, 0, 0, l + 2) * F(5 * l + 12, 5 * (l + 1))
            + star(X, E(1, 0, 0, l))
            + star(Yv, E(0, 0, 0, l))
            - star(X, E(0, 1, 0, l)) * F(6, 5)
        )
        return lhs - rhs

    return [Sample(f"l={l}", 2, lambda l=l: target(l)) for l in range(bound + 1)]


def _u4(l):
    return star(E(1, 0, 0, 1), E(0, 0, 0, l))


@entry(
    "eqnD-first",
    "generators",
    "membership",
    "α(-1)α(-4)1 *_2 α(-4)^l 1 ≡_2 2x*[1,0,0,l] + (2l+1)/(l+1)[1,0,0,l+1] - 3l/(l+1)[0,1,0,l+1] - 3x*[0,1,0,l] - (l+5)/(l+1)[0,0,0,l+2]",
    sampled=True,
)
def _eqnD1(bound):
    def rhs(l):
        return (
            star(X, E(1, 0, 0, l)) * 2
            + E(1, 0, 0, l + 1) * F(2 * l + 1, l + 1)
            - E(0, 1, 0, l + 1) * F(3 * l, l + 1)
            - star(X, E(0, 1, 0, l)) * 3
            - E(0, 0, 0, l + 2) * F(l + 5, l + 1)
        )

    return [Sample(f"l={l}", 2, lambda l=l: _u4(l) - rhs(l)) for l in range(bound + 1)]


@entry(
    "eqnD",
    "generators",
    "membership",
    "α(-1)α(-4)1 *_2 α(-4)^l 1 ≡_2 -2(l-1)/(4l+1) x*[1,0,0,l] - ... - 10l/(4l+1) y*α(-4)^l - 3/(4l+1) x*[0,1,0,l]",
    sampled=True,
)
def _eqnD2(bound):
    def rhs(l):
        d = 4 * l + 1
        return (
            star(X, E(1, 0, 0, l)) * F(-2 * (l - 1), d)
            - E(1, 0, 0, l + 1) * F((2 * l + 1) * (l - 1), (l + 1) * d)
            + E(0, 0, 0, l + 2) * F(6 * l * l + 3 * l - 5, (l + 1) * d)
            - star(Yv, E(0, 0, 0, l)) * F(10 * l, d)
            - star(X, E(0, 1, 0, l)) * F(3, d)
        )

    return [Sample(f"l={l}", 2, lambda l=l: _u4(l) - rhs(l)) for l in range(bound + 1)]


@entry(
    "reduce-one^2-four^2",
    "generators",
    "membership-with-filtration",
    "y *_2 α(-1)α(-4)1 ≡_2 -1/2 α(-1)^2 α(-4)^2 1 - x *_2 α(-1)^2 α(-4)1 + r, r in the span of monomials with at most one α(-1)",
)
def _r_one(bound):
    return [
        Sample(
            "as stated",
            2,
            lambda: star(Yv, E(1, 0, 0, 1)) + E(2, 0, 0, 2) * F(1, 2) + star(X, E(2, 0, 0, 1)),
            span="R",
        )
    ]


@entry(
    "reduce-one^2_four^l",
    "generators",
    "membership-with-filtration",
    "(l-1)/(l+1) α(-1)^2 α(-4)^(l+1) 1 ≡_2 -x *_2 α(-1)^2 α(-4)^l 1 - α(-1)^2 α(-4)1 *_2 α(-4)^l 1 + r, l >= 1",
    sampled=True,
)
def _r_l(bound):
    def target(l):
        return (
            E(2, 0, 0, l + 1) * F(l - 1, l + 1)
            + star(X, E(2, 0, 0, l))
            + star(E(2, 0, 0, 1), E(0, 0, 0, l))
        )

    return [Sample(f"l={l}", 2, lambda l=l: target(l), span="R") for l in range(1, bound + 1)]


@entry(
    "one^1two^2four",
    "generators",
    "membership-with-filtration",
    "α(-1)^2 α(-2) α(-4)^l 1 ≡_2 -3/10 x *_2 α(-1)^2 α(-4)^l 1 + (7l+3)/(10(l+1)) α(-1)^2 α(-4)^(l+1) 1 + r",
    sampled=True,
)
def _r_two(bound):
    def target(l):
        return (
            E(2, 1, 0, l)
            + star(X, E(2, 0, 0, l)) * F(3, 10)
            - E(2, 0, 0, l + 1) * F(7 * l + 3, 10 * (l + 1))
        )

    return [Sample(f"l={l}", 2, lambda l=l: target(l), span="R") for l in range(bound + 1)]


def _reduce_sample(mono) -> Sample:
    def run():
        _, cert = reduce_level2(FockVector.monomial(mono))
        return cert

    return Sample(format_element(FockVector.monomial(mono)), 2, custom=run)


@entry(
    "main-generators",
    "generators",
    "membership",
    "every Fock monomial of weight <= 8 is congruent modulo O_2 to a realized polynomial in x, y, Y, Z, W",
)
def _main_gen(bound):
    return [_reduce_sample(m) for w in range(9) for m in basis_of_weight(w)]


# ----- relations: level one and zero modes ---------------------------------


@entry(
    "recursion-level-1",
    "relations",
    "membership",
    "α(-4)v ∼_1 -α(-2)v - 2α(-3)v",
    sampled=True,
)
def _rec1(bound):
    return [
        Sample(_vlabel(v), 1, lambda v=v: mul(mode(4), v) + mul(mode(2), v) + mul(mode(3), v) * 2)
        for v in FOR_ALL_V + (E(0, 0, 1),)
    ]


@entry("reduce-4-first", "relations", "membership", "ỹ_1, z_1 and z̃_1 rewritten by the level-one recursion")
def _reduce4first(bound):
    return [
        Sample("ỹ", 1, lambda: E(1, 0, 0, 1) + E(1, 1) + E(1, 0, 1) * 2),
        Sample("z", 1, lambda: E(2, 0, 0, 1) + E(2, 1) + E(2, 0, 1) * 2),
        Sample("z̃", 1, lambda: E(1, 0, 0, 2) + E(1, 1, 0, 1) + E(1, 0, 1, 1) * 2),
        Sample("z̃ expanded", 1, lambda: E(1, 0, 0, 2) - E(1, 2) - E(1, 1, 1) * 4 - E(1, 0, 2) * 4),
    ]


@entry("reduce-3", "relations", "membership", "level-one reductions of α(-3)α(-1), α(-3)α(-1)^2, α(-3)α(-2)α(-1), α(-3)^2 α(-1)")
def _reduce3(bound):
    return [
        Sample("31", 1, lambda: E(1, 0, 1) + (E(0, 2) + E(1, 1) * 3) * F(1, 2)),
        Sample("311", 1, lambda: E(2, 0, 1) + E(1, 2) + E(2, 1) * 2),
        Sample("321", 1, lambda: E(1, 1, 1) + (E(0, 3) + E(1, 2) * 5) * F(1, 4)),
        Sample("331", 1, lambda: E(1, 0, 2) - (-E(0, 2, 1) + E(1, 2) * 3) * F(1, 2)),
        Sample("331 final", 1, lambda: E(1, 0, 2) - (E(0, 3) + E(1, 2) * 3) * F(1, 2)),
    ]


@entry("reduce-4-again", "relations", "membership", "ỹ_1 ≡_1 α(-2)^2 + 2α(-1)α(-2), z_1 ≡_1 2α(-1)α(-2)^2 + 3α(-1)^2α(-2), z̃_1 ≡_1 α(-2)^3 + 2α(-1)α(-2)^2")
def _reduce4again(bound):
    return [
        Sample("ỹ", 1, lambda: E(1, 0, 0, 1) - E(0, 2) - E(1, 1) * 2),
        Sample("z", 1, lambda: E(2, 0, 0, 1) - E(1, 2) * 2 - E(2, 1) * 3),
        Sample("z̃", 1, lambda: E(1, 0, 0, 2) - E(0, 3) - E(1, 2) * 2),
    ]


@entry("first-2-one", "relations", "membership", "α(-1)α(-2)1 ≡_1 -α(-1)^2 1")
def _first21(bound):
    return [Sample("as stated", 1, lambda: E(1, 1) + E(2))]


@entry("last-2-one", "relations", "membership", "α(-2)^j 1 ≡_1 (-1)^j x^{*j}", sampled=True)
def _last21(bound):
    return [Sample(f"j={j}", 1, lambda j=j: E(0, j) - x_power(j, 1) * (-1) ** j) for j in range(bound + 3)]


@entry(
    "level-one-products",
    "relations",
    "membership",
    "y *_1 α(-2) ≡_1 -3α(-1)^2α(-2) - α(-2)^3 - 5α(-1)α(-2)^2, α(-1)α(-2)^2 ≡_1 2y*x - x^3, α(-1)^2α(-2) ≡_1 -3y*x + 2x^3",
)
def _level_one_products(bound):
    def s1(u, v):
        return star(u, v, 1)

    x3 = lambda: x_power(3, 1)  # noqa: E731
    return [
        Sample("y*α(-2)", 1, lambda: s1(Yv, E(0, 1)) + E(2, 1) * 3 + E(0, 3) + E(1, 2) * 5),
        Sample("α(-1)α(-2)^2 via *_1", 1, lambda: E(1, 2) + s1(Yv, E(0, 1)) * 2 - E(0, 3)),
        Sample("α(-1)α(-2)^2", 1, lambda: E(1, 2) - s1(Yv, X) * 2 + x3()),
        Sample("α(-1)^2α(-2) intermediate", 1, lambda: E(2, 1) - s1(Yv, E(0, 1)) * 3 + E(0, 3) * 2),
        Sample("α(-1)^2α(-2)", 1, lambda: E(2, 1) + s1(Yv, X) * 3 - x3() * 2),
    ]


@entry(
    "level-one-images",
    "relations",
    "membership",
    "ỹ_1 ≡_1 x^2 - 2y, z_1 ≡_1 4x^3 - 5xy, z̃_1 ≡_1 4xy - 3x^3 (products *_1)",
)
def _level_one_images(bound):
    def s1(u, v):
        return star(u, v, 1)

    return [
        Sample("ỹ", 1, lambda: generator_vector("yt") - x_power(2, 1) + Yv * 2),
        Sample("z", 1, lambda: generator_vector("z") - x_power(3, 1) * 4 + s1(X, Yv) * 5),
        Sample("z̃", 1, lambda: generator_vector("zt") - s1(X, Yv) * 4 + x_power(3, 1) * 3),
    ]


def _mv(text_mono=(), coeff=1) -> ModuleVector:
    return ModuleVector.monomial(text_mono, coeff)


V_LAMBDA = _mv(())
U_VEC = _mv((1,))
V_VEC = _mv((1, 1))
W_VEC = _mv((2,))
LAM = LAMBDA


@entry("zeromode-table", "relations", "module-table", "zero modes of x, y, ỹ, z, z̃ on v_λ, α(-1)v_λ, α(-1)^2 v_λ, α(-2)v_λ")
def _zero_table(bound):
    L = LAM
    table = {
        "x": [L, L, L, L],
        "y": [L**2, L**2 + 2, L**2 + 4, L**2 + 4],
        "yt": [-(L**2), -(L**2) - 4, -(L**2) - 8, -(L**2) - 20],
        "z": [-(L**3), -(L**3) - L * 10, None, None],
        "zt": [L**3, L**3 + L * 8, None, None],
    }
    special = {
        ("z", 2): V_VEC * (-(L**3) - L * 20) + W_VEC * -16,
        ("z", 3): V_VEC * -20 + W_VEC * (-(L**3) - L * 44),
        ("zt", 2): V_VEC * (L**3 + L * 16) + W_VEC * 32,
        ("zt", 3): W_VEC * (L**3 + L * 40),
    }
    vecs = [V_LAMBDA, U_VEC, V_VEC, W_VEC]
    names = ["v_λ", "u", "v", "w"]
    out = []
    for g, scalars in table.items():
        for idx, (vec, nm) in enumerate(zip(vecs, names)):
            expected = special.get((g, idx)) if scalars[idx] is None else vec * scalars[idx]
            out.append(ModuleCheck(f"{g}.{nm}", lambda g=g: generator_vector(g), vec, expected))
    return out


def _realized_full(text: str, n: int = 2) -> Callable[[], FockVector]:
    return lambda: _realize_cached(text, n).full


@entry("zeromode-I1", "relations", "module-table", "zero modes of the four level-one ideal generators on v and w")
def _zero_i1(bound):
    L = LAM
    rows = [
        ("(x^2-y)(x^2-y+2)", V_VEC * 8, W_VEC * 8),
        ("x^2-2y-yt", ModuleVector(), W_VEC * 12),
        ("4x^3-5xy-z", W_VEC * 16, V_VEC * 20 + W_VEC * (L * 24)),
        ("3x^3-4xy+zt", W_VEC * 32, W_VEC * (L * 24)),
    ]
    out = []
    for text, on_v, on_w in rows:
        op = _raw_generator_expr(text)
        out.append(ModuleCheck(f"{text} on v", op, V_VEC, on_v))
        out.append(ModuleCheck(f"{text} on w", op, W_VEC, on_w))
    return out


def _raw_generator_expr(text: str) -> Callable[[], FockVector]:
    """Level-two Fock vector of a polynomial in ``x, y, yt, z, zt`` (products right-nested)."""

    def build():
        x, y = X, Yv
        yt, z, zt = (generator_vector(s) for s in ("yt", "z", "zt"))
        x2 = star(x, x)
        x3 = star(x, x2)
        xy = star(x, y)
        if text == "(x^2-y)(x^2-y+2)":
            return _realize_cached(text, 2).full
        if text == "x^2-2y-yt":
            return x2 - y * 2 - yt
        if text == "4x^3-5xy-z":
            return x3 * 4 - xy * 5 - z
        if text == "3x^3-4xy+zt":
            return x3 * 3 - xy * 4 + zt
        raise KeyError(text)

    return build


@entry("zeromode-YZW", "relations", "module-table", "Y.v = W.v = Z.w = 0, Y.w = Z.v = w, W.w = v")
def _zero_yzw(bound):
    rows = [
        ("Y", V_VEC, ModuleVector()),
        ("W", V_VEC, ModuleVector()),
        ("Z", W_VEC, ModuleVector()),
        ("Y", W_VEC, W_VEC),
        ("Z", V_VEC, W_VEC),
        ("W", W_VEC, V_VEC),
    ]
    return [
        ModuleCheck(f"{g}.{'v' if vec == V_VEC else 'w'}", lambda g=g: letter(g), vec, exp) for g, vec, exp in rows
    ]


_LOWER_ORDER = {
    "YZW1": (2, ["(x^2-y)Y", "Y^2"]),
    "YZW2": (3, ["(x^2-y)Z", "(x^2-y)W", "ZY", "YW"]),
    "YZW3": (4, ["(x^2-y)^3", "Z^2", "W^2", "ZW"]),
}


def _register_lower(name: str) -> None:
    r, polys = _LOWER_ORDER[name]

    @entry(name, "relations", "membership-with-filtration", f"{', '.join(polys)} ∈ O_2 + F_{r}(1)")
    def _build(bound, r=r, polys=polys):
        return [Sample(p, 2, gpoly=gp(p), filtration=r) for p in polys]


for _name in _LOWER_ORDER:
    _register_lower(_name)


_PROPS = {
    "relations-Y": ["(x^2-y+4)Y", "Y^2-Y"],
    "relations-commutators-YZ-YW": ["YZ-ZY-Z", "YW-WY+W"],
    "relations-degree-five": ["(x^2-y+4)Z", "(x^2-y+4)W", "ZY", "YW"],
    "relations-commutator-ZW": ["ZW-WZ+1/8(x^2-y)(x^2-y+2)-2Y"],
    "relations-degree-six": ["(x^2-y)(x^2-y+2)(x^2-y+4)", "Z^2", "W^2", "ZW-Y"],
}


def _register_prop(name: str) -> None:
    polys = _PROPS[name]

    @entry(name, "relations", "membership", f"{', '.join(polys)} ∈ O_2")
    def _build(bound, polys=polys):
        return [Sample(p, 2, gpoly=gp(p)) for p in polys]


for _name in _PROPS:
    _register_prop(_name)


# ----- structure: the thirteen relations and the witnesses ----------------

FINAL_RELATIONS = {
    "final-cubic": "(x^2-y)(x^2-y+2)(x^2-y+4)",
    "final-x2y4-Y": "(x^2-y+4)Y",
    "final-x2y4-Z": "(x^2-y+4)Z",
    "final-x2y4-W": "(x^2-y+4)W",
    "final-Y2-Y": "Y^2-Y",
    "final-Z2": "Z^2",
    "final-W2": "W^2",
    "final-ZY": "ZY",
    "final-YW": "YW",
    "final-ZW-Y": "ZW-Y",
    "final-YZ-ZY-Z": "YZ-ZY-Z",
    "final-YW-WY+W": "YW-WY+W",
    "final-ZW-WZ": "ZW-WZ+1/8(x^2-y)(x^2-y+2)-2Y",
}


def _register_final(entry_id: str) -> None:
    text = FINAL_RELATIONS[entry_id]

    @entry(entry_id, "structure", "membership", f"{text} ∈ O_2")
    def _build(bound, text=text):
        return [Sample(text, 2, gpoly=gp(text))]


for _name in FINAL_RELATIONS:
    _register_final(_name)


WITNESSES = {
    "witness-ideal-generator": ("(x^2-y)(x^2-y+2)", [(V_VEC, V_VEC * 8), (W_VEC, W_VEC * 8)]),
    "witness-x2y4": ("x^2-y+4", [(V_LAMBDA, V_LAMBDA * 4)]),
    "witness-Y": ("Y", [(W_VEC, W_VEC)]),
    "witness-Y-1": ("Y-1", [(V_VEC, V_VEC * -1)]),
    "witness-Z": ("Z", [(V_VEC, W_VEC)]),
    "witness-W": ("W", [(W_VEC, V_VEC)]),
}


def _register_witness(entry_id: str) -> None:
    text, rows = WITNESSES[entry_id]

    @entry(entry_id, "structure", "module-table", f"nonzero zero mode shows {text} ∉ O_2")
    def _build(bound, text=text, rows=rows):
        return [
            ModuleCheck(f"{text} on {format_module(vec)}", _realized_full(text), vec, exp) for vec, exp in rows
        ]


for _name in WITNESSES:
    _register_witness(_name)


# ----- appendix: shorthand identities and product lemmas --------------------

_COREQ = {
    "coreq1": ("B(B+C)(C+D)v ∼_2 0", lambda: mul(B_OP, B_OP + C_OP, C_OP + D_OP)),
    "coreq2": ("A(B+C)(C+D)v ∼_2 0", lambda: mul(A_OP, B_OP + C_OP, C_OP + D_OP)),
    "coreq3": ("C(B+C)^2 v ∼_2 0", lambda: mul(C_OP, B_OP + C_OP, B_OP + C_OP)),
    "coreq5": ("C(A+B)(B+C)v ∼_2 0", lambda: mul(C_OP, A_OP + B_OP, B_OP + C_OP)),
    "coreq6": ("B(A+B)(C+D)v ∼_2 0", lambda: mul(B_OP, A_OP + B_OP, C_OP + D_OP)),
    "coreq7": ("AB(C+D)v ∼_2 0", lambda: mul(A_OP, B_OP, C_OP + D_OP)),
    "coreq8": ("AB(A+B)(B+C)v ∼_2 0", lambda: mul(A_OP, B_OP, A_OP + B_OP, B_OP + C_OP)),
    "coreq9": ("B^2(C+D)v ∼_2 0", lambda: mul(B_OP, B_OP, C_OP + D_OP)),
}


def _register_coreq(name: str) -> None:
    text, op = _COREQ[name]

    @entry(name, "appendix", "membership", text, sampled=True)
    def _build(bound, op=op):
        return [Sample(_vlabel(v), 2, lambda v=v: mul(op(), v)) for v in FOR_ALL_V]


for _name in _COREQ:
    _register_coreq(_name)


def _x2() -> FockVector:
    return star(X, X)


def _lemma_ops() -> dict[str, tuple[Callable[[], FockVector], Callable[[], FockVector], int]]:
    """name -> (left factor u, right-hand operator polynomial, filtration shift)."""
    A, B, C, D = A_OP, B_OP, C_OP, D_OP
    a3 = mode(3)
    yt, z, zt = (generator_vector(s) for s in ("yt", "z", "zt"))
    return {
        "appendixlem1": (
            lambda: _x2() - Yv,
            lambda: (mul(A, B + C) * 3 + mul(B, C + D) * 3 + mul(B, A + B)) * -2,
            0,
        ),
        "x^2tildey": (
            lambda: _x2() + yt,
            lambda: mul(A, C + D) * 16 + mul(C, A + B) * 4 - mul(B, C + D) * 42 - mul(C, B + C) * 12,
            0,
        ),
        "C^3": (lambda: None, lambda: mul(C, C, C), 1),
        "zxtildey": (
            lambda: zt + star(X, yt),
            lambda: mul(a3, C, (A + B) - (B + C) * 3) * -4 - mul(C, C, A * 3 - B * 10) * 4 + mul(a3, C + D, A * -16 + B * 42),
            1,
        ),
        "ztildexcube": (
            lambda: zt - x_power(3),
            lambda: mul(C, C, (A + B) * -24 + (B + C) * 88)
            + mul(a3, mul(B, C + D) * 84 + mul(C, B + C) * 24 - mul(C, A + B) * 8 - mul(A, C + D) * 32),
            1,
        ),
        "zxy": (
            lambda: z + star(X, Yv),
            lambda: mul(mode(1), mul(A + B, C) * 8 + mul(A, C + D) * 32 - mul(B + C, C) * 24 - mul(B, C + D) * 84)
            + mul(A, A, C) * -8
            - mul(A, A, C + D) * 42
            + mul(A + B, B, C) * 24
            + mul(A, C, C) * 48,
            1,
        ),
        "Ymult": (lambda: letter("Y"), lambda: mul(B, C + D) * F(1, 2), 0),
        "Wmult": (lambda: letter("W"), lambda: mul(A, A, C + D) * F(1, 2), 1),
        "Zmult": (lambda: letter("Z"), lambda: mul(B, C, C) * F(1, 2), 1),
        "y-mult": (
            lambda: Yv,
            lambda: mul(A, B) * 20
            + mul(A, C) * 30
            + mul(B, B) * 5
            + mul(A, D) * 12
            - mul(B, C) * 18
            - mul(mode(2), D) * 12
            + mul(a3, C) * 18
            + mul(a3, a3),
            0,
        ),
    }


_LEMMA_TEXT = {
    "appendixlem1": "(x^2-y) *_2 v ∼_2 -2(3A(B+C) + 3B(C+D) + B(A+B))v + F_r(1)",
    "x^2tildey": "(x^2+ỹ) *_2 v ∼_2 (16A(C+D) + 4C(A+B) - 42B(C+D) - 12C(B+C))v + F_r(1)",
    "C^3": "C^3 v ∼_2 F_(r+1)(1)",
    "zxtildey": "(z̃+xỹ) *_2 v ∼_2 (-4α(-3)C((A+B)-3(B+C)) - 4C^2(3A-10B) + α(-3)(C+D)(-16A+42B))v + F_(r+1)(1)",
    "ztildexcube": "(z̃-x^3) *_2 v ≡_2 (C^2(-24(A+B)+88(B+C)) + α(-3)(84B(C+D)+24C(B+C)-8C(A+B)-32A(C+D)))v + F_(r+1)(1)",
    "zxy": "(z+xy) *_2 v ∼_2 α(-1)(8(A+B)C+32A(C+D)-24(B+C)C-84B(C+D))v + (-8A^2C-42A^2(C+D)+24(A+B)BC+48AC^2)v + F_(r+1)(1)",
    "Ymult": "Y *_2 v ∼_2 1/2 B(C+D)v + F_r(1)",
    "Wmult": "W *_2 v ≡_2 1/2 A^2(C+D)v + F_(r+1)(1)",
    "Zmult": "Z *_2 v ∼_2 1/2 BC^2 v + F_(r+1)(1)",
    "y-mult": "y *_2 v ∼_2 (20AB+30AC+5B^2+12AD-18BC-12α(-2)D+18α(-3)C+α(-3)^2)v + F_r(1)",
}


def _register_lemma(name: str) -> None:
    @entry(name, "appendix", "membership-with-filtration", _LEMMA_TEXT[name], sampled=True)
    def _build(bound, name=name):
        out = []
        for v, r in FILTERED_V:

            def target(v=v):
                left, right, _ = _lemma_ops()[name]
                u = left()
                lhs = mul(right(), v) if u is None else star(u, v) - mul(right(), v)
                return lhs

            shift = _lemma_ops_shift(name)
            out.append(Sample(f"{_vlabel(v)} r={r}", 2, target, filtration=r + shift))
        return out


def _lemma_ops_shift(name: str) -> int:
    return {"C^3": 1, "zxtildey": 1, "ztildexcube": 1, "zxy": 1, "Wmult": 1, "Zmult": 1}.get(name, 0)


for _name in _LEMMA_TEXT:
    _register_lemma(_name)


@entry(
    "x2-mult",
    "appendix",
    "membership",
    "(x*x) *_2 v ≡_2 (10α(-3)+15α(-4)+6α(-5))^2 v ∼_2 (α(-3)^2 + 6α(-3)C + 12α(-3)(C+D) + 9C^2)v",
    sampled=True,
)
def _x2mult(bound):
    a3 = mode(3)
    short = mul(a3, a3) + mul(a3, C_OP) * 6 + mul(a3, C_OP + D_OP) * 12 + mul(C_OP, C_OP) * 9
    out = []
    for v in FOR_ALL_V:
        out.append(Sample(f"first {_vlabel(v)}", 2, lambda v=v: star(_x2(), v) - mul(P_OP, P_OP, v)))
        out.append(Sample(f"second {_vlabel(v)}", 2, lambda v=v: mul(P_OP, P_OP, v) - mul(short, v)))
    return out


# ---------------------------------------------------------------------------
# running entries


@lru_cache(maxsize=None)
def _realize_cached(text: str, n: int) -> Realized:
    return realize(gp(text), n)


def _combine(full: FockVector, level: int, inner: Certificate, memb: Certificate | None, filtration: list, base) -> Certificate:
    products = list(memb.products) if memb is not None else []
    if not _trivial(inner):
        products.append(ProductTerm("scale", ONE, Poly.const(1), inner))
    terms = memb.terms if memb is not None else []
    cut = memb.cutoff if memb is not None else inner.cutoff
    return Certificate(
        target=full, level=level, cutoff=cut, terms=terms, filtration=filtration, base=base, products=products
    )


def _trivial(c: Certificate) -> bool:
    return c.target.is_zero() and not c.terms and not c.products and not c.filtration


def _r_span_monomials(top: int) -> list[tuple[int, ...]]:
    """Monomials of weight <= top with at most one α(-1) and parts <= 5."""
    out = []
    for w in range(top + 1):
        for m in basis_of_weight(w):
            if m.count(1) <= 1 and (not m or m[0] <= 5):
                out.append(m)
    return out


def _r_span_certificate(full: FockVector, rep: FockVector, pre: Certificate, n: int):
    """Write ``rep`` as a combination of representatives of R-span monomials."""
    top = max(full.max_weight(), 0)
    monos = _r_span_monomials(top)
    reps = []
    for m in monos:
        r, c = normal_form_vector(FockVector.monomial(m), n)
        reps.append((m, r, c))
    rows = [r.raw() for _, r, _ in reps]
    cols = sorted({k for row in rows for k in row} | set(rep.terms), key=lambda m: (sum(m), m))
    picked, coords = independent_subset(rows, cols)
    sub = [rows[i] for i in picked]
    target = rep.raw()
    sol = solve_exact(sub, [cols[j] for j in coords], target)
    if sol is None:
        return None
    check: dict = {}
    for row, c in zip(sub, sol):
        for k, v in row.items():
            check[k] = check.get(k, 0) + c * v
    if {k: v for k, v in check.items() if v} != target:
        return None
    filt = []
    products = [ProductTerm("scale", ONE, Poly.const(1), pre)]
    for idx, c in zip(picked, sol):
        if not c:
            continue
        m, _, cert = reps[idx]
        filt.append((m, Poly.const(c)))
        if not _trivial(cert):
            products.append(ProductTerm("scale", ONE, Poly.const(-c), cert))
    return Certificate(target=full, level=n, cutoff=pre.cutoff, filtration=filt, base=ONE, products=products)


def _over_budget(s: Sample, v: FockVector, budget: int) -> SampleResult:
    w = max(v.max_weight(), s.weight)
    return SampleResult(s.label, UNKNOWN, note=f"weight {w} above budget {budget}")


def _prove_sample(s: Sample, budget: int) -> SampleResult:
    n = s.level
    if s.custom is not None:
        cert = s.custom()
        if cert.target.max_weight() > budget or s.weight > budget:
            return _over_budget(s, cert.target, budget)
        if cert.max_cutoff() > budget:
            return SampleResult(s.label, UNKNOWN, note=f"certificate needs cutoff {cert.max_cutoff()} above budget {budget}")
        if not cert.check():
            return SampleResult(s.label, FAILED, cert.max_cutoff(), cert, residual=format_element(cert.residual()))
        return SampleResult(s.label, PROVEN, cert.max_cutoff(), cert)
    if s.gpoly is not None:
        r = _realize_cached(str(s.gpoly), n) if _roundtrip(s.gpoly) else realize(s.gpoly, n)
        full, rep, pre = r.full, r.rep, r.certificate
        if full.max_weight() > budget or s.weight > budget:
            return _over_budget(s, full, budget)
    else:
        full = s.target()
        if full.max_weight() > budget or s.weight > budget:
            return _over_budget(s, full, budget)
        rep, pre = normal_form_vector(full, n)
    if pre.max_cutoff() > budget:
        return SampleResult(s.label, UNKNOWN, note=f"normal form needs cutoff {pre.max_cutoff()} above budget {budget}")
    cert: Certificate | None = None
    if rep.is_zero():
        cert = pre if pre.target == full else _combine(full, n, pre, None, [], None)
    elif s.filtration is not None:
        try:
            res = membership(rep, n, extra=(s.filtration, ONE), ceiling=budget)
        except CutoffTooSmall as exc:
            return SampleResult(s.label, UNKNOWN, remainder=format_element(rep), note=str(exc))
        if isinstance(res, Proven):
            m = res.certificate
            cert = _combine(full, n, pre, m, m.filtration, ONE)
            cert.cutoff = max(m.cutoff, pre.cutoff)
    elif s.span == "R":
        cert = _r_span_certificate(full, rep, pre, n)
    else:
        try:
            res = membership(rep, n, ceiling=budget)
        except CutoffTooSmall as exc:
            return SampleResult(s.label, UNKNOWN, remainder=format_element(rep), note=str(exc))
        if isinstance(res, Proven):
            m = res.certificate
            cert = _combine(full, n, pre, m, [], None)
            cert.cutoff = max(m.cutoff, pre.cutoff)
    if cert is None:
        return SampleResult(s.label, UNKNOWN, remainder=format_element(rep))
    if cert.max_cutoff() > budget:
        return SampleResult(s.label, UNKNOWN, note=f"certificate needs cutoff {cert.max_cutoff()} above budget {budget}")
    if not cert.check():
        return SampleResult(s.label, FAILED, cert.max_cutoff(), cert, residual=format_element(cert.residual()))
    if cert.a_degree() != 0:
        return SampleResult(s.label, FAILED, cert.max_cutoff(), cert, residual="certificate depends on a")
    return SampleResult(s.label, PROVEN, cert.max_cutoff(), cert)


def _roundtrip(p: GeneratorPoly) -> bool:
    return gp(str(p)) == p


def _run_module(c: ModuleCheck) -> SampleResult:
    image = zero_mode(c.operator(), c.vector)
    if image == c.expected:
        return SampleResult(c.label, REPRODUCED)
    return SampleResult(c.label, FAILED, residual=format_module(image - c.expected))


def _run_oracle(c: OracleCheck) -> SampleResult:
    lhs, rhs = c.lhs(), c.rhs()
    if lhs == rhs:
        return SampleResult(c.label, REPRODUCED)
    if isinstance(lhs, FockVector):
        residual = format_element(lhs - rhs)
    elif isinstance(lhs, list):
        residual = str([F(a) - F(b) for a, b in zip(lhs, rhs)])
    else:
        residual = str(F(lhs) - F(rhs))
    return SampleResult(c.label, FAILED, residual=residual)


def _entry_status(kind: str, results: list[SampleResult]) -> str:
    if any(r.status == FAILED for r in results):
        return FAILED
    if any(r.status == UNKNOWN for r in results):
        return UNKNOWN
    if kind in ("module-table", "oracle-equality"):
        return REPRODUCED
    return PROVEN


def certificate_digest(cert: Certificate) -> str:
    return hashlib.sha256(cert.to_json(indent=None).encode()).hexdigest()[:16]


def verify(
    entry_id: str,
    budget: int = DEFAULT_BUDGET,
    bound: int = DEFAULT_BOUND,
    certificate_dir: str | Path | None = None,
) -> EntryResult:
    """Run one registry entry; raises ``KeyError`` for an unknown id."""
    if entry_id not in REGISTRY:
        raise KeyError(f"unknown registry id {entry_id!r}")
    e = REGISTRY[entry_id]
    start = time.perf_counter()
    results: list[SampleResult] = []
    for item in e.payload(bound):
        if isinstance(item, Sample):
            results.append(_prove_sample(item, budget))
        elif isinstance(item, ModuleCheck):
            results.append(_run_module(item))
        else:
            results.append(_run_oracle(item))
    cutoffs = [r.cutoff for r in results if r.cutoff is not None]
    paths: list[str] = []
    if certificate_dir is not None:
        paths = _write_certificates(e.id, results, Path(certificate_dir))
    return EntryResult(
        id=e.id,
        section=e.section,
        kind=e.kind,
        statement=e.statement,
        status=_entry_status(e.kind, results),
        cutoff=max(cutoffs) if cutoffs else None,
        seconds=time.perf_counter() - start,
        samples=results,
        sampled=e.sampled,
        certificates=paths,
    )


def _safe(name: str) -> str:
    keep = "".join(ch if ch.isalnum() or ch in "-_.=+^" else "_" for ch in name)
    return keep.strip("_") or "sample"


def _write_certificates(entry_id: str, results: list[SampleResult], root: Path) -> list[str]:
    from .zhu import atomic_write

    folder = root / _safe(entry_id)
    folder.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, r in enumerate(results):
        if r.certificate is None:
            continue
        path = folder / f"{i:03d}-{_safe(r.label)[:60]}.json"
        atomic_write(path, r.certificate.to_json())
        paths.append(str(path))
    return paths


def entries(only: Iterable[str] | None = None) -> list[RelationEntry]:
    """Registry entries, optionally restricted to the named sections."""
    wanted = set(only) if only is not None else None
    if wanted is not None:
        bad = wanted - set(SECTIONS)
        if bad:
            raise KeyError(f"unknown section(s): {', '.join(sorted(bad))}")
    return [e for e in REGISTRY.values() if wanted is None or e.section in wanted]


def _worker(args) -> EntryResult:
    entry_id, budget, bound, cert_dir, cache_dir = args
    if cache_dir:
        set_cache_dir(cache_dir)
    res = verify(entry_id, budget, bound, cert_dir)
    for s in res.samples:
        s.certificate = None  # keep the result small across processes
    return res


def verify_all(
    budget: int = DEFAULT_BUDGET,
    only: Iterable[str] | None = None,
    jobs: int = 1,
    bound: int = DEFAULT_BOUND,
    certificate_dir: str | Path | None = None,
    ids: Iterable[str] | None = None,
    cache_dir: str | None = None,
) -> Report:
    """Run every selected entry and collect a :class:`Report`."""
    selected = [e.id for e in entries(only)]
    if ids is not None:
        chosen = set(ids)
        selected = [i for i in selected if i in chosen]
    if jobs <= 1 or len(selected) <= 1:
        results = [verify(i, budget, bound, certificate_dir) for i in selected]
    else:
        args = [(i, budget, bound, certificate_dir, cache_dir) for i in selected]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, args))
    return Report(results, budget)


__all__ = [
    "DEFAULT_BUDGET",
    "EntryResult",
    "KINDS",
    "REGISTRY",
    "RelationEntry",
    "Report",
    "SECTIONS",
    "SampleResult",
    "entries",
    "verify",
    "verify_all",
]
