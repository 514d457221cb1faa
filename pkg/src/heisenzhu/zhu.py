"""Spanning sets of O_n(V), exact membership certificates and related tools.

Membership is decided inside the span of generators whose top weight is at
most a cutoff ``M``.  The search never claims non-membership: it either
returns :class:`Proven` with a replayable :class:`Certificate` or
:class:`Unknown`.

Internally every vector is first pushed onto standard monomials (parts
``<= 2n``) with the triangular rules of :mod:`heisenzhu.rules`.  The remaining
relations come from shifts of standard monomials and circle products
``u ∘_n v`` with ``u`` a composite monomial of small weight and ``v``
standard.  The reduced system is solved weight by weight from the top.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from .certificate import Certificate
from .coeff import Poly
from .fock import (
    FockVector,
    ModeMonomial,
    RawVec,
    basis_of_weight,
    insert_mode,
    raw_add,
    raw_multiply,
)
from .linalg import combine, independent_subset, solve_exact
from .rules import Origin, is_standard, origin_vector, reducer
from .vertexop import gbinom

#: largest weight of the composite ``u`` used in the reduced spanning family
COMPOSITE_WEIGHT = 4
DEFAULT_CEILING = 30


class CutoffTooSmall(ValueError):
    """The target has weight components above the requested cutoff."""


@dataclass
class Proven:
    certificate: Certificate

    @property
    def cutoff(self) -> int:
        return self.certificate.max_cutoff()

    def __bool__(self) -> bool:
        return True


@dataclass
class Unknown:
    cutoff: int
    reason: str = "no combination within the cutoff"

    def __bool__(self) -> bool:
        return False


MembershipResult = Proven | Unknown


# ---------------------------------------------------------------------------
# the full generator set


@dataclass
class OnGeneratorSet:
    level: int
    max_top_weight: int
    generators: list[tuple[Origin, FockVector]]

    def __len__(self) -> int:
        return len(self.generators)

    def vectors(self) -> list[FockVector]:
        return [g for _, g in self.generators]


def enumerate_generators(n: int, M: int) -> OnGeneratorSet:
    """All shifts of basis ``w`` with ``wt w + 1 <= M`` and all ``u ∘_n v`` with ``wt u + wt v + 2n + 1 <= M``."""
    if M < 0:
        raise ValueError("cutoff must be non-negative")
    gens: list[tuple[Origin, FockVector]] = []
    for w in range(M):
        for b in basis_of_weight(w):
            o = Origin.shift(b)
            vec = origin_vector(o, n)
            if vec:
                gens.append((o, FockVector(vec)))
    for wu in range(M - 2 * n):
        for u in basis_of_weight(wu):
            for wv in range(M - 2 * n - 1 - wu + 1):
                for v in basis_of_weight(wv):
                    o = Origin.circ(u, v)
                    vec = origin_vector(o, n)
                    if vec:
                        gens.append((o, FockVector(vec)))
    return OnGeneratorSet(n, M, gens)


# ---------------------------------------------------------------------------
# reduced spanning family, graded by the top weight after reduction


def _family_at_nominal(n: int, top: int) -> list[Origin]:
    """Family members whose generator top weight is exactly ``top``."""
    out: list[Origin] = []
    if top >= 1:
        for b in basis_of_weight(top - 1):
            if is_standard(b, n):
                out.append(Origin.shift(b))
    rest = top - 2 * n - 1
    for wu in range(2, min(COMPOSITE_WEIGHT, rest) + 1):
        for u in basis_of_weight(wu):
            if len(u) < 2:
                continue
            for v in basis_of_weight(rest - wu):
                if is_standard(v, n):
                    out.append(Origin.circ(u, v))
    return out


class _Family:
    """Reduced family rows, generated lazily by nominal top weight."""

    def __init__(self, n: int):
        self.n = n
        self.upto = -1
        # actual top weight -> list of (origin, nominal top, reduced row)
        self.by_top: dict[int, list[tuple[Origin, int, RawVec]]] = {}

    def extend(self, M: int) -> None:
        red = reducer(self.n)
        for top in range(self.upto + 1, M + 1):
            for o in _family_at_nominal(self.n, top):
                row = red.reduce(origin_vector(o, self.n))
                if row:
                    actual = max(sum(m) for m in row)
                    self.by_top.setdefault(actual, []).append((o, top, row))
        self.upto = max(self.upto, M)

    def rows(self, w: int, M: int) -> list[tuple[Origin, int, RawVec]]:
        self.extend(M)
        return [r for r in self.by_top.get(w, []) if r[1] <= M]


_FAMILIES: dict[int, _Family] = {}


def _family(n: int) -> _Family:
    f = _FAMILIES.get(n)
    if f is None:
        f = _FAMILIES[n] = _Family(n)
    return f


def _component(row: Mapping, w: int) -> RawVec:
    return {m: c for m, c in row.items() if sum(m) == w}


# ---------------------------------------------------------------------------
# span-basis cache


def code_version() -> str:
    """Hash of the sources that determine spanning rows and their order."""
    h = hashlib.sha256()
    here = Path(__file__).parent
    for name in ("fock.py", "vertexop.py", "rules.py", "zhu.py", "linalg.py"):
        h.update((here / name).read_bytes())
    return h.hexdigest()[:16]


_CACHE_DIR: Path | None = None
_LEVEL_CACHE: dict[tuple, tuple[list[int], list[ModeMonomial]]] = {}


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Persist span bases under ``path`` (``None`` keeps them in memory only)."""
    global _CACHE_DIR
    _CACHE_DIR = Path(path) if path else None
    if _CACHE_DIR is not None:
        _CACHE_DIR.mkdir(parents=True, exist_ok=True)


def atomic_write(path: Path, text: str) -> None:
    """Write via a temporary file in the same directory and rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _level_basis(n: int, w: int, M: int, rows: list[tuple[Origin, int, RawVec]]):
    """Independent rows at weight ``w`` (indices into ``rows``) and pivot monomials."""
    key = (n, w, M)
    hit = _LEVEL_CACHE.get(key)
    if hit is not None:
        return hit
    path = None
    if _CACHE_DIR is not None:
        path = _CACHE_DIR / f"span-n{n}-M{M}-w{w}-{code_version()}.json"
        if path.exists():
            data = json.loads(path.read_text())
            hit = (data["rows"], [tuple(c) for c in data["coords"]])
            _LEVEL_CACHE[key] = hit
            return hit
    cols = [m for m in basis_of_weight(w) if is_standard(m, n)]
    comps = [_component(r, w) for _, _, r in rows]
    picked, coords = independent_subset(comps, cols)
    hit = (picked, [cols[j] for j in coords])
    _LEVEL_CACHE[key] = hit
    if path is not None:
        atomic_write(path, json.dumps({"n": n, "M": M, "w": w, "rows": picked, "coords": hit[1]}))
    return hit


def clear_caches() -> None:
    _LEVEL_CACHE.clear()
    _FAMILIES.clear()


# ---------------------------------------------------------------------------
# filtration rows


def _filtration_rows(r: int, base: FockVector, M: int, n: int) -> list[tuple[ModeMonomial, dict[int, RawVec]]]:
    """Monomials ``ν`` with at most ``r`` parts, ``wt ν + top(base) <= M``."""
    top = base.max_weight()
    out = []
    for w in range(0, M - top + 1):
        for nu in basis_of_weight(w):
            if len(nu) <= r:
                out.append(nu)
    return out


# ---------------------------------------------------------------------------
# graded solver


def _solve_layer(
    target: RawVec, n: int, M: int, extra_rows: list[tuple[object, RawVec]]
) -> tuple[dict[Origin, Fraction], dict[object, Fraction]] | None:
    """Find family and extra coefficients whose reduced sum equals ``target`` (already reduced)."""
    fam = _family(n)
    remainder = dict(target)
    main: dict[Origin, Fraction] = {}
    extra_coef: dict[object, Fraction] = {}
    extra_by_top: dict[int, list[tuple[object, RawVec]]] = {}
    for key, row in extra_rows:
        if row:
            extra_by_top.setdefault(max(sum(m) for m in row), []).append((key, row))
    while remainder:
        w = max(sum(m) for m in remainder)
        comp = _component(remainder, w)
        rows = fam.rows(w, M)
        extras = extra_by_top.get(w, [])
        if extras:
            allrows = [(o, 0, r) for o, _, r in rows] + [(("extra", k), 0, r) for k, r in extras]
            cols = [m for m in basis_of_weight(w) if is_standard(m, n)]
            comps = [_component(r, w) for _, _, r in allrows]
            picked, cidx = independent_subset(comps, cols)
            coords = [cols[j] for j in cidx]
            chosen = [allrows[i] for i in picked]
        else:
            picked, coords = _level_basis(n, w, M, rows)
            chosen = [rows[i] for i in picked]
        comps = [_component(r, w) for _, _, r in chosen]
        coeffs = solve_exact(comps, coords, comp)
        if coeffs is None:
            return None
        if combine(comps, coeffs) != {m: c for m, c in comp.items() if c}:
            return None
        for (key, _, row), c in zip(chosen, coeffs):
            if not c:
                continue
            raw_add(remainder, row, -c)
            if isinstance(key, tuple) and key and key[0] == "extra":
                extra_coef[key[1]] = extra_coef.get(key[1], 0) + c
            else:
                main[key] = main.get(key, 0) + c
        if any(sum(m) >= w for m in remainder):
            return None
    return main, extra_coef


def _membership_at(w: FockVector, n: int, M: int, extra) -> MembershipResult:
    red = reducer(n)
    terms: dict[Origin, Poly] = {}
    filt: dict[ModeMonomial, Poly] = {}
    base = None
    extra_rows: list[tuple[object, RawVec]] = []
    base_layers: dict[int, RawVec] = {}
    if extra is not None:
        r, base = extra
        base = base if isinstance(base, FockVector) else FockVector.vacuum()
        if not base.is_a_free():
            raise ValueError("filtration base must not depend on a")
        braw = base.raw()
        for nu in _filtration_rows(r, base, M, n):
            extra_rows.append((nu, red.reduce(raw_multiply({nu: 1}, braw))))
        base_layers = {0: braw}
    for deg, layer in sorted(w.layers().items()):
        target = red.reduce(layer)
        sol = _solve_layer(target, n, M, extra_rows)
        if sol is None:
            return Unknown(M)
        main, ext = sol
        # rule generators absorb the difference between the layer and its reduction
        diff = dict(layer)
        for o, c in main.items():
            raw_add(diff, origin_vector(o, n), -c)
        for nu, c in ext.items():
            raw_add(diff, raw_multiply({nu: 1}, base_layers[0]), -c)
        rest, rule_combo = red.reduce_tracked(diff)
        if rest:
            return Unknown(M, "rule reduction left a remainder")
        for o, c in list(main.items()) + list(rule_combo.items()):
            terms[o] = terms.get(o, Poly()) + Poly({(deg, 0): c})
        for nu, c in ext.items():
            filt[nu] = filt.get(nu, Poly()) + Poly({(deg, 0): c})
    cert = Certificate(
        target=w,
        level=n,
        cutoff=M,
        terms=sorted(((o, c) for o, c in terms.items() if not c.is_zero()), key=lambda t: (t[0].top_weight(n), t[0])),
        filtration=sorted(((m, c) for m, c in filt.items() if not c.is_zero()), key=lambda t: (sum(t[0]), t[0])),
        base=base,
    )
    if not cert.residual().is_zero():
        return Unknown(M, "replay mismatch")
    return Proven(cert)


def _nf_layer(target: RawVec, n: int) -> tuple[RawVec, dict[Origin, Fraction], int]:
    """Graded normal form of a reduced vector: a representative on non-pivot columns."""
    fam = _family(n)
    remainder = dict(target)
    rep: RawVec = {}
    main: dict[Origin, Fraction] = {}
    used = 0
    while remainder:
        w = max(sum(m) for m in remainder)
        M = w
        used = max(used, M)
        comp = _component(remainder, w)
        rows = fam.rows(w, M)
        picked, coords = _level_basis(n, w, M, rows)
        chosen = [rows[i] for i in picked]
        comps = [_component(r, w) for _, _, r in chosen]
        coeffs = solve_exact(comps, coords, comp)
        leftover = dict(comp)
        for (o, _, row), c in zip(chosen, coeffs):
            if c:
                raw_add(remainder, row, -c)
                raw_add(leftover, _component(row, w), -c)
                main[o] = main.get(o, 0) + c
        raw_add(rep, leftover, 1)
        raw_add(remainder, leftover, -1)
        if any(sum(m) >= w for m in remainder):
            raise ArithmeticError("graded normal form did not clear the top weight")
    return rep, main, used


def normal_form_vector(w: FockVector, n: int) -> tuple[FockVector, Certificate]:
    """Canonical representative ``r`` of ``w`` modulo the span and a certificate for ``w - r``.

    Each weight ``w`` is reduced against the row basis of family members with
    generator top weight at most ``w``; what is left lives on the non-pivot
    standard monomials.  Widening that cutoff to ``w + 2n + 2`` gives the same
    row space for every level and weight we have tried.
    """
    red = reducer(n)
    terms: dict[Origin, Poly] = {}
    rep_layers: dict[int, RawVec] = {}
    used = 0
    for deg, layer in sorted(w.layers().items()):
        rep, main, cut = _nf_layer(red.reduce(layer), n)
        used = max(used, cut)
        rep_layers[deg] = rep
        diff = dict(layer)
        raw_add(diff, rep, -1)
        for o, c in main.items():
            raw_add(diff, origin_vector(o, n), -c)
        rest, rule_combo = red.reduce_tracked(diff)
        if rest:
            raise ArithmeticError("rule reduction left a remainder")
        for o, c in list(main.items()) + list(rule_combo.items()):
            terms[o] = terms.get(o, Poly()) + Poly({(deg, 0): c})
    rep_vec = FockVector.from_layers(rep_layers)
    cert = Certificate(
        target=w - rep_vec,
        level=n,
        cutoff=used,
        terms=sorted(((o, c) for o, c in terms.items() if not c.is_zero()), key=lambda t: (t[0].top_weight(n), t[0])),
    )
    return rep_vec, cert


def default_cutoff(w: FockVector, n: int) -> int:
    return max(w.max_weight(), 0) + 2 * n + 2


def membership(
    w: FockVector,
    n: int,
    M: int | None = None,
    extra: tuple[int, FockVector] | None = None,
    ceiling: int | None = None,
) -> MembershipResult:
    """Decide ``w ∈ O_n(V)`` (or ``O_n(V) + F_r(base)`` with ``extra=(r, base)``) up to a cutoff.

    With ``M`` given, exactly that cutoff is used.  Otherwise the search starts
    at ``max weight + 2n + 2`` and grows by 2 up to ``ceiling``.
    """
    if w.is_zero():
        return Proven(Certificate(target=w, level=n, cutoff=max(M or 0, 0), base=extra[1] if extra else None))
    top = w.max_weight()
    if M is not None:
        if top > M:
            raise CutoffTooSmall(f"target has weight {top} above cutoff {M}")
        return _membership_at(w, n, M, extra)
    ceiling = DEFAULT_CEILING if ceiling is None else ceiling
    start = default_cutoff(w, n)
    if top > ceiling:
        raise CutoffTooSmall(f"target has weight {top} above ceiling {ceiling}")
    cut = min(start, ceiling)
    while True:
        res = _membership_at(w, n, cut, extra)
        if isinstance(res, Proven) or cut >= ceiling:
            return res
        cut = min(cut + 2, ceiling)


def equivalent(u: FockVector, v: FockVector, n: int, M: int | None = None, **kw) -> MembershipResult:
    """``u ≡ v`` modulo ``O_n(V)``."""
    return membership(u - v, n, M, **kw)


# ---------------------------------------------------------------------------
# recursion and probe


def generic_recursion(m: int, n: int, v: FockVector) -> FockVector:
    """Right-hand side ``(-1)^(m+1) Σ_j C(m-n-1, j-1) C(m-n-j-1, n+1-j) α(-n-j) v``."""
    if m < n + 1:
        raise ValueError("recursion needs m >= n + 1")
    out = FockVector()
    sign = (-1) ** (m + 1)
    for j in range(1, n + 2):
        c = sign * gbinom(m - n - 1, j - 1) * gbinom(m - n - j - 1, n + 1 - j)
        if c:
            out = out + _times_mode(n + j, v) * c
    return out


def _times_mode(k: int, v: FockVector) -> FockVector:
    return FockVector({insert_mode(mono, k): c for mono, c in v.items()})


@lru_cache(maxsize=None)
def _partition_count(k: int) -> int:
    return len(basis_of_weight(k))


@dataclass
class ProbeReport:
    level: int
    cutoff: int
    coranks: dict[int, int]
    predicted_stable: int

    def table(self) -> str:
        lines = [f"level {self.level}, cutoff {self.cutoff} (coranks are upper bounds)"]
        lines.append("weight  corank  cumulative")
        total = 0
        for w, c in sorted(self.coranks.items()):
            total += c
            lines.append(f"{w:>6}  {c:>6}  {total:>10}")
        lines.append(f"predicted stable corank per weight: {self.predicted_stable}")
        return "\n".join(lines)


def conjecture_probe(n: int, M: int) -> ProbeReport:
    """Per-weight number of new classes in ``V_{<=w} / (span ∩ V_{<=w})`` for ``w <= M``.

    The prediction is the stable count for ``A_{n-1} ⊕ C[x] ⊗ M_{p(n)}``, that is
    ``Σ_{k<=n} p(k)^2`` new classes per weight.
    """
    fam = _family(n)
    coranks: dict[int, int] = {}
    for w in range(M + 1):
        cols = [m for m in basis_of_weight(w) if is_standard(m, n)]
        rows = fam.rows(w, M)
        picked, _ = _level_basis(n, w, M, rows)
        coranks[w] = len(cols) - len(picked)
    predicted = sum(_partition_count(k) ** 2 for k in range(n + 1))
    return ProbeReport(n, M, coranks, predicted)


__all__ = [
    "CutoffTooSmall",
    "OnGeneratorSet",
    "Proven",
    "Unknown",
    "conjecture_probe",
    "enumerate_generators",
    "equivalent",
    "generic_recursion",
    "membership",
    "normal_form_vector",
    "set_cache_dir",
]
