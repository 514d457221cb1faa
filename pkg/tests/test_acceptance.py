"""Acceptance criteria 1-9, each recorded as one PASS/FAIL line in the terminal summary."""

import itertools
import random
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from heisenzhu.certificate import Certificate
from heisenzhu.coeff import Poly
from heisenzhu.fock import FockVector, apply_mode, basis_of_weight, basis_up_to, virasoro_mode
from heisenzhu.fockmod import ModuleVector, Witness, nonmembership_witness, zero_mode
from heisenzhu.gpoly import (
    a2_structure_map,
    is_normal,
    multiply_in_A2,
    normal_basis,
    parse_gpoly,
    random_gpoly,
    structure_product,
)
from heisenzhu.realize import realize, reduce_level2
from heisenzhu.verify import FINAL_RELATIONS, PROVEN, REPRODUCED, WITNESSES
from heisenzhu.vertexop import commutator_residue, mode_product, star_formula_closed, star_n
from heisenzhu.zhu import Proven, membership

EXPECTED_CUTOFF = 20
LEVEL_ONE_CUTOFF = 14
A = Poly.var("a")


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)


def replay(cert: Certificate) -> bool:
    """Replay the certificate and a copy reloaded from its JSON text."""
    return cert.check() and Certificate.from_json(cert.to_json()).check()


def certificates(entry):
    return [s.certificate for s in entry.samples if s.certificate is not None]


# 1 -----------------------------------------------------------------------


def _final_relation_summary(full_report):
    rows = []
    for name in FINAL_RELATIONS:
        e = full_report.get(name)
        certs = certificates(e)
        ok = e.status == PROVEN and len(certs) == len(e.samples) and all(replay(c) for c in certs)
        rows.append((name, ok, max(c.max_cutoff() for c in certs) if certs else None))
    return rows


def test_criterion_1_final_relations(full_report):
    rows = _final_relation_summary(full_report)
    proven = all(ok for _, ok, _ in rows)
    over = [(n, m) for n, _, m in rows if m is None or m > EXPECTED_CUTOFF]
    cutoffs = ", ".join(f"{n}={m}" for n, _, m in rows)
    detail = f"{sum(ok for _, ok, _ in rows)}/13 Proven and replayed; cutoffs {cutoffs}"
    if over:
        detail += f"; expected M <= {EXPECTED_CUTOFF} not met by {', '.join(n for n, _ in over)}"
    record(1, proven and not over, detail)
    assert len(rows) == 13
    assert proven


@pytest.mark.xfail(
    strict=True,
    reason="Z^2, W^2, ZW-Y and ZW-WZ need cutoff 22: Z and W have no representative of weight <= 8",
)
def test_criterion_1_expected_cutoffs(full_report):
    assert all(m <= EXPECTED_CUTOFF for _, _, m in _final_relation_summary(full_report))


def test_criterion_1_cutoff_lower_bound():
    """No vector of weight <= 8 represents Z or W, so their products reach weight 9 + 9 + 4."""
    rows = [dict(reduce_level2(FockVector.monomial(b))[0].items()) for b in basis_up_to(8)]
    keys = sorted({k for r in rows for k in r}, key=str)
    from heisenzhu.linalg import independent_subset, solve_exact

    picked, coords = independent_subset(rows, keys)
    sub = [rows[i] for i in picked]
    for letter in "ZW":
        target = dict(parse_gpoly(letter).items())
        sol = solve_exact(sub, [keys[j] for j in coords], target)
        combo: dict = {}
        for r, c in zip(sub, sol or []):
            for k, v in r.items():
                combo[k] = combo.get(k, 0) + c * v
        assert sol is None or {k: v for k, v in combo.items() if v} != target
        rep = realize(parse_gpoly(letter), 2).rep
        assert max(sum(m) for m in rep.terms) == 9


# 2 -----------------------------------------------------------------------


def test_criterion_2_witnesses(full_report):
    v, w = ModuleVector.monomial((1, 1)), ModuleVector.monomial((2,))
    full = {t: realize(parse_gpoly(t), 2).full for t in ("(x^2-y)(x^2-y+2)", "Y", "Z", "W")}
    literal = [
        zero_mode(full["(x^2-y)(x^2-y+2)"], v) == v * 8,
        zero_mode(full["(x^2-y)(x^2-y+2)"], w) == w * 8,
        zero_mode(full["Y"], w) == w,
        zero_mode(full["Z"], v) == w,
        zero_mode(full["W"], w) == v,
    ]
    entries = [full_report.get(name) for name in WITNESSES]
    found = [isinstance(nonmembership_witness(parse_gpoly(text), 2), Witness) for text, _ in WITNESSES.values()]
    ok = all(literal) and all(e.status == REPRODUCED for e in entries) and all(found)
    record(2, ok, f"literal actions {sum(literal)}/5, witness entries {sum(e.status == REPRODUCED for e in entries)}/6")
    assert ok


# 3 -----------------------------------------------------------------------


def test_criterion_3_level_one(full_report):
    names = ("level-one-images", "A1-ideal")
    results = [full_report.get(n) for n in names]
    certs = [c for e in results for c in certificates(e)]
    cut = max(c.max_cutoff() for c in certs)
    labels = [s.label for s in results[0].samples]
    ok = (
        all(e.status == PROVEN for e in results)
        and all(replay(c) for c in certs)
        and all(c.level == 1 for c in certs)
        and cut <= LEVEL_ONE_CUTOFF
        and len(labels) == 3
    )
    record(3, ok, f"images {len(labels)}/3 and ideal generator Proven at level one; max cutoff {cut}")
    assert ok


# 4 -----------------------------------------------------------------------


def test_criterion_4_registry(full_report):
    section = [e for e in full_report.entries if e.section in ("generators", "appendix")]
    failed = [e.id for e in section if e.status == "Failed"]
    membership_entries = [e for e in section if e.kind.startswith("membership")]
    not_proven = [e.id for e in membership_entries if e.status != PROVEN]
    oracle_ok = all(e.status == REPRODUCED for e in section if e.kind == "oracle-equality")
    ok = not failed and not not_proven and oracle_ok and len(section) == 63
    record(4, ok, f"{len(membership_entries)} membership entries Proven, {len(failed)} Failed, sampled bound 3")
    assert ok, (failed, not_proven)


# 5 -----------------------------------------------------------------------

_REDUCTIONS: dict = {}


def _reductions():
    if not _REDUCTIONS:
        for w in range(9):
            for b in basis_of_weight(w):
                _REDUCTIONS[b] = reduce_level2(FockVector.monomial(b))
    return _REDUCTIONS


def test_criterion_5_reduction_completeness():
    red = _reductions()
    good = [b for b, (p, cert) in red.items() if is_normal(p) and replay(cert)]
    ok = len(red) == 67 and len(good) == 67
    record(5, ok, f"{len(good)}/{len(red)} monomials of weight <= 8 reduce with replaying certificates")
    assert ok


# 6 -----------------------------------------------------------------------


def test_criterion_6_structure_isomorphism():
    basis = normal_basis(2)
    table_ok = all(
        a2_structure_map(multiply_in_A2(p, q)) == structure_product(a2_structure_map(p), a2_structure_map(q))
        for p, q in itertools.product(basis, repeat=2)
    )
    rng = random.Random(20240607)
    pairs = [(random_gpoly(rng), random_gpoly(rng)) for _ in range(100)]
    hom_ok = all(
        a2_structure_map(multiply_in_A2(p, q)) == structure_product(a2_structure_map(p), a2_structure_map(q))
        for p, q in pairs
    )
    ok = len(basis) == 18 and table_ok and hom_ok
    record(6, ok, f"table {len(basis)}x{len(basis)} and 100 seeded random pairs")
    assert ok


# 7 -----------------------------------------------------------------------


def test_criterion_7_oracles(full_report):
    mons = basis_up_to(5)
    mismatches = 0
    for u in mons:
        exps = {s: u.count(s) for s in set(u)}
        uu = FockVector.monomial(u)
        for v in mons:
            vv = FockVector.monomial(v)
            mismatches += star_formula_closed(exps, vv, 2) != star_n(uu, vv, 2)
    a0 = full_report.get("A0-xx")
    ok = mismatches == 0 and a0.status == PROVEN and all(replay(c) for c in certificates(a0))
    record(7, ok, f"{len(mons) ** 2} pairs, {mismatches} mismatches; A0-xx {a0.status}")
    assert ok


# 8 -----------------------------------------------------------------------


def test_criterion_8_parameter_independence(full_report):
    names = list(FINAL_RELATIONS) + ["level-one-images", "A1-ideal"]
    names += [e.id for e in full_report.entries if e.section in ("generators", "appendix")]
    certs = [c for n in names for c in certificates(full_report.get(n))]
    certs += [cert for _, cert in _reductions().values()]
    bad = [c for c in certs if not (c.check() and c.a_degree() == 0)]
    ok = not bad and len(certs) > 67
    record(8, ok, f"{len(certs)} certificates replayed, {len(bad)} with a-dependence")
    assert ok


# 9 -----------------------------------------------------------------------


def _suite_heisenberg():
    for m, n in itertools.product(range(-4, 5), repeat=2):
        for b in basis_up_to(4):
            v = FockVector.monomial(b)
            lhs = apply_mode(m, apply_mode(n, v)) - apply_mode(n, apply_mode(m, v))
            if lhs != (v * m if m + n == 0 else FockVector()):
                return False
    return True


def _suite_virasoro():
    c = Poly.const(1) - A * A * 12
    for m, n in itertools.product(range(-3, 4), repeat=2):
        for b in basis_up_to(3):
            v = FockVector.monomial(b)
            lhs = virasoro_mode(m, virasoro_mode(n, v)) - virasoro_mode(n, virasoro_mode(m, v))
            rhs = virasoro_mode(m + n, v) * (m - n)
            if m + n == 0:
                rhs = rhs + v * (c * Fraction(m**3 - m, 12))
            if lhs != rhs:
                return False
    return True


def _suite_grading():
    for b in basis_up_to(6):
        v = FockVector.monomial(b)
        if virasoro_mode(0, v) != v * sum(b):
            return False
        for u in basis_up_to(3):
            out = mode_product(FockVector.monomial(u), 1, v)
            if any(sum(t) != sum(u) + sum(b) - 2 for t in out.terms):
                return False
    return True


def _suite_derivative():
    for u, v in itertools.product(basis_up_to(3), repeat=2):
        uu, vv = FockVector.monomial(u), FockVector.monomial(v)
        for m in range(-2, 4):
            if mode_product(virasoro_mode(-1, uu), m, vv) != mode_product(uu, m - 1, vv) * (-m):
                return False
    return True


def _proven(vec):
    res = membership(vec, 2)
    return isinstance(res, Proven) and res.certificate.check()


def _suite_identity_associativity():
    one = FockVector.vacuum()
    low = basis_up_to(2)
    for b in basis_up_to(3):
        v = FockVector.monomial(b)
        if star_n(one, v, 2) != v or not _proven(star_n(v, one, 2) - v):
            return False
    for a, b, c in itertools.islice(itertools.product(low, repeat=3), 0, None, 5):
        aa, bb, cc = (FockVector.monomial(t) for t in (a, b, c))
        if not _proven(star_n(star_n(aa, bb, 2), cc, 2) - star_n(aa, star_n(bb, cc, 2), 2)):
            return False
    return True


def _suite_commutator():
    for u, v in itertools.product(basis_up_to(3), repeat=2):
        uu, vv = FockVector.monomial(u), FockVector.monomial(v)
        if not _proven(star_n(uu, vv, 2) - star_n(vv, uu, 2) - commutator_residue(uu, vv)):
            return False
    return True


def _suite_replay():
    res = membership(FockVector.monomial((5,)) + FockVector.monomial((4,)), 2)
    cert = res.certificate
    tampered = Certificate(cert.target + FockVector.monomial((2,)), cert.level, cert.cutoff, cert.terms)
    return replay(cert) and not tampered.check() and tampered.residual() == FockVector.monomial((2,))


SUITES = {
    "Heisenberg bracket": _suite_heisenberg,
    "Virasoro bracket": _suite_virasoro,
    "grading": _suite_grading,
    "L(-1) derivative": _suite_derivative,
    "identity and associativity": _suite_identity_associativity,
    "commutator residue": _suite_commutator,
    "certificate replay": _suite_replay,
}


def test_criterion_9_property_suites():
    outcome = {name: run() for name, run in SUITES.items()}
    failed = [n for n, ok in outcome.items() if not ok]
    detail = f"{len(SUITES) - len(failed)}/{len(SUITES)} suites"
    if failed:
        detail += f"; failing: {', '.join(failed)}"
    record(9, not failed, detail)
    assert not failed
