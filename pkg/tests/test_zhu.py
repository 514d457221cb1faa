import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisenzhu.fock import FockVector, basis_of_weight, basis_up_to
from heisenzhu.gpoly import (
    GeneratorPoly,
    a2_structure_map,
    format_gpoly,
    is_normal,
    multiply_in_A2,
    normal_form,
    parse_gpoly,
    random_gpoly,
    structure_product,
)
from heisenzhu.linalg import independent_subset, solve_exact
from heisenzhu.realize import realize, reduce_level2
from heisenzhu.vertexop import star_n
from heisenzhu.zhu import (
    CutoffTooSmall,
    Proven,
    Unknown,
    conjecture_probe,
    enumerate_generators,
    equivalent,
    generic_recursion,
    membership,
)

ONE = FockVector.vacuum()


def mono(*parts):
    return FockVector.monomial(parts)


def proven(res):
    return isinstance(res, Proven) and res.certificate.check()


# generators --------------------------------------------------------------


def test_enumerate_generator_examples():
    assert mono(2) + mono(1) in enumerate_generators(2, 5).vectors()
    assert mono(2) + mono(1) in enumerate_generators(0, 2).vectors()
    assert len(enumerate_generators(2, 0)) == 0


def test_enumerate_rejects_negative_cutoff():
    with pytest.raises(ValueError):
        enumerate_generators(2, -1)


# membership --------------------------------------------------------------


def test_membership_examples():
    assert proven(membership(mono(2) + mono(1), 2, 3))
    # (α(-3)+α(-4))(α(-3)+2α(-4)+α(-5))1 expanded by hand
    assert proven(membership(mono(3, 3) + mono(4, 3) * 3 + mono(5, 3) + mono(4, 4) * 2 + mono(5, 4), 2, 10))
    res = membership(mono(1), 2, 10)
    assert isinstance(res, Unknown) and not res


def test_membership_cutoff_too_small():
    with pytest.raises(CutoffTooSmall):
        membership(mono(6), 2, 5)


def test_equivalent_examples():
    assert proven(equivalent(mono(5), -mono(4), 2, 6))
    assert proven(equivalent(mono(5, 4), -mono(4, 4), 2, 12))
    same = equivalent(mono(3, 1), mono(3, 1), 2, 4)
    assert proven(same) and not same.certificate.terms


def test_filtration_membership_records_the_filtration_part():
    res = membership(mono(1), 2, extra=(1, ONE))
    assert proven(res)
    assert res.certificate.filtration


@pytest.mark.parametrize("g", enumerate_generators(2, 8).vectors()[::9])
def test_ideal_is_two_sided(g):
    for u in basis_up_to(3)[::2]:
        uu = FockVector.monomial(u)
        assert proven(membership(star_n(uu, g, 2), 2, ceiling=16))
        assert proven(membership(star_n(g, uu, 2), 2, ceiling=16))


def test_level_two_ideal_lies_in_level_one_ideal():
    for g in enumerate_generators(2, 8).vectors():
        res = membership(g, 1, ceiling=12)
        assert proven(res) and res.certificate.max_cutoff() <= 12


@given(b=st.integers(0, 5).flatmap(lambda w: st.sampled_from(basis_of_weight(w))))
def test_x_is_central(b):
    v = FockVector.monomial(b)
    assert proven(membership(star_n(mono(1), v, 2) - star_n(v, mono(1), 2), 2))


def test_associativity_modulo_the_ideal():
    low = basis_up_to(2)
    rng = random.Random(7)
    for _ in range(12):
        a, b, c = (FockVector.monomial(rng.choice(low)) for _ in range(3))
        assoc = star_n(star_n(a, b, 2), c, 2) - star_n(a, star_n(b, c, 2), 2)
        assert proven(membership(assoc, 2))


def test_shift_is_not_in_the_circle_span():
    """Shifts are needed: α(-2)1 + α(-1)1 is outside the span of circle products alone."""
    gens = [v for o, v in enumerate_generators(2, 12).generators if o.kind == "circ"]
    target = (mono(2) + mono(1)).raw()
    rows = [g.raw() for g in gens]
    cols = sorted({k for r in rows for k in r} | set(target), key=lambda m: (sum(m), m))
    picked, coords = independent_subset(rows, cols)
    sub = [rows[i] for i in picked]
    sol = solve_exact(sub, [cols[j] for j in coords], target)
    combo = {}
    for r, c in zip(sub, sol or []):
        for k, v in r.items():
            combo[k] = combo.get(k, 0) + c * v
    assert sol is None or {k: v for k, v in combo.items() if v} != target


# generic recursion -------------------------------------------------------


def test_generic_recursion_examples():
    assert generic_recursion(6, 2, ONE) == -(mono(3) + mono(4) * 3 + mono(5) * 3)
    for v in (ONE, mono(1), mono(2, 1)):
        assert generic_recursion(3, 2, v) == _times(mono(3), v)
    assert generic_recursion(4, 1, mono(1)) == -mono(2, 1) - mono(3, 1) * 2


def _times(op, v):
    from heisenzhu.fock import raw_multiply

    return FockVector(raw_multiply(op.terms, v.terms))


@pytest.mark.parametrize("m", range(3, 9))
def test_generic_recursion_is_sound(m):
    for v in (ONE, mono(1), mono(2)):
        assert proven(equivalent(_times(mono(m), v), generic_recursion(m, 2, v), 2))


# reduction onto generators ----------------------------------------------


def test_reduce_examples():
    assert format_gpoly(reduce_level2(mono(2))[0]) == "-x"
    assert format_gpoly(reduce_level2(mono(4, 4))[0]) == "x^2"
    assert format_gpoly(reduce_level2(mono(5, 3))[0]) == "x^2"
    assert format_gpoly(reduce_level2(ONE)[0]) == "1"


@pytest.mark.parametrize("w", range(7))
def test_reduce_certificates_replay(w):
    for b in basis_of_weight(w):
        p, cert = reduce_level2(FockVector.monomial(b))
        assert is_normal(p)
        assert cert.check()


# generator polynomials ---------------------------------------------------


def test_normal_form_examples():
    assert normal_form(parse_gpoly("YZ")) == parse_gpoly("Z")
    assert normal_form(parse_gpoly("WZ")) == normal_form(parse_gpoly("1/8(x^2-y)(x^2-y+2)-Y"))
    assert normal_form(parse_gpoly("xY")) == parse_gpoly("xY")


def test_multiply_examples():
    p = parse_gpoly("x^2 y - 3W")
    assert multiply_in_A2(parse_gpoly("Z"), parse_gpoly("W")) == parse_gpoly("Y")
    assert multiply_in_A2(parse_gpoly("Y"), parse_gpoly("Y")) == parse_gpoly("Y")
    assert multiply_in_A2(GeneratorPoly.const(1), p) == normal_form(p)


def test_structure_map_examples():
    x2 = (0, 0, 1)
    c1, c2, m = a2_structure_map(parse_gpoly("y"))
    assert c1 == x2 and c2 == (2, 0, 1)
    assert m == (((4, 0, 1), ()), ((), (4, 0, 1)))
    assert a2_structure_map(parse_gpoly("Y")) == ((), (), (((), ()), ((), (1,))))
    assert a2_structure_map(normal_form(parse_gpoly("(x^2-y)(x^2-y+2)(x^2-y+4)"))) == ((), (), (((), ()), ((), ())))


@pytest.mark.parametrize("seed", range(25))
def test_normal_form_idempotent_and_multiplicative(seed):
    rng = random.Random(seed)
    p, q = random_gpoly(rng), random_gpoly(rng)
    assert normal_form(normal_form(p)) == normal_form(p)
    lhs = a2_structure_map(multiply_in_A2(p, q))
    assert lhs == structure_product(a2_structure_map(p), a2_structure_map(q))


def test_rewriting_is_confluent_on_random_orders():
    rng = random.Random(11)
    for _ in range(200):
        p = random_gpoly(rng, terms=4, max_word=4)
        assert normal_form(p, rng=random.Random(rng.random())) == normal_form(p)


def test_realized_relations_have_exact_representatives():
    r = realize(parse_gpoly("ZW-Y"), 2)
    assert r.rep.is_zero()
    assert r.certificate.check()


# probe -------------------------------------------------------------------


def test_conjecture_probe_examples():
    assert conjecture_probe(2, 0).coranks == {0: 1}
    assert all(c == 1 for c in conjecture_probe(0, 4).coranks.values())
    rep = conjecture_probe(1, 8)
    assert rep.coranks[0] == 1 and rep.coranks[8] <= rep.predicted_stable
    assert "corank" in rep.table()
