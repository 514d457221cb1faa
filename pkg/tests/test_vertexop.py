from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisenzhu.fock import FockVector, apply_mode, basis_of_weight, basis_up_to, omega, shift_generator, virasoro_mode
from heisenzhu.vertexop import (
    circ_n,
    commutator_residue,
    gbinom,
    mode_product,
    star_formula_closed,
    star_n,
)
from heisenzhu.zhu import Proven, membership

ONE = FockVector.vacuum()


def mono(*parts):
    return FockVector.monomial(parts)


low = st.integers(0, 4).flatmap(lambda w: st.sampled_from(basis_of_weight(w)))
levels = st.integers(0, 3)


def test_gbinom_matches_comb_and_negative_rows():
    for n in range(8):
        for k in range(8):
            assert gbinom(n, k) == (comb(n, k) if k <= n else 0)
    assert gbinom(-1, 3) == -1
    assert gbinom(-3, 2) == 6
    assert gbinom(5, -1) == 0


def test_mode_product_examples():
    assert mode_product(mono(1), -1, ONE) == mono(1)
    assert mode_product(omega(), 1, mono(1, 1)) == mono(1, 1) * 2
    assert mode_product(mono(1, 1), 1, mono(1)) == mono(1) * 2


@given(m=st.integers(1, 4), k=st.integers(-4, 4), v=low)
def test_single_mode_vertex_operator(m, k, v):
    """``Y(α(-m)1, x)`` is the (m-1)-th derivative of ``α(x)`` over (m-1)!."""
    vec = FockVector.monomial(v)
    p = k + m - 1
    expected = apply_mode(k, vec) * gbinom(-k - 1, m - 1)
    assert mode_product(mono(m), p, vec) == expected


@given(m=st.integers(1, 4), k=st.integers(-4, -1), v=low)
def test_singular_part_vanishes_for_negative_k(m, k, v):
    vec = FockVector.monomial(v)
    out = mode_product(mono(m), k + m - 1, vec)
    # only the creation mode α(k) contributes, so the annihilation part is zero
    assert out == apply_mode(k, vec) * gbinom(-k - 1, m - 1)
    assert all(len(t) == len(v) + 1 for t in out.terms)


@given(u=low, v=low, m=st.integers(-3, 4))
def test_mode_product_weight(u, v, m):
    out = mode_product(FockVector.monomial(u), m, FockVector.monomial(v))
    assert all(sum(t) == sum(u) + sum(v) - m - 1 for t in out.terms)


@given(u=low, v=low, m=st.integers(-2, 4))
def test_translation_derivative(u, v, m):
    uu, vv = FockVector.monomial(u), FockVector.monomial(v)
    lhs = mode_product(virasoro_mode(-1, uu), m, vv)
    assert lhs == mode_product(uu, m - 1, vv) * (-m)


def test_circ_examples():
    assert circ_n(ONE, mono(2, 1), 2).is_zero()
    assert circ_n(mono(1), ONE, 2) == mono(6) + mono(5) * 3 + mono(4) * 3 + mono(3)
    for b in [(1,), (2,), (2, 1), (3, 1, 1)]:
        v = FockVector.monomial(b)
        assert circ_n(v, ONE, 0) == shift_generator(v)


def test_star_examples():
    for b in [(), (1,), (4,), (2, 1)]:
        v = FockVector.monomial(b)
        assert star_n(ONE, v, 2) == v
        assert star_n(mono(1), v, 2) == _times(mono(3) * 10 + mono(4) * 15 + mono(5) * 6, v)
    assert star_n(mono(1), mono(1), 0) == mono(1, 1)


def _times(op, v):
    from heisenzhu.fock import raw_multiply

    return FockVector(raw_multiply(op.terms, v.terms))


@given(v=low, n=levels)
def test_vacuum_is_exact_left_identity(v, n):
    vec = FockVector.monomial(v)
    assert star_n(ONE, vec, n) == vec


@given(v=low)
def test_vacuum_is_exact_right_identity_at_level_zero(v):
    vec = FockVector.monomial(v)
    assert star_n(vec, ONE, 0) == vec


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vacuum_is_right_identity_modulo_the_ideal(n):
    for b in basis_up_to(3):
        vec = FockVector.monomial(b)
        res = membership(star_n(vec, ONE, n) - vec, n)
        assert isinstance(res, Proven) and res.certificate.check()


def test_right_product_with_vacuum_is_not_exact():
    # hand expansion of the two residues for u = α(-1)1 at level one
    assert star_n(mono(1), ONE, 1) == mono(2) * -3 - mono(3) * 2


def test_commutator_residue_examples():
    for b in [(), (1,), (2, 1), (3,)]:
        v = FockVector.monomial(b)
        assert commutator_residue(mono(1), v).is_zero()
        assert commutator_residue(ONE, v).is_zero()
    # Res Y(ω, x) α(-1)1 (1 + x) = L(-1)α(-1)1 + L(0)α(-1)1
    assert commutator_residue(omega(), mono(1)) == mono(2) + mono(1)


@given(u=low, v=low)
def test_commutator_residue_formula(u, v):
    """``u *_2 v - v *_2 u`` agrees with the residue modulo the ideal."""
    uu, vv = FockVector.monomial(u), FockVector.monomial(v)
    diff = star_n(uu, vv, 2) - star_n(vv, uu, 2) - commutator_residue(uu, vv)
    res = membership(diff, 2)
    assert isinstance(res, Proven) and res.certificate.check()


def test_closed_formula_examples():
    for b in [(), (1,), (4,), (2, 1)]:
        v = FockVector.monomial(b)
        assert star_formula_closed((1,), v, 2) == star_n(mono(1), v, 2)
    assert star_formula_closed({2: 1}, mono(4), 2) == star_n(mono(2), mono(4), 2)
    lead = star_formula_closed((4,), ONE, 2).coefficient((1, 1, 1, 1))
    assert lead == Fraction((16 - 1) * (16 - 4), 4)


@pytest.mark.parametrize("wu", range(4))
def test_closed_formula_agrees_with_residues(wu):
    """A slice of the full weight-5 comparison that the acceptance suite runs."""
    for u in basis_of_weight(wu):
        exps = {s: u.count(s) for s in set(u)}
        for v in basis_up_to(3):
            vec = FockVector.monomial(v)
            assert star_formula_closed(exps, vec, 2) == star_n(FockVector.monomial(u), vec, 2)
