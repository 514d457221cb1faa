from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisenzhu.coeff import Poly, parse_poly
from heisenzhu.fock import (
    FockVector,
    ParseError,
    apply_mode,
    apply_word,
    basis_of_weight,
    format_element,
    omega,
    parse_element,
    shift_generator,
    virasoro_mode,
)

A = Poly.var("a")


def mono(*parts):
    return FockVector.monomial(parts)


def partitions_count(n):
    """Independent count via the pentagonal-number recurrence."""
    p = [1] + [0] * n
    for k in range(1, n + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p[n]


small_monomials = st.integers(0, 6).flatmap(lambda w: st.sampled_from(basis_of_weight(w)))
modes = st.integers(-5, 5)


@st.composite
def vectors(draw, max_terms=3):
    out = FockVector()
    for _ in range(draw(st.integers(1, max_terms))):
        c = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        out = out + FockVector.monomial(draw(small_monomials), c)
    return out


# basis -------------------------------------------------------------------


def test_basis_examples():
    assert basis_of_weight(0) == [()]
    assert sorted(basis_of_weight(3)) == sorted([(3,), (2, 1), (1, 1, 1)])
    assert len(basis_of_weight(6)) == 11


@pytest.mark.parametrize("n", range(21))
def test_basis_size_is_partition_count(n):
    assert len(basis_of_weight(n)) == partitions_count(n)
    assert len(set(basis_of_weight(n))) == partitions_count(n)


def test_negative_weight_rejected():
    with pytest.raises(ValueError):
        basis_of_weight(-1)


# modes -------------------------------------------------------------------


def test_apply_mode_examples():
    assert apply_mode(1, mono(1)) == FockVector.vacuum()
    assert apply_mode(0, mono(1)).is_zero()
    assert apply_mode(2, mono(2, 2)) == mono(2) * 4


def test_apply_word_examples():
    v = mono(1)
    assert apply_word([], v) == v
    assert apply_word([-1, 1], v) == v
    assert apply_word([1, -1], FockVector.vacuum()) == FockVector.vacuum()


@given(m=modes, n=modes, v=vectors())
def test_heisenberg_bracket(m, n, v):
    lhs = apply_mode(m, apply_mode(n, v)) - apply_mode(n, apply_mode(m, v))
    rhs = v * m if m + n == 0 else FockVector()
    assert lhs == rhs


@given(m=modes, b=small_monomials)
def test_modes_shift_weight(m, b):
    out = apply_mode(m, FockVector.monomial(b))
    assert all(sum(k) == sum(b) - m for k in out.terms)


# Virasoro ----------------------------------------------------------------


def test_virasoro_examples():
    assert virasoro_mode(0, mono(1)) == mono(1)
    assert virasoro_mode(-2, FockVector.vacuum()) == omega()
    assert omega() == mono(1, 1) * Fraction(1, 2) + mono(2) * A
    for i in range(1, 6):
        assert virasoro_mode(-1, mono(*[1] * i)) == mono(2, *[1] * (i - 1)) * i


@given(m=st.integers(-3, 3), n=st.integers(-3, 3), v=vectors(2))
def test_virasoro_bracket_with_symbolic_central_charge(m, n, v):
    lhs = virasoro_mode(m, virasoro_mode(n, v)) - virasoro_mode(n, virasoro_mode(m, v))
    rhs = virasoro_mode(m + n, v) * (m - n)
    if m + n == 0:
        c = Poly.const(1) - A * A * 12
        rhs = rhs + v * (c * Fraction(m**3 - m, 12))
    assert lhs == rhs


@given(b=small_monomials)
def test_virasoro_zero_is_weight(b):
    v = FockVector.monomial(b)
    assert virasoro_mode(0, v) == v * sum(b)


# shift generators --------------------------------------------------------


def test_shift_examples():
    assert shift_generator(mono(1)) == mono(2) + mono(1)
    assert shift_generator(FockVector.vacuum()).is_zero()
    assert shift_generator(mono(3)) == mono(4) * 3 + mono(3) * 3


@given(v=vectors())
def test_shift_is_a_free_and_matches_virasoro(v):
    s = shift_generator(v)
    assert s.a_degree() <= 0
    assert s == virasoro_mode(-1, v) + virasoro_mode(0, v)


# text form ---------------------------------------------------------------


def test_parse_examples():
    assert parse_element("a(-1)^2 a(-4) |0>") == mono(4, 1, 1)
    assert parse_element("3/2 a(-2)|0> - a(-1)|0>") == mono(2) * Fraction(3, 2) - mono(1)
    assert parse_element("a a(-2)|0>") == mono(2) * A


@pytest.mark.parametrize("bad", ["a(-1", "a(1)|0>", "a(0)|0>", "|0> +", "3 a(-2)", "a(-2)|0> * * |0>"])
def test_parse_errors_report_position(bad):
    with pytest.raises(ParseError) as info:
        parse_element(bad)
    assert 0 <= info.value.position <= len(bad)


@given(v=vectors(4))
def test_format_parse_round_trip(v):
    assert parse_element(format_element(v)) == v


def test_coefficients_with_parameter_round_trip():
    v = mono(3, 1) * parse_poly("2 a^2 - 1/3") + mono(2) * A
    assert parse_element(format_element(v)) == v
