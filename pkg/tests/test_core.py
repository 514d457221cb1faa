"""The compiled kernels and the pure-Python fallback give identical results."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisenzhu import fock
from heisenzhu.coeff import Poly

core = pytest.importorskip("heisenzhu._core")

monomials = st.integers(0, 7).flatmap(lambda w: st.sampled_from(fock.basis_of_weight(w)))
coeffs = st.one_of(
    st.integers(-5, 5),
    st.fractions(max_denominator=7),
    st.builds(lambda c: Poly.var("a") * c + 1, st.integers(-3, 3)),
)
raw = st.dictionaries(monomials, coeffs, max_size=6)


def both(name):
    return fock.PURE_KERNELS[name], getattr(core, name)


def test_fallback_is_selected_when_compiled_module_is_active():
    assert fock.HAVE_CORE
    assert fock.raw_add is core.raw_add


@given(m=monomials, k=st.integers(1, 9))
def test_insert_mode(m, k):
    py, c = both("insert_mode")
    assert py(m, k) == c(m, k)


@given(a=monomials, b=monomials)
def test_multiply_monomials(a, b):
    py, c = both("multiply_monomials")
    assert py(a, b) == c(a, b)


@given(acc=raw, vec=raw, s=st.one_of(st.just(1), st.fractions(max_denominator=5)))
def test_raw_add(acc, vec, s):
    py, c = both("raw_add")
    assert py(dict(acc), vec, s) == c(dict(acc), vec, s)


@given(m=st.integers(-6, 6), vec=raw, z=st.one_of(st.none(), st.just(Fraction(3, 2))))
def test_raw_apply_mode(m, vec, z):
    py, c = both("raw_apply_mode")
    assert py(m, vec, z) == c(m, vec, z)


@given(p=raw, vec=raw)
def test_raw_multiply(p, vec):
    py, c = both("raw_multiply")
    assert py(p, vec) == c(p, vec)


@given(vec=raw)
def test_raw_shift(vec):
    py, c = both("raw_shift")
    assert py(vec) == c(vec)
