import itertools

import pytest

from heisenzhu.coeff import Poly
from heisenzhu.fock import FockVector
from heisenzhu.fockmod import (
    LAMBDA,
    ModuleVector,
    NotFound,
    Witness,
    format_module,
    module_apply_mode,
    nonmembership_witness,
    parse_module,
    virasoro_module,
    zero_mode,
)
from heisenzhu.gpoly import GeneratorPoly, parse_gpoly
from heisenzhu.realize import generator_vector
from heisenzhu.vertexop import star_n
from heisenzhu.zhu import enumerate_generators

A = Poly.var("a")
L = LAMBDA
VL = ModuleVector.highest()
U = ModuleVector.monomial((1,))
V = ModuleVector.monomial((1, 1))
W = ModuleVector.monomial((2,))
WINDOW = (VL, U, V, W)
GENERATORS = ("x", "y", "yt", "z", "zt")


def test_module_mode_examples():
    assert module_apply_mode(0, VL) == VL * L
    assert module_apply_mode(1, U) == VL
    assert module_apply_mode(-1, VL) == U


def test_module_virasoro_examples():
    assert virasoro_module(0, VL) == VL * (L * L * Poly.const(1) / 2 - A * L)
    assert virasoro_module(-1, VL) == U * L
    assert virasoro_module(0, U) == U * (L * L / 2 - A * L + 1)


def test_zero_mode_examples():
    assert zero_mode(generator_vector("y"), U) == U * (L * L + 2)
    assert zero_mode(generator_vector("z"), V) == V * (-(L**3) - L * 20) + W * -16
    assert zero_mode(FockVector.vacuum(), W) == W


@pytest.mark.parametrize("u,v", list(itertools.product(GENERATORS, repeat=2)))
def test_zero_mode_is_multiplicative(u, v):
    gu, gv = generator_vector(u), generator_vector(v)
    prod = star_n(gu, gv, 2)
    for w in WINDOW:
        assert zero_mode(prod, w) == zero_mode(gu, zero_mode(gv, w))


def test_ideal_generators_act_as_zero():
    gens = [g for g in enumerate_generators(2, 8).vectors()]
    sample = gens[:: max(1, len(gens) // 20)][:20]
    assert len(sample) == 20
    for g in sample:
        for w in WINDOW:
            assert zero_mode(g, w).is_zero()


def test_lemma_table_literals():
    table = {
        ("x", VL): VL * L,
        ("x", U): U * L,
        ("x", V): V * L,
        ("x", W): W * L,
        ("y", VL): VL * (L**2),
        ("y", U): U * (L**2 + 2),
        ("y", V): V * (L**2 + 4),
        ("y", W): W * (L**2 + 4),
        ("yt", VL): VL * -(L**2),
        ("yt", U): U * (-(L**2) - 4),
        ("yt", V): V * (-(L**2) - 8),
        ("yt", W): W * (-(L**2) - 20),
        ("z", VL): VL * -(L**3),
        ("z", U): U * (-(L**3) - L * 10),
        ("z", V): V * (-(L**3) - L * 20) + W * -16,
        ("z", W): V * -20 + W * (-(L**3) - L * 44),
        ("zt", VL): VL * L**3,
        ("zt", U): U * (L**3 + L * 8),
        ("zt", V): V * (L**3 + L * 16) + W * 32,
        ("zt", W): W * (L**3 + L * 40),
    }
    assert len(table) == 20
    for (g, w), expected in table.items():
        assert zero_mode(generator_vector(g), w) == expected, (g, w)


def test_witness_examples():
    w = nonmembership_witness(parse_gpoly("(x^2-y)(x^2-y+2)"), 2)
    assert isinstance(w, Witness)
    assert w.describe() == "acts as 8 on a(-1)^2|λ>"
    y = nonmembership_witness(parse_gpoly("Y"), 2)
    assert y.vector == W and y.image == W
    assert isinstance(nonmembership_witness(GeneratorPoly(), 2), NotFound)
    assert isinstance(nonmembership_witness(FockVector(), 2), NotFound)


def test_module_text_round_trip():
    for w in (VL, U * L, V * (L**3 - 2) + W * Poly.const(3), W * (A * L)):
        assert parse_module(format_module(w)) == w
