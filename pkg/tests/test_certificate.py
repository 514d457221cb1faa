from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from heisenzhu.certificate import Certificate
from heisenzhu.coeff import Poly
from heisenzhu.fock import FockVector
from heisenzhu.gpoly import parse_gpoly
from heisenzhu.realize import relation_certificate
from heisenzhu.zhu import Proven, membership


def mono(*parts):
    return FockVector.monomial(parts)


def test_json_round_trip_replays():
    res = membership(mono(3, 3) + mono(4, 3) * 3 + mono(5, 3) + mono(4, 4) * 2 + mono(5, 4), 2)
    assert isinstance(res, Proven)
    text = res.certificate.to_json()
    again = Certificate.from_json(text)
    assert again.check()
    assert again.to_json() == text


def test_nested_certificate_round_trip():
    _, cert = relation_certificate(parse_gpoly("Y^2-Y"), 2)
    assert cert is not None and cert.products
    again = Certificate.from_json(cert.to_json())
    assert again.check()
    assert again.max_cutoff() == cert.max_cutoff()
    assert again.a_degree() == 0


def test_filtration_certificate_round_trip():
    res = membership(mono(1), 2, extra=(1, FockVector.vacuum()))
    again = Certificate.from_json(res.certificate.to_json())
    assert again.check() and again.filtration


@given(c=st.fractions().filter(lambda q: q != 0))
def test_tampered_target_does_not_replay(c):
    res = membership(mono(2) + mono(1), 2, 3)
    cert = res.certificate
    bad = Certificate(cert.target + mono(2) * Fraction(c), cert.level, cert.cutoff, cert.terms)
    assert not bad.check()
    assert bad.residual() == mono(2) * Fraction(c)


def test_tampered_coefficient_does_not_replay():
    res = membership(mono(5) + mono(4), 2)
    cert = res.certificate
    origin, coeff = cert.terms[0]
    bad = Certificate(cert.target, cert.level, cert.cutoff, [(origin, coeff + Poly.const(1))] + cert.terms[1:])
    assert not bad.check()
