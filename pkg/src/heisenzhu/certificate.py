"""Membership certificates: exact, replayable witnesses that a vector lies in O_n(V).

A certificate states ``target = Σ coeff·generator + Σ coeff·(ν·base) + Σ products``
where each generator is a circle product ``u ∘_n v`` or a shift ``(L(-1)+L(0))w``
of basis monomials, the optional filtration part spans ``F_r(base)``, and each
product term is ``coeff·(factor *_n s)``, ``coeff·(s *_n factor)`` or plain
``coeff·s`` for the target ``s`` of a nested certificate.  Product terms rely
on ``O_n(V)`` being a two-sided ideal for ``*_n``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from .coeff import Poly, format_poly, parse_poly
from .fock import FockVector, ModeMonomial, format_element, format_monomial, parse_element, raw_add, raw_multiply
from .rules import Origin
from .vertexop import star_n


@dataclass
class ProductTerm:
    side: str  # "left": factor *_n sub.target ; "right": sub.target *_n factor ; "scale": sub.target
    factor: FockVector
    coeff: Poly
    certificate: "Certificate"

    def value(self, n: int) -> FockVector:
        inner = self.certificate.target
        if self.side == "scale":
            return inner * self.coeff
        prod = star_n(self.factor, inner, n) if self.side == "left" else star_n(inner, self.factor, n)
        return prod * self.coeff


@dataclass
class Certificate:
    target: FockVector
    level: int
    cutoff: int
    terms: list[tuple[Origin, Poly]] = field(default_factory=list)
    filtration: list[tuple[ModeMonomial, Poly]] = field(default_factory=list)
    base: FockVector | None = None
    products: list[ProductTerm] = field(default_factory=list)

    # ------------------------------------------------------------------
    def flat_value(self) -> FockVector:
        """``Σ coeff·generator + Σ coeff·(ν·base)`` without product terms."""
        layers: dict[int, dict] = {}
        for origin, coeff in self.terms:
            vec = origin.vector(self.level)
            for (da, _), q in coeff.items():
                raw_add(layers.setdefault(da, {}), vec, q)
        if self.filtration:
            base_layers = (self.base or FockVector.vacuum()).layers()
            for mono, coeff in self.filtration:
                for (da, _), q in coeff.items():
                    for db, braw in base_layers.items():
                        raw_add(layers.setdefault(da + db, {}), raw_multiply({mono: 1}, braw), q)
        return FockVector.from_layers(layers)

    def replay(self) -> FockVector:
        total = self.flat_value()
        for p in self.products:
            total = total + p.value(self.level)
        return total

    def residual(self) -> FockVector:
        return self.target - self.replay()

    def check(self) -> bool:
        """Replay this certificate and every nested one exactly."""
        if not self.residual().is_zero():
            return False
        return all(p.certificate.check() for p in self.products)

    def a_degree(self) -> int:
        """Largest power of ``a`` in any coefficient (nested certificates included)."""
        deg = max((c.degree("a") for _, c in self.terms), default=0)
        deg = max([deg] + [c.degree("a") for _, c in self.filtration])
        for p in self.products:
            deg = max(deg, p.coeff.degree("a"), p.factor.a_degree(), p.certificate.a_degree())
        return max(deg, 0)

    def max_cutoff(self) -> int:
        return max([self.cutoff] + [p.certificate.max_cutoff() for p in self.products])

    def size(self) -> int:
        return len(self.terms) + len(self.filtration) + sum(p.certificate.size() for p in self.products)

    # ------------------------------------------------------------------
    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "target": format_element(self.target),
            "level": self.level,
            "cutoff": self.cutoff,
            "terms": [{"origin": o.tag(), "coeff": format_poly(c)} for o, c in self.terms],
            "filtration": [{"modes": format_monomial(m, ""), "coeff": format_poly(c)} for m, c in self.filtration],
        }
        if self.base is not None:
            out["base"] = format_element(self.base)
        if self.products:
            out["products"] = [
                {
                    "side": p.side,
                    "factor": format_element(p.factor),
                    "coeff": format_poly(p.coeff),
                    "certificate": p.certificate.to_dict(),
                }
                for p in self.products
            ]
        out["residual"] = format_element(self.residual())
        return out

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Certificate":
        n = int(d["level"])
        cert = cls(
            target=parse_element(d["target"]),
            level=n,
            cutoff=int(d["cutoff"]),
            terms=[(parse_origin(t["origin"]), parse_poly(t["coeff"])) for t in d.get("terms", [])],
            filtration=[(parse_modes(f["modes"]), parse_poly(f["coeff"])) for f in d.get("filtration", [])],
            base=parse_element(d["base"]) if "base" in d else None,
        )
        for p in d.get("products", []):
            cert.products.append(
                ProductTerm(p["side"], parse_element(p["factor"]), parse_poly(p["coeff"]), cls.from_dict(p["certificate"]))
            )
        return cert

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


_MODE = re.compile(r"a\(-(\d+)\)(?:\^(\d+))?")


def parse_modes(text: str) -> ModeMonomial:
    parts: list[int] = []
    for k, e in _MODE.findall(text):
        parts.extend([int(k)] * int(e or 1))
    return tuple(sorted(parts, reverse=True))


def _mono_of(text: str) -> ModeMonomial:
    vec = parse_element(text)
    (mono,) = vec.terms.keys()
    return mono


def parse_origin(tag: str) -> Origin:
    tag = tag.strip()
    if tag.startswith("shift(") and tag.endswith(")"):
        return Origin.shift(_mono_of(tag[6:-1]))
    if tag.startswith("circ(") and tag.endswith(")"):
        inner = tag[5:-1]
        left, right = inner.split(">,", 1)
        return Origin.circ(_mono_of(left + ">"), _mono_of(right))
    raise ValueError(f"bad generator tag {tag!r}")
