"""Arithmetic in Q(alpha) = Q[a]/(m(a)) for an irreducible m.

Used to treat Galois orbits of singular points exactly: every computation
that would need a root of m is done once over the field it generates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy.polys.rings import PolyElement

from .scalar_poly import get_ring, primitive_part, rat

ALG = get_ring(("a",))


@dataclass(frozen=True)
class NumberField:
    minpoly: PolyElement  # monic, irreducible, in ALG

    @classmethod
    def from_poly(cls, m: PolyElement) -> "NumberField":
        names = [s.name for s in m.ring.symbols]
        if len(names) != 1:
            raise ValueError("minimal polynomial must be univariate")
        mm = m.set_ring(get_ring((names[0],)))
        coeffs = {k[0]: c for k, c in mm.terms()}
        a = ALG.gens[0]
        p = sum((c * a**k for k, c in coeffs.items()), ALG.zero)
        return cls(primitive_part(p))

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    @property
    def gen(self) -> PolyElement:
        return self.reduce(ALG.gens[0])

    def reduce(self, x) -> PolyElement:
        if not isinstance(x, PolyElement):
            return ALG(rat(x))
        return x.rem(self.minpoly)

    def inv(self, x: PolyElement) -> PolyElement:
        x = self.reduce(x)
        if not x:
            raise ZeroDivisionError("inverse of zero in number field")
        s, _, g = x.gcdex(self.minpoly)
        return self.reduce(s.quo_ground(g.LC))

    def div(self, x, y) -> PolyElement:
        return self.reduce(self.reduce(x) * self.inv(y))

    def is_zero(self, x) -> bool:
        return not self.reduce(x)

    def is_rational(self, x) -> bool:
        x = self.reduce(x)
        return x.degree() <= 0

    # ---- univariate polynomials over the field, as lists (ascending)

    def poly_trim(self, p: Sequence) -> list:
        p = [self.reduce(c) for c in p]
        while p and not p[-1]:
            p.pop()
        return p

    def poly_rem(self, p: Sequence, q: Sequence) -> list:
        p = self.poly_trim(p)
        q = self.poly_trim(q)
        if not q:
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = self.inv(q[-1])
        while len(p) >= len(q):
            c = self.reduce(p[-1] * lead_inv)
            shift = len(p) - len(q)
            for i, qc in enumerate(q):
                p[shift + i] = self.reduce(p[shift + i] - c * qc)
            p = self.poly_trim(p)
        return p

    def poly_gcd(self, p: Sequence, q: Sequence) -> list:
        p = self.poly_trim(p)
        q = self.poly_trim(q)
        while q:
            p, q = q, self.poly_rem(p, q)
        if not p:
            return []
        lead_inv = self.inv(p[-1])
        return [self.reduce(c * lead_inv) for c in p]


RATIONALS = NumberField(ALG.gens[0])  # Q[a]/(a): every element is a rational
