"""Points, lines and planes of P^3 and linear subspaces of P^5 relative to Gr(2,4)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from sympy import QQ

from .exterior import contract, is_decomposable, plucker_form, wedge2
from .scalar_poly import UNI, nullspace, rank, rat, rowspace_basis, uni

E = tuple(tuple(QQ(int(i == j)) for j in range(4)) for i in range(4))
E6 = tuple(tuple(QQ(int(i == j)) for j in range(6)) for i in range(6))


class GeometryError(ValueError):
    pass


def normalize(v: Sequence) -> tuple:
    """Projective representative whose first nonzero entry is 1."""
    v = tuple(rat(c) for c in v)
    for c in v:
        if c:
            return tuple(x / c for x in v)
    raise GeometryError("zero vector has no projective class")


def proportional(u: Sequence, v: Sequence) -> bool:
    return rank([list(u), list(v)]) < 2


def line_through(p: Sequence, q: Sequence) -> tuple:
    p = tuple(rat(c) for c in p)
    q = tuple(rat(c) for c in q)
    if not any(p) or not any(q):
        raise GeometryError("points must be nonzero")
    w = wedge2(p, q)
    if not any(w):
        raise GeometryError("points are proportional")
    return w


def _check_line(L: Sequence):
    if not any(L):
        raise GeometryError("zero bivector is not a line")
    if not is_decomposable(L):
        raise GeometryError("bivector is not decomposable")


def points_of_line(L: Sequence) -> tuple[tuple, tuple]:
    """Two rational points spanning the line L."""
    _check_line(L)
    cands = [contract(L, e) for e in E]
    basis = rowspace_basis([list(c) for c in cands], 4)
    if len(basis) != 2:
        raise GeometryError("bivector does not span a line")
    return normalize(basis[0]), normalize(basis[1])


def line_equations(L: Sequence) -> list[tuple]:
    """Two covectors cutting out L."""
    p, q = points_of_line(L)
    return [tuple(c) for c in nullspace([list(p), list(q)], 4)]


def lines_meet(L1: Sequence, L2: Sequence) -> bool:
    _check_line(L1)
    _check_line(L2)
    return plucker_form(L1, L2) == 0


@dataclass(frozen=True)
class Meet:
    kind: str  # "skew" | "point" | "equal"
    point: tuple | None = None


def meet_data(L1: Sequence, L2: Sequence) -> Meet:
    if not lines_meet(L1, L2):
        return Meet("skew")
    if proportional(L1, L2):
        return Meet("equal")
    p1, q1 = points_of_line(L1)
    p2, q2 = points_of_line(L2)
    cols = [p1, q1, tuple(-c for c in p2), tuple(-c for c in q2)]
    rows = [[cols[k][i] for k in range(4)] for i in range(4)]
    ker = nullspace(rows, 4)
    if len(ker) != 1:  # pragma: no cover - excluded by the checks above
        raise GeometryError("unexpected intersection dimension")
    a, b = ker[0][0], ker[0][1]
    return Meet("point", normalize([a * x + b * y for x, y in zip(p1, q1)]))


def in_tangent_space(w0: Sequence, z: Sequence) -> bool:
    _check_line(w0)
    return plucker_form(w0, z) == 0


@dataclass(frozen=True)
class ProjSubspace:
    basis: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def contains(self, z: Sequence) -> bool:
        return rank([list(b) for b in self.basis] + [list(z)], 6) == len(self.basis)


def span_of(points: Sequence[Sequence]) -> ProjSubspace:
    rows = [[rat(c) for c in p] for p in points]
    basis = rowspace_basis(rows, 6) if rows else []
    if not basis:
        raise GeometryError("span of zero vectors")
    return ProjSubspace(tuple(basis))


def orthogonal_complement(P: ProjSubspace) -> list[tuple]:
    """Bivectors w0 with plucker_form(w0, z) = 0 for all z in P."""
    rows = [[plucker_form(b, e) for e in E6] for b in P.basis]
    return nullspace(rows, 6)


@dataclass(frozen=True)
class TangentSpaces:
    lines: tuple[tuple, ...] = ()
    infinite: bool = False
    conjugate_minpoly: object = None  # UniPoly when two conjugate solutions exist
    complement: tuple[tuple, ...] = field(default_factory=tuple)

    @property
    def count(self):
        if self.infinite:
            return "infinite"
        if self.conjugate_minpoly is not None:
            return 2
        return len(self.lines)


def _is_rational_square(q) -> tuple[bool, object]:
    q = rat(q)
    if q < 0:
        return False, None
    from gmpy2 import is_square, isqrt
    n, d = int(QQ.numer(q)), int(QQ.denom(q))
    if is_square(n) and is_square(d):
        return True, QQ(int(isqrt(n)), int(isqrt(d)))
    return False, None


def tangent_spaces_containing(P: ProjSubspace) -> TangentSpaces:
    """Lines w0 of Gr whose tangent hyperplane contains P."""
    O = orthogonal_complement(P)
    k = len(O)
    if k == 0:
        return TangentSpaces(complement=())
    if k == 1:
        u = O[0]
        if plucker_form(u, u) == 0:
            return TangentSpaces(lines=(normalize(u),), complement=tuple(O))
        return TangentSpaces(complement=tuple(O))
    if k == 2:
        u, v = O
        a = plucker_form(u, u)
        b = plucker_form(u, v)
        c = plucker_form(v, v)
        # a x^2 + 2 b x y + c y^2 = 0 on the pencil x u + y v
        if a == 0 and b == 0 and c == 0:
            return TangentSpaces(infinite=True, complement=tuple(O))
        sols = []
        if a == 0:
            sols.append((QQ(1), QQ(0)))  # x u with y = 0
            if b != 0:
                sols.append((-c, 2 * b))
        else:
            disc = b * b - a * c
            ok, r = _is_rational_square(disc)
            if disc == 0:
                sols.append((-b, a))
            elif ok:
                sols.append((-b + r, a))
                sols.append((-b - r, a))
            else:
                minpoly = uni([c, 2 * b, a], UNI)  # in the ratio x/y
                return TangentSpaces(conjugate_minpoly=minpoly, complement=tuple(O))
        lines = []
        for x, y in sols:
            w = normalize([x * p + y * q for p, q in zip(u, v)])
            if w not in lines:
                lines.append(w)
        return TangentSpaces(lines=tuple(sorted(lines, reverse=True)), complement=tuple(O))
    return TangentSpaces(infinite=True, complement=tuple(O))


def restricted_gram(P: ProjSubspace) -> list[list]:
    return [[plucker_form(x, y) for y in P.basis] for x in P.basis]


def classify_3space(P: ProjSubspace) -> str:
    if P.dim != 3:
        raise GeometryError(f"expected projective dimension 3, got {P.dim}")
    r = rank(restricted_gram(P), 4)
    if r == 4:
        return "nondegenerate-quadric"
    if r == 3:
        return "cone"
    return "two-planes"


def coordinate_line(i: int, j: int) -> tuple:
    """The line spanned by e_i and e_j (1-based indices)."""
    return line_through(E[i - 1], E[j - 1])
