"""Singular loci of ruled cubic and quartic surfaces given by their equations.

Plane-section singularities are classified by multiplicity, tangent cone and
one blow-up, using exactly the six simple types A2, A3, A4, D4, D5, E6 (the
labels follow the source classification, where "A2" is an ordinary node).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from sympy import QQ
from sympy.polys.rings import PolyElement

from .numfield import ALG, RATIONALS, NumberField
from .plucker_geom import GeometryError, lines_meet, points_of_line, line_through
from .scalar_poly import (HOM, PolyError, get_ring, homog_degree, nullspace, rank,
                          rat, resultant, substitute, total_degree)

XYZ = get_ring(("X", "Y", "Z"))
XY2 = get_ring(("x", "y"))
XYZ3 = get_ring(("x", "y", "z"))
U = get_ring(("u",))

t1, t2, t3, t4 = HOM.gens
TC_X = t1 * t3 - t2**2
TC_Y = t2 * t3 - t1 * t4
TC_Z = t2 * t4 - t3**2
TC_T = TC_Y**2 - 4 * TC_X * TC_Z
TC_T_XYZ = XYZ.gens[1] ** 2 - 4 * XYZ.gens[0] * XYZ.gens[2]


class SingularityError(ValueError):
    pass


class _Resample(Exception):
    """Elimination degenerated in the current coordinates; try others."""


DELTA = {"A2": 1, "A3": 1, "A4": 2, "D4": 3, "D5": 3, "E6": 3}


# ------------------------------------------------------------ basic helpers

def _complete_basis(p: Sequence, q: Sequence) -> list[tuple]:
    basis = [tuple(rat(c) for c in p), tuple(rat(c) for c in q)]
    for i in range(4):
        e = tuple(QQ(int(i == j)) for j in range(4))
        if rank(basis + [e], 4) == len(basis) + 1:
            basis.append(e)
        if len(basis) == 4:
            break
    return basis


def _line_points(L) -> tuple[tuple, tuple]:
    if isinstance(L, dict):
        L = L.get("span", L)
    if len(L) == 2:
        p, q = L
        line_through(p, q)  # validates
        return tuple(rat(c) for c in p), tuple(rat(c) for c in q)
    if len(L) == 6:
        return points_of_line(L)
    raise GeometryError("a line is a bivector or a pair of points")


def multiplicity_along_line(F: PolyElement, L) -> int:
    """Order of vanishing of F along the line L (given as a bivector or two points)."""
    if not F:
        raise PolyError("zero form")
    p, q = _line_points(L)
    b = _complete_basis(p, q)
    coords = [sum((b[k][i] * HOM.gens[k] for k in range(4)), HOM.zero) for i in range(4)]
    G = substitute(F, coords)
    return min(m[2] + m[3] for m in G.monoms())


def jet_multiplicity(F: PolyElement, param: Sequence[PolyElement], max_order: int = 5) -> int:
    """Largest k such that all partial derivatives of F of order < k vanish on the curve."""
    level = [F]
    k = 0
    while k < max_order:
        if any(substitute(P, list(param)) for P in level):
            return k
        k += 1
        nxt = []
        for P in level:
            for g in HOM.gens:
                d = P.diff(g)
                if d and d not in nxt:
                    nxt.append(d)
        if not nxt:
            return k + max_order
        level = nxt
    return k


# ------------------------------------------------------------- patterns

def _form_coeff_rows(target: PolyElement, pieces: Sequence[PolyElement]):
    mons = sorted({m for P in list(pieces) + [target] for m in P.monoms()})
    idx = {m: i for i, m in enumerate(mons)}
    n = len(pieces)
    rows = [[QQ(0)] * (n + 1) for _ in mons]
    for j, P in enumerate(pieces):
        for m, c in P.terms():
            rows[idx[m]][j] += c
    for m, c in target.terms():
        rows[idx[m]][n] -= c
    return rows


def _solve_combination(target: PolyElement, pieces: Sequence[PolyElement]):
    """Coefficients x with sum x_j pieces_j = target, or None; raises if not unique."""
    ker = nullspace(_form_coeff_rows(target, pieces), len(pieces) + 1)
    sols = [v for v in ker if v[-1] != 0]
    if not sols:
        return None
    if len(ker) > 1:
        raise PolyError("representation is not unique")
    v = sols[0]
    return [c / v[-1] for c in v[:-1]]


@dataclass(frozen=True)
class ConicLinePattern:
    A1: PolyElement
    A2: PolyElement
    scale: object  # coefficient of (t2 t3 - t4^2)^2 in F


def conic_line_pattern(F: PolyElement) -> ConicLinePattern | None:
    """Write F = k (t1^2 A2 + t1 q A1 + q^2) with q = t2 t3 - t4^2, A_i forms in t3, t4."""
    q = t2 * t3 - t4**2
    A2b = [t3**2, t3 * t4, t4**2]
    A1b = [t3, t4]
    pieces = [t1**2 * m for m in A2b] + [t1 * q * m for m in A1b] + [q**2]
    sol = _solve_combination(F, pieces)
    if sol is None or sol[-1] == 0:
        return None
    k = sol[-1]
    A2 = sum((c / k * m for c, m in zip(sol[:3], A2b)), HOM.zero)
    A1 = sum((c / k * m for c, m in zip(sol[3:5], A1b)), HOM.zero)
    return ConicLinePattern(A1, A2, k)


def tc_representation(F: PolyElement) -> PolyElement | None:
    """The ternary quadratic H with F = H(X, Y, Z), or None."""
    if not F:
        return None
    mons = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    base = (TC_X, TC_Y, TC_Z)
    pieces = [base[0] ** a * base[1] ** b * base[2] ** c for a, b, c in mons]
    sol = _solve_combination(F, pieces)
    if sol is None:
        return None
    X, Y, Z = XYZ.gens
    return sum((c * X**a * Y**b * Z**e for c, (a, b, e) in zip(sol, mons)), XYZ.zero)


def expand_tc(H: PolyElement) -> PolyElement:
    return substitute(H, [TC_X, TC_Y, TC_Z])


def _quadric_matrix(H: PolyElement) -> list[list]:
    M = [[QQ(0)] * 3 for _ in range(3)]
    for m, c in H.terms():
        idx = [i for i in range(3) for _ in range(m[i])]
        if len(idx) != 2:
            raise PolyError("H must be a ternary quadratic form")
        i, j = idx
        if i == j:
            M[i][i] += c
        else:
            M[i][j] += c / 2
            M[j][i] += c / 2
    return M


def root_partition(p: PolyElement, D: int) -> tuple[int, ...]:
    """Multiplicity partition of the roots of p as a binary form of degree D."""
    if not p:
        raise PolyError("zero binary form")
    out = []
    if D > p.degree():
        out.append(D - p.degree())
    if p.degree() > 0:
        for f, mult in p.factor_list()[1]:
            out.extend([mult] * f.degree())
    return tuple(sorted(out, reverse=True))


TC_CASES = {(1, 1, 1, 1): "generic", (2, 1, 1): "case-i", (3, 1): "case-ii",
            (2, 2): "case-iii", (4,): "case-iv"}


def classify_tc_case(H: PolyElement) -> str:
    """Intersection type of the conic H = 0 with T = Y^2 - 4XZ = 0."""
    if H.ring is not XYZ:
        H = H.set_ring(XYZ)
    if rank(_quadric_matrix(H), 3) < 3:
        raise SingularityError("reducible H: not a ruled-quartic datum")
    if rank([_flat(H), _flat(TC_T_XYZ)], 6) < 2:
        return "tangent-developable"
    x = U.gens[0]
    q = substitute(H, [x**2, 2 * x, U.one])
    return TC_CASES[root_partition(q, 4)]


def _flat(H):
    M = _quadric_matrix(H)
    return [M[0][0], M[0][1], M[0][2], M[1][1], M[1][2], M[2][2]]


# ----------------------------------------- bivariate polynomials over Q(a)

class _BiPoly:
    """Polynomial in two variables with coefficients in a number field."""

    def __init__(self, K: NumberField, terms: dict):
        self.K = K
        self.terms = {m: c for m, c in ((m, K.reduce(c)) for m, c in terms.items()) if c}

    def order(self) -> int:
        if not self.terms:
            raise SingularityError("curve vanishes identically near the point")
        return min(i + j for i, j in self.terms)

    def homogeneous_part(self, k: int) -> list:
        """Coefficients of X^(k-j) Y^j, j = 0..k."""
        return [self.terms.get((k - j, j), ALG.zero) for j in range(k + 1)]

    def linear_change(self, a, b, c, d) -> "_BiPoly":
        """Substitute X -> a X + b Y, Y -> c X + d Y (rational a..d)."""
        out: dict = {}
        for (i, j), coef in self.terms.items():
            for k in range(i + 1):
                for l in range(j + 1):
                    w = comb(i, k) * comb(j, l) * a**k * b ** (i - k) * c**l * d ** (j - l)
                    if w:
                        key = (k + l, i - k + j - l)
                        out[key] = out.get(key, ALG.zero) + coef * QQ(w)
        return _BiPoly(self.K, out)

    def blow_up(self, u0, m: int) -> "_BiPoly":
        """Strict transform of X = (x1 + u0) Y, divided by Y^m."""
        out: dict = {}
        for (i, j), coef in self.terms.items():
            for k in range(i + 1):
                w = self.K.reduce(coef * comb(i, k) * (u0 ** (i - k) if i - k else ALG.one))
                key = (k, i + j - m)
                if key[1] < 0:
                    raise SingularityError("blow-up exponent negative")
                out[key] = out.get(key, ALG.zero) + w
        return _BiPoly(self.K, out)


def _binary_with_nonzero_lead(P: _BiPoly, k: int) -> _BiPoly:
    """Change coordinates Y -> Y + lam X so the X^k coefficient of the tangent cone is nonzero."""
    for lam in range(0, k + 2):
        Q = P.linear_change(QQ(1), QQ(0), QQ(lam), QQ(1))
        if Q.homogeneous_part(k)[0]:
            return Q
    raise SingularityError("could not move the tangent cone into general position")


def _repeated_root(K: NumberField, p: list):
    """For p (ascending over K) with gcd(p, p') = (u - r)^e, return (e, r)."""
    dp = [K.reduce(c * i) for i, c in enumerate(p)][1:]
    g = K.poly_gcd(p, dp)
    e = len(g) - 1
    if e <= 0:
        return 0, None
    # monic g = (u - r)^e has u^(e-1) coefficient -e r
    r = K.reduce(-g[e - 1] * QQ(1, e))
    check = [ALG.one]
    for _ in range(e):
        check = [K.reduce(x) for x in _mul_lin(check, r)]
    if K.poly_trim(check) != K.poly_trim(g):
        raise SingularityError("tangent cone has several multiple directions")
    return e, r


def _mul_lin(p, r):
    out = [ALG.zero] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] += c
        out[i] -= c * r
    return out


def _cone_poly(P: _BiPoly, k: int) -> list:
    """Tangent cone P_k(u, 1) ascending in u = X/Y."""
    hp = P.homogeneous_part(k)  # coefficient of X^(k-j) Y^j
    return [hp[k - i] for i in range(k + 1)]


def _quadratic_has_distinct_roots(K: NumberField, cone: list) -> bool:
    c, b, a = (cone + [ALG.zero] * 3)[:3]
    return not K.is_zero(b * b - 4 * a * c)


def classify_local(P: _BiPoly) -> str:
    """Label of the singularity of P at the origin from the simple-singularity list."""
    K = P.K
    m = P.order()
    if m < 2:
        raise SingularityError("point is not singular")
    if m > 3:
        raise SingularityError(f"multiplicity {m} singularity is outside the admissible list")
    P = _binary_with_nonzero_lead(P, m)
    cone = _cone_poly(P, m)
    e, r = _repeated_root(K, cone)
    if e == 0:
        return "A2" if m == 2 else "D4"
    S = P.blow_up(r, m)
    mult = S.order()
    if m == 2:
        if mult == 1:
            return "A3"
        if mult == 2 and _quadratic_has_distinct_roots(K, _cone_poly(S, 2)):
            return "A4"
        raise SingularityError("double point beyond A4 is outside the admissible list")
    if mult != 1:
        raise SingularityError("triple point outside the admissible list (E7 or worse)")
    return "D5" if e == 1 else "E6"


# ------------------------------------------------------- plane sections

@dataclass(frozen=True)
class SingularPoint:
    label: str
    delta: int
    orbit_degree: int
    minpoly: str


@dataclass(frozen=True)
class SectionReport:
    degree: int
    genus: int
    points: tuple[SingularPoint, ...]


def plane_basis(plane: Sequence) -> list[tuple]:
    c = [rat(x) for x in plane]
    if not any(c):
        raise GeometryError("zero plane")
    return [tuple(v) for v in nullspace([c], 4)]


def restrict_to_plane(F: PolyElement, plane: Sequence) -> PolyElement:
    B = plane_basis(plane)
    g = XYZ3.gens
    coords = [sum((B[k][i] * g[k] for k in range(3)), XYZ3.zero) for i in range(4)]
    return substitute(F, coords)


def _is_irreducible(G: PolyElement) -> bool:
    _, factors = G.factor_list()
    return len(factors) == 1 and factors[0][1] == 1


def _random_matrix(rng: random.Random) -> list[list[int]]:
    while True:
        M = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if rank(M, 3) == 3:
            return M


def _apply_matrix(G: PolyElement, M) -> PolyElement:
    g = XYZ3.gens
    vals = [sum((QQ(M[i][k]) * g[k] for k in range(3)), XYZ3.zero) for i in range(3)]
    return substitute(G, vals)


def _singular_at_infinity(G: PolyElement) -> bool:
    """True if the projective curve G = 0 has a singular point on z = 0."""
    x, y, z = XYZ3.gens
    parts = [G] + [G.diff(v) for v in (x, y, z)]
    on_line = [P.compose(z, 0) for P in parts]
    # the point (1:0:0)
    if not any(P.compose(y, 0) for P in on_line):
        return True
    g = XYZ3.zero
    for P in on_line:
        g = g.gcd(P.compose(y, 1))
    return not g or total_degree(g) > 0


def _to_xy(G: PolyElement) -> PolyElement:
    """Dehomogenize at z = 1 into QQ[x, y]."""
    out = XY2.zero
    for (a, b, _), c in G.terms():
        out += c * XY2.gens[0] ** a * XY2.gens[1] ** b
    return out


def _univariate_x(R: PolyElement) -> PolyElement:
    out = U.zero
    for (a, b), c in R.terms():
        if b:
            raise PolyError("expected a polynomial in x only")
        out += c * U.gens[0] ** a
    return out


def _specialize_y(K: NumberField, g: PolyElement, alpha) -> list:
    deg_y = max((b for _, b in g.monoms()), default=0)
    coeffs = [ALG.zero] * (deg_y + 1)
    for (a, b), c in g.terms():
        coeffs[b] = coeffs[b] + c * (alpha**a if a else ALG.one)
    return K.poly_trim(coeffs)


def _local_poly(K: NumberField, g: PolyElement, x0, y0) -> _BiPoly:
    terms: dict = {}
    for (a, b), c in g.terms():
        for i in range(a + 1):
            for j in range(b + 1):
                w = c * comb(a, i) * comb(b, j)
                val = K.reduce(w * (x0 ** (a - i) if a - i else ALG.one)
                               * (y0 ** (b - j) if b - j else ALG.one))
                terms[(i, j)] = terms.get((i, j), ALG.zero) + val
    return _BiPoly(K, terms)


def affine_singular_locus(g: PolyElement) -> list[tuple[NumberField, PolyElement, list]]:
    """Singular points of the affine curve g(x, y) = 0 grouped by x-coordinate.

    Each entry is (K, alpha, h): K = Q(alpha) with alpha a root of an
    irreducible factor of the x-eliminant, and h (ascending over K) the gcd
    in y of g, g_x, g_y at x = alpha.  Raises _Resample when elimination
    degenerates.
    """
    x, y = XY2.gens
    gx, gy = g.diff(x), g.diff(y)
    if not gy:
        raise _Resample()
    r1 = resultant(g, gy, var=1)
    r2 = resultant(gx, gy, var=1) if gx else XY2.zero
    if not r2:
        r2 = resultant(g, gx, var=1) if gx else XY2.zero
    if not r1:
        raise _Resample()
    base = _univariate_x(r1)
    cand = base.gcd(_univariate_x(r2)) if r2 else base
    out = []
    if cand.degree() <= 0:
        return out
    for m, _ in cand.factor_list()[1]:
        K = NumberField.from_poly(m)
        alpha = K.gen
        polys = [_specialize_y(K, p, alpha) for p in (g, gx, gy)]
        h = polys[0]
        for p in polys[1:]:
            h = K.poly_gcd(h, p) if p else h
        h = K.poly_trim(h)
        if len(h) > 1:
            out.append((K, alpha, h))
    return out


def single_root(K: NumberField, h: list):
    """y0 when h = (y - y0)^e over K, else None."""
    e = len(h) - 1
    lead_inv = K.inv(h[-1])
    h = [K.reduce(c * lead_inv) for c in h]
    y0 = K.reduce(-h[e - 1] * QQ(1, e))
    check = [ALG.one]
    for _ in range(e):
        check = _mul_lin(check, y0)
    return y0 if K.poly_trim(check) == h else None


def _section_points(g: PolyElement) -> list[SingularPoint]:
    out = []
    for K, alpha, h in affine_singular_locus(g):
        y0 = single_root(K, h)
        if y0 is None:
            raise _Resample()
        label = classify_local(_local_poly(K, g, alpha, y0))
        out.append(SingularPoint(label, DELTA[label], K.degree, str(K.minpoly.as_expr())))
    return out


def plane_section(F: PolyElement, plane: Sequence, seed: int = 0) -> SectionReport:
    """Singular points and geometric genus of the plane section F = 0, c . t = 0."""
    d = homog_degree(F)
    G = restrict_to_plane(F, plane)
    if not G:
        raise SingularityError("the plane lies on the surface")
    if not _is_irreducible(G):
        raise SingularityError("plane section is reducible")
    rng = random.Random(seed)
    for _ in range(12):
        H = _apply_matrix(G, _random_matrix(rng))
        if _singular_at_infinity(H):
            continue
        try:
            pts = _section_points(_to_xy(H))
        except _Resample:
            continue
        genus = (d - 1) * (d - 2) // 2 - sum(p.delta * p.orbit_degree for p in pts)
        if genus < 0:
            raise SingularityError("negative genus: inconsistent singularity data")
        return SectionReport(d, genus, tuple(sorted(pts, key=lambda p: (p.label, p.minpoly))))
    raise SingularityError("no coordinate system in general position found")


def section_point_label(F: PolyElement, plane: Sequence, point: Sequence) -> str:
    """Singularity label of the section F = 0, c . t = 0 at a rational point of the plane."""
    p = [rat(c) for c in point]
    if sum(rat(c) * x for c, x in zip(plane, p)):
        raise SingularityError("point is not on the plane")
    basis = [p]
    for v in plane_basis(plane):
        if rank(basis + [list(v)], 4) > len(basis):
            basis.append(list(v))
        if len(basis) == 3:
            break
    g = XYZ3.gens
    G = substitute(F, [sum((basis[k][i] * g[k] for k in range(3)), XYZ3.zero) for i in range(4)])
    terms: dict = {}
    for (_, b, c), v in G.terms():
        terms[(b, c)] = terms.get((b, c), QQ(0)) + v
    return classify_local(_BiPoly(RATIONALS, terms))


def plane_section_genus(F: PolyElement, plane: Sequence) -> int:
    return plane_section(F, plane).genus


# ---------------------------------------------------- Cayley symbols

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class CayleySymbol:
    components: tuple[tuple[int, int], ...]
    tags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(tuple(c) for c in self.components)))
        object.__setattr__(self, "tags", frozenset(self.tags))

    def ascii(self) -> str:
        s = ",".join(f"{d}^{m}" for d, m in self.components)
        return s + (" int" if "int" in self.tags else "")

    def __str__(self) -> str:
        s = ",".join(f"{d}{str(m).translate(_SUP)}" for d, m in self.components)
        return s + (" int" if "int" in self.tags else "")

    @classmethod
    def parse(cls, text: str) -> "CayleySymbol":
        text = text.strip()
        tags = set()
        if text.endswith("int"):
            tags.add("int")
            text = text[:-3].rstrip(" ,")
        comps = []
        for part in text.split(","):
            d, m = part.strip().split("^")
            comps.append((int(d), int(m)))
        return cls(tuple(comps), frozenset(tags))


@dataclass(frozen=True)
class WitnessResult:
    kind: str
    degree: int
    multiplicity: int


def witness_multiplicity(F: PolyElement, w: dict) -> WitnessResult:
    kind = w.get("kind")
    if kind == "line":
        pts = w["span"]
        return WitnessResult("line", 1, multiplicity_along_line(F, pts))
    if kind in ("conic", "curve"):
        param = [_as_u(p) for p in w["param"]]
        if len(param) != 4:
            raise PolyError("curve witness needs four coordinates")
        deg = w["degree"] if "degree" in w else curve_image_degree(param)
        return WitnessResult(kind, int(deg), jet_multiplicity(F, param))
    if kind == "tc":
        H = tc_representation(F)
        if H is not None:
            return WitnessResult("tc", 3, 2)
        u = U.gens[0]
        return WitnessResult("tc", 3, jet_multiplicity(F, [U.one, u, u**2, u**3]))
    raise PolyError(f"unknown witness kind {kind!r}")


def curve_image_degree(param: Sequence[PolyElement]) -> int:
    """Degree of the image curve of u -> param(u): parameter degree over map degree."""
    param = [_as_u(p) for p in param]
    g = param[0]
    for p in param[1:]:
        g = g.gcd(p)
    if not g:
        raise PolyError("zero curve parametrization")
    param = [p.quo(g) for p in param]
    D = max(p.degree() for p in param if p)
    if D <= 0:
        raise PolyError("constant curve parametrization")
    top = [p.coeff(U.gens[0] ** D) if p else QQ(0) for p in param]
    best = None
    for u0 in (3, -5, 7, 11, -13):
        x0 = [p(u0) for p in param]
        minors = [param[i] * x0[j] - param[j] * x0[i] for i in range(4) for j in range(i + 1, 4)]
        h = U.zero
        for m in minors:
            h = h.gcd(m)
        count = h.degree() if h else D
        if rank([top, x0], 4) < 2:
            count += 1
        best = count if best is None else min(best, count)
    if D % best:
        raise PolyError("inconsistent map degree for the curve parametrization")
    return D // best


def _as_u(p) -> PolyElement:
    from .scalar_poly import parse_poly, poly_from_json
    if isinstance(p, PolyElement):
        return p if p.ring is U else p.set_ring(U)
    if isinstance(p, str):
        return parse_poly(p, U)
    if isinstance(p, dict):
        q = poly_from_json(p)
        return q.set_ring(U) if [s.name for s in q.ring.symbols] == ["u"] else _rename_to_u(q)
    return U(rat(p))


def _rename_to_u(q: PolyElement) -> PolyElement:
    if q.ring.ngens != 1:
        raise PolyError("curve parametrization must be univariate")
    return sum((c * U.gens[0] ** m[0] for m, c in q.terms()), U.zero)


def singular_symbol(F: PolyElement, witnesses: Sequence[dict]) -> CayleySymbol:
    """Certify the singular locus given by witnesses and return its Cayley symbol."""
    d = homog_degree(F)
    results = [witness_multiplicity(F, w) for w in witnesses]
    for w, r in zip(witnesses, results):
        if r.multiplicity < 2:
            raise SingularityError(f"witness {w.get('kind')} is not singular (multiplicity {r.multiplicity})")
    bound = (d - 1) * (d - 2) // 2
    if sum(r.degree * r.multiplicity * (r.multiplicity - 1) // 2 for r in results) > bound:
        raise SingularityError("witness data exceed the plane-section delta bound")
    tags = set()
    lines = [w for w, r in zip(witnesses, results) if r.kind == "line"]
    if len(results) == 2 and len(lines) == 2 and all(r.multiplicity == 2 for r in results):
        L1 = line_through(*lines[0]["span"])
        L2 = line_through(*lines[1]["span"])
        if lines_meet(L1, L2):
            tags.add("int")
    return CayleySymbol(tuple((r.degree, r.multiplicity) for r in results), frozenset(tags))
