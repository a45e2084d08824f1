"""From a parametrized line family (a(t), b(t)) to the data of its ruled surface."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from sympy import QQ
from sympy.polys.rings import PolyElement

from . import exterior as ext
from .numfield import NumberField
from .plucker_geom import ProjSubspace, TangentSpaces, span_of, tangent_spaces_containing
from .scalar_poly import (HOM, UNI, gcd_many, get_ring, nullspace, parse_poly,
                          poly_from_json, poly_to_json, primitive_part, rank, rat, resultant,
                          substitute, uni_coeffs)

INF = "inf"


class FamilyError(ValueError):
    pass


def as_uni(x) -> PolyElement:
    """Coerce ints, rationals, strings or polynomials in a variable t into UNI."""
    if isinstance(x, PolyElement):
        if x.ring is UNI:
            return x
        names = [s.name for s in x.ring.symbols]
        if set(names) - {"t"} and any(
                m[i] for m in x.monoms() for i, n in enumerate(names) if n != "t"):
            raise FamilyError(f"polynomial {x} is not univariate in t")
        return x.set_ring(UNI) if "t" in names else UNI(x.LC if x else 0)
    if isinstance(x, str):
        return parse_poly(x, UNI)
    if isinstance(x, dict):
        return as_uni(poly_from_json(x))
    return UNI(rat(x))


@dataclass(frozen=True)
class ParamLineFamily:
    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(as_uni(x) for x in self.a)
        b = tuple(as_uni(x) for x in self.b)
        if len(a) != 4 or len(b) != 4:
            raise FamilyError("a and b must be 4-vectors")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not any(ext.wedge2(a, b)):
            raise FamilyError("a and b are proportional: the wedge vanishes identically")

    def to_json(self) -> dict:
        return {"a": [poly_to_json(p) for p in self.a], "b": [poly_to_json(p) for p in self.b]}

    @classmethod
    def from_json(cls, obj) -> "ParamLineFamily":
        if not isinstance(obj, dict) or "a" not in obj or "b" not in obj:
            raise FamilyError("family JSON needs 'a' and 'b'")
        return cls(tuple(as_uni(p) for p in obj["a"]), tuple(as_uni(p) for p in obj["b"]))

    def at(self, t) -> tuple[tuple, tuple]:
        t = rat(t)
        return tuple(p(t) for p in self.a), tuple(p(t) for p in self.b)


@dataclass(frozen=True)
class PluckerCurve:
    w: tuple
    degree: int

    def at(self, t) -> tuple:
        if t == INF:
            return tuple(top_coeff(p, self.degree) for p in self.w)
        t = rat(t)
        return tuple(p(t) for p in self.w)

    def coefficient_vectors(self) -> list[tuple]:
        cols = [uni_coeffs(p) + [QQ(0)] * (self.degree + 1 - len(uni_coeffs(p))) for p in self.w]
        return [tuple(cols[k][j] for k in range(6)) for j in range(self.degree + 1)]


def top_coeff(p: PolyElement, d: int):
    c = uni_coeffs(p)
    return c[d] if len(c) > d else QQ(0)


def poly_degree(p: PolyElement) -> int:
    return p.degree() if p else -1


def remove_content(vec: Sequence[PolyElement]) -> tuple:
    """Divide a polynomial vector by the gcd of its entries (made monic)."""
    g = gcd_many(vec, UNI)
    if not g:
        raise FamilyError("zero polynomial vector")
    out = tuple(p.quo(g) for p in vec)
    # fix the overall scalar: first nonzero leading coefficient becomes 1
    for p in out:
        if p:
            lc = p.LC
            return tuple(q.quo_ground(lc) for q in out)
    return out


def curve_from_bivector(w: Sequence[PolyElement]) -> PluckerCurve:
    w = tuple(as_uni(p) for p in w)
    if not any(w):
        raise FamilyError("the wedge of a and b vanishes identically")
    w = remove_content(w)
    return PluckerCurve(w, max(poly_degree(p) for p in w))


def plucker_curve(fam: ParamLineFamily) -> PluckerCurve:
    return curve_from_bivector(ext.wedge2(fam.a, fam.b))


def curve_span(curve: PluckerCurve) -> ProjSubspace:
    """Linear span of the curve: the span of its coefficient vectors."""
    return span_of(curve.coefficient_vectors())


def curve_tangent_spaces(curve: PluckerCurve) -> TangentSpaces:
    return tangent_spaces_containing(curve_span(curve))


def check_plucker_identity(curve: PluckerCurve) -> bool:
    return not ext.plucker_form(curve.w, curve.w)


# ------------------------------------------------------------- line module

def _poly_vector_unknowns(k: int):
    """Vectors of polynomials of degree <= k as 4(k+1) unknown coefficients."""
    return 4 * (k + 1)


def _solve_vectors_on_curve(w: Sequence[PolyElement], k: int) -> list[tuple]:
    """Basis (as coefficient tuples) of {v : deg v <= k, w ^ v = 0}."""
    n = _poly_vector_unknowns(k)
    rows: dict[tuple[int, int], list] = {}
    for idx in range(n):
        comp, power = divmod(idx, k + 1)
        v = [UNI.zero] * 4
        v[comp] = UNI.gens[0] ** power
        cov = ext.bivector_wedge_vector(w, v)
        for m, p in enumerate(cov):
            for (e,), c in p.terms():
                rows.setdefault((m, e), [QQ(0)] * n)[idx] += c
    if not rows:
        return [tuple(QQ(int(i == j)) for j in range(n)) for i in range(n)]
    return nullspace(list(rows.values()), n)


def _vector_from_coeffs(c: Sequence, k: int) -> tuple:
    t = UNI.gens[0]
    return tuple(sum((c[comp * (k + 1) + p] * t**p for p in range(k + 1)), UNI.zero)
                 for comp in range(4))


def line_module_basis(w: Sequence[PolyElement]) -> tuple[tuple, tuple, tuple[int, int]]:
    """Minimal-degree basis (v1, v2) of the polynomial vectors lying on the lines w(t).

    The degrees (e1, e2) satisfy e1 + e2 = deg w for a coprime w; they are
    the splitting type of the ruling bundle up to the sign convention.
    """
    w = tuple(as_uni(p) for p in w)
    d = max(poly_degree(p) for p in w)
    v1 = None
    e1 = None
    for k in range(d + 1):
        sols = _solve_vectors_on_curve(w, k)
        if sols:
            v1 = _vector_from_coeffs(sols[0], k)
            e1 = k
            if len(sols) >= 2:
                for s in sols[1:]:
                    cand = _vector_from_coeffs(s, k)
                    if any(ext.wedge2(v1, cand)):
                        return v1, cand, (k, k)
            break
    if v1 is None:
        raise FamilyError("no polynomial point found on the lines")
    for k in range(e1 + 1, d + 1):
        sols = _solve_vectors_on_curve(w, k)
        if len(sols) > k - e1 + 1:
            for s in sols:
                cand = _vector_from_coeffs(s, k)
                if any(ext.wedge2(v1, cand)):
                    return v1, cand, (e1, k)
    raise FamilyError("could not complete the line module basis")


def reduced_family(fam: ParamLineFamily) -> ParamLineFamily:
    v1, v2, _ = line_module_basis(plucker_curve(fam).w)
    return ParamLineFamily(v1, v2)


def family_from_curve(w: Sequence[PolyElement]) -> ParamLineFamily:
    v1, v2, _ = line_module_basis(w)
    return ParamLineFamily(v1, v2)


def bundle_type(fam: ParamLineFamily) -> tuple[int, int]:
    curve = plucker_curve(fam)
    if curve.degree != 4:
        raise FamilyError(f"bundle type is defined for degree 4 curves, got degree {curve.degree}")
    _, _, (e1, _) = line_module_basis(curve.w)
    return (-1, -3) if e1 <= 1 else (-2, -2)


# ---------------------------------------------------------- implicitization

SU_SAMPLES = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2))


def monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    """Degree-d exponent vectors in descending grlex order."""
    out = [m for m in itertools.product(range(d + 1), repeat=nvars) if sum(m) == d]
    return sorted(out, reverse=True)


def form_from_coeffs(coeffs: Sequence, d: int, R=HOM) -> PolyElement:
    F = R.zero
    for c, m in zip(coeffs, monomials(R.ngens, d)):
        if c:
            F += R({m: rat(c)})
    return F


def normalize_form(F: PolyElement) -> PolyElement:
    """Integer coefficients with gcd 1 and positive leading (grlex) coefficient."""
    if not F:
        return F
    from math import gcd, lcm
    coeffs = [c for _, c in F.terms()]
    den = 1
    for c in coeffs:
        den = lcm(den, int(QQ.denom(c)))
    G = F * den
    num = 0
    for _, c in G.terms():
        num = gcd(num, int(QQ.numer(c)))
    G = G.quo_ground(QQ(num))
    lead = max(G.terms(), key=lambda mc: (sum(mc[0]), mc[0]))[1]
    return -G if lead < 0 else G


def forms_proportional(F: PolyElement, G: PolyElement) -> bool:
    if not F or not G:
        return not F and not G
    return normalize_form(F) == normalize_form(G.set_ring(F.ring))


class ImplicitizationError(FamilyError):
    def __init__(self, kernel_dim: int, msg: str):
        super().__init__(msg)
        self.kernel_dim = kernel_dim


def _implicit_kernel(fam: ParamLineFamily, d: int, shift) -> list[tuple]:
    mons = monomials(4, d)
    n = len(mons)
    nt = n // 2 + 4
    tvals = []
    k = 0
    while len(tvals) < nt:
        for sgn in ((1,) if k == 0 else (1, -1)):
            tvals.append(rat(sgn * k) + shift)
        k += 1
    rows = []
    for t in tvals[:nt]:
        a, b = fam.at(t)
        for s, u in SU_SAMPLES:
            pt = [s * x + u * y for x, y in zip(a, b)]
            if not any(pt):
                continue
            rows.append([_eval_monomial(pt, m) for m in mons])
    return nullspace(rows, n)


def _eval_monomial(pt, m):
    out = QQ(1)
    for x, e in zip(pt, m):
        if e:
            out *= x**e
    return out


def implicitize(fam: ParamLineFamily, d: int) -> PolyElement:
    """The unique degree-d form vanishing on the surface swept by the family."""
    if d not in (3, 4):
        raise FamilyError("implicitize supports d in {3, 4}")
    last = None
    for shift in (QQ(0), QQ(1, 3)):
        ker = _implicit_kernel(fam, d, shift)
        if len(ker) == 1:
            F = normalize_form(form_from_coeffs(ker[0], d))
            if verify_equation(fam, F):
                return F
        last = len(ker)
    if last == 0:
        raise ImplicitizationError(0, f"no form of degree {d} vanishes on the surface")
    raise ImplicitizationError(last, f"kernel of dimension {last}: degenerate family for degree {d}")


SUT = get_ring(("s", "u", "t"))


def verify_equation(fam: ParamLineFamily, F: PolyElement) -> bool:
    s, u, _ = SUT.gens
    pts = [s * x.set_ring(SUT) + u * y.set_ring(SUT) for x, y in zip(fam.a, fam.b)]
    return not substitute(F, pts)


# ----------------------------------------------------------------- duality

def dual_family(fam: ParamLineFamily) -> ParamLineFamily:
    """Family of the reciprocal surface, lines through a^b^a' and a^b^b' (in V*)."""
    t = UNI.gens[0]
    da = tuple(p.diff(t) for p in fam.a)
    db = tuple(p.diff(t) for p in fam.b)
    A = ext.wedge3(fam.a, fam.b, da)
    B = ext.wedge3(fam.a, fam.b, db)
    w = ext.wedge2(A, B)
    if not any(w):
        raise FamilyError("dual wedge vanishes identically (degenerate dual)")
    dual = family_from_curve(curve_from_bivector(w).w)
    if plucker_curve(dual).degree != plucker_curve(fam).degree:
        raise FamilyError("dual curve degree differs from the original")
    return dual


# ---------------------------------------------------- roots on P^1 helpers

def binary_roots(p: PolyElement, D: int) -> list[tuple[object, int]]:
    """Roots of p viewed as a binary form of degree D; ("alg", m) for nonlinear factors."""
    if not p:
        raise FamilyError("zero binary form")
    out = []
    deg = p.degree()
    if D > deg:
        out.append((INF, D - deg))
    if deg > 0:
        _, factors = p.factor_list()
        for f, mult in factors:
            if f.degree() == 1:
                c = uni_coeffs(f)
                out.append((-c[0] / c[1], mult))
            else:
                out.append((("alg", primitive_part(f)), mult))
    return out


def _minors(u: Sequence, v: Sequence) -> list:
    return [u[i] * v[j] - u[j] * v[i] for i, j in itertools.combinations(range(len(u)), 2)]


def parameters_on_line(curve: PluckerCurve, L: Sequence) -> list:
    """Parameter values t (including "inf") with w(t) proportional to the fixed bivector L."""
    L = tuple(UNI(rat(c)) for c in L)
    g = gcd_many(_minors(curve.w, L), UNI)
    out = []
    if g:
        for r, _ in binary_roots(g, g.degree()):
            out.append(r)
    top = curve.at(INF)
    if not any(_minors([UNI(c) for c in top], L)):
        out.append(INF)
    return out


@dataclass(frozen=True)
class CurveSingularity:
    kind: str  # "node" | "cusp"
    parameters: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind, "parameters": [_param_json(p) for p in self.parameters]}


def _param_json(p):
    if p == INF:
        return INF
    if isinstance(p, tuple) and p and p[0] == "alg":
        return {"minpoly": str(p[1].as_expr())}
    return f"{QQ.numer(p)}/{QQ.denom(p)}"


TS = get_ring(("t", "s"))


def _node_polys(curve: PluckerCurve) -> list[PolyElement]:
    t, s = TS.gens
    wt = [p.set_ring(TS) for p in curve.w]
    ws = [p.set_ring(TS).compose(t, s) for p in curve.w]
    out = []
    for i, j in itertools.combinations(range(6), 2):
        m = wt[i] * ws[j] - wt[j] * ws[i]
        if m:
            q, r = m.div([t - s])
            if r:
                raise FamilyError("cross minor not divisible by t - s")
            out.append(q[0])
    return out


def curve_singularities(fam_or_curve) -> list[CurveSingularity]:
    """Nodes (pairs of parameters with equal lines) and cusps (rank(w, w') = 1)."""
    curve = fam_or_curve if isinstance(fam_or_curve, PluckerCurve) else plucker_curve(fam_or_curve)
    d = curve.degree
    w = curve.w
    t = UNI.gens[0]
    out: list[CurveSingularity] = []

    # cusps at finite parameters
    dw = [p.diff(t) for p in w]
    g = gcd_many(_minors(w, dw), UNI)
    if g and g.degree() > 0:
        for r, _ in binary_roots(g, g.degree()):
            out.append(CurveSingularity("cusp", (r,)))
    # cusp at infinity: top two coefficient vectors proportional
    top = [top_coeff(p, d) for p in w]
    sub = [top_coeff(p, d - 1) for p in w]
    if not any(_minors(top, sub)):
        out.append(CurveSingularity("cusp", (INF,)))

    # nodes with one parameter at infinity
    topv = [UNI(c) for c in top]
    g = gcd_many(_minors(w, topv), UNI)
    if g and g.degree() > 0:
        for r, _ in binary_roots(g, g.degree()):
            out.append(CurveSingularity("node", (INF, r)))

    # nodes with both parameters finite
    N = [p for p in _node_polys(curve) if p]
    G = N[0]
    for p in N[1:]:
        G = G.gcd(p)
    if max(sum(m) for m in G.monoms()) > 0:
        raise FamilyError("parametrization is not birational onto its image")
    rng = random.Random(20240601)
    R = None
    for _ in range(8):
        P = sum((QQ(rng.randint(-9, 9)) * p for p in N), TS.zero)
        Q = sum((QQ(rng.randint(-9, 9)) * p for p in N), TS.zero)
        if not P or not Q:
            continue
        R = resultant(P, Q, var=1)
        if R:
            break
    if not R:
        raise FamilyError("could not separate the node system")
    Ru = _to_uni_t(R)
    seen = set()
    for r, _ in binary_roots(Ru, Ru.degree()):
        if r == INF:
            continue
        if isinstance(r, tuple):
            alg = _algebraic_nodes(N, r[1])
            if alg:
                key = ("alg", str(r[1].as_expr()))
                if key not in seen:
                    seen.add(key)
                    out.append(CurveSingularity("node", (r, alg)))
            continue
        s_polys = [_to_uni_s(p, r) for p in N]
        gs = gcd_many([p for p in s_polys if p] or [UNI.zero], UNI)
        if not gs or gs.degree() <= 0:
            continue
        for s0, _ in binary_roots(gs, gs.degree()):
            if s0 == r or isinstance(s0, tuple):
                continue
            key = tuple(sorted([r, s0]))
            if key not in seen:
                seen.add(key)
                out.append(CurveSingularity("node", key))
    return out


def _to_uni_t(R: PolyElement) -> PolyElement:
    out = UNI.zero
    for (et, es), c in R.terms():
        if es:
            raise FamilyError("resultant still depends on s")
        out += c * UNI.gens[0] ** et
    return out


def _to_uni_s(p: PolyElement, t0) -> PolyElement:
    out = UNI.zero
    for (et, es), c in p.terms():
        out += c * t0**et * UNI.gens[0] ** es
    return out


def _algebraic_nodes(N: list[PolyElement], m: PolyElement):
    """Check whether t = root of m carries a node partner s; returns the s-gcd degree."""
    K = NumberField.from_poly(m)
    alpha = K.gen
    polys = []
    for p in N:
        deg_s = max(es for (_, es) in p.monoms())
        coeffs = [K.reduce(0)] * (deg_s + 1)
        for (et, es), c in p.terms():
            coeffs[es] = K.reduce(coeffs[es] + c * alpha**et)
        polys.append(coeffs)
    g = polys[0]
    for p in polys[1:]:
        g = K.poly_gcd(g, p)
    g = K.poly_trim(g)
    if len(g) <= 1:
        return None
    # drop the factor s - alpha (cusp / diagonal contributions)
    while True:
        val = K.reduce(0)
        for c in reversed(g):
            val = K.reduce(val * alpha + c)
        if not K.is_zero(val):
            break
        # synthetic division by (s - alpha)
        q = [K.reduce(0)] * (len(g) - 1)
        acc = K.reduce(0)
        for i in range(len(g) - 1, 0, -1):
            acc = K.reduce(acc * alpha + g[i]) if i != len(g) - 1 else g[i]
            q[i - 1] = acc
        g = K.poly_trim(q)
        if len(g) <= 1:
            return None
    return len(g) - 1


# ------------------------------------------------- maps to directrix lines

def point_map_to_line(fam: ParamLineFamily, L: Sequence) -> tuple | None:
    """Polynomial point X(t) = l(t) meet L, content removed; None if lines are not all meeting L."""
    from .plucker_geom import points_of_line
    v1, v2, _ = line_module_basis(plucker_curve(fam).w)
    Lp = tuple(UNI(rat(c)) for c in L)
    c1 = ext.bivector_wedge_vector(Lp, v1)
    c2 = ext.bivector_wedge_vector(Lp, v2)
    for k in range(4):
        if c1[k] or c2[k]:
            X = tuple(c2[k] * x - c1[k] * y for x, y in zip(v1, v2))
            if not any(X):
                continue
            if any(ext.bivector_wedge_vector(Lp, X)):
                return None
            p, q = points_of_line(L)
            return _coords_on_line(remove_content(X), p, q)
    return None


def _coords_on_line(X: tuple, p: tuple, q: tuple) -> tuple:
    """Write X(t) = x0(t) p + x1(t) q."""
    for i, j in itertools.combinations(range(4), 2):
        det = p[i] * q[j] - p[j] * q[i]
        if det:
            x0 = (X[i] * q[j] - X[j] * q[i]).quo_ground(det)
            x1 = (p[i] * X[j] - p[j] * X[i]).quo_ground(det)
            return x0, x1
    raise FamilyError("degenerate line basis")


def map_degree_and_ramification(x0: PolyElement, x1: PolyElement) -> tuple[int, tuple[int, ...]]:
    """Degree of t -> (x0 : x1) on P^1 and its ramification indices (> 1), sorted descending."""
    g = gcd_many([x0, x1], UNI)
    x0, x1 = x0.quo(g), x1.quo(g)
    D = max(poly_degree(x0), poly_degree(x1))
    if D <= 0:
        return 0, ()
    t = UNI.gens[0]
    wr = x0 * x1.diff(t) - x1 * x0.diff(t)
    idx = []
    for r, mult in binary_roots(wr, 2 * D - 2):
        if isinstance(r, tuple):
            idx.extend([mult + 1] * r[1].degree())
        else:
            idx.append(mult + 1)
    return D, tuple(sorted(idx, reverse=True))


# ------------------------------------------------- lines through a point

SAB = get_ring(("s", "a", "b"))


@dataclass(frozen=True)
class LinesThroughPoint:
    """Lines of the surface through a smooth point p.

    ``count`` is the number of distinct lines over the algebraic closure, ``None``
    when every line of the tangent plane through p lies on the surface.
    ``rational`` lists second points q of the lines defined over Q.
    """
    count: int | None
    rational: tuple


def lines_through_point(F: PolyElement, p: Sequence) -> LinesThroughPoint:
    """All lines on F = 0 through the smooth point p, found exactly.

    A line through p lies in the tangent plane; writing it as p + s q with q in
    that plane, F(p + s q) vanishes identically in s exactly when every Taylor
    coefficient, a binary form in q, vanishes. The common roots are the gcd.
    """
    p = [rat(x) for x in p]
    if substitute(F, p) != 0:
        raise FamilyError("point is not on the surface")
    grad = [substitute(F.diff(g), p) for g in HOM.gens]
    if not any(grad):
        raise FamilyError("point is singular on the surface")
    # complete p to a basis p, v1, v2 of the tangent plane
    basis = nullspace([grad], 4)
    v1 = next(v for v in basis if rank([p, v], 4) == 2)
    v2 = next(v for v in basis if rank([p, v1, v], 4) == 3)
    s, a, b = SAB.gens
    pt = [p[i] + s * (a * v1[i] + b * v2[i]) for i in range(4)]
    G = substitute(F, pt)
    coeffs = {}
    for (k, i, j), c in G.terms():
        coeffs.setdefault(k, SAB.zero)
        coeffs[k] += c * a**i * b**j
    forms = [coeffs[k] for k in sorted(coeffs) if k >= 1]
    if not forms:
        return LinesThroughPoint(None, ())
    g = gcd_many(forms, SAB)
    D = max(i + j for (_, i, j) in g.monoms())
    m = D - g.degree(a)  # power of b dividing g: the direction (a : b) = (1 : 0)
    count, found = (1, [tuple(v1)]) if m else (0, [])
    ga = g.quo(b**m)
    ua = sum((c * UNI.gens[0] ** i for (_, i, _), c in ga.terms()), UNI.zero)
    if ua.degree() > 0:
        for f, _ in ua.factor_list()[1]:
            count += f.degree()
            if f.degree() == 1:
                r = -uni_coeffs(f)[0] / uni_coeffs(f)[1]
                found.append(tuple(r * x + y for x, y in zip(v1, v2)))
    return LinesThroughPoint(count, tuple(found))


def rational_surface_point(F: PolyElement, rng: random.Random, tries: int = 200) -> tuple:
    """A rational point on F = 0 from a random line meeting the surface in a rational point."""
    t = UNI.gens[0]
    for _ in range(tries):
        p0 = [rat(rng.randint(-9, 9)) for _ in range(4)]
        p1 = [rat(rng.randint(-9, 9)) for _ in range(4)]
        if rng.random() < 0.5:  # coordinate directions catch forms linear in one variable
            p1 = [rat(int(i == rng.randrange(4))) for i in range(4)]
        f = substitute(F, [x + t * y for x, y in zip(p0, p1)])
        if not f:
            continue
        for fac, _ in f.factor_list()[1]:
            if fac.degree() == 1:
                c = uni_coeffs(fac)
                r = -c[0] / c[1]
                pt = tuple(x + r * y for x, y in zip(p0, p1))
                if any(pt):
                    return pt
    raise FamilyError("no rational point found on the surface")
