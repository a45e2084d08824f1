"""Normal forms and expected classification data for ruled cubic and quartic surfaces.

Every entry is built from exact rational data. Entries with a parametrized
family carry the pair (a(t), b(t)) of polynomial vectors spanning the
ruling; entries given only by an equation (Steiner's surface, two of the
real Rohn models) carry the quartic form. ``verify_entry`` recomputes all
classification data from scratch and compares it with the stored
expectations, ``duality_check`` does the same for the reciprocal surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from sympy import QQ
from sympy.polys.rings import PolyElement

from . import exterior as ext
from .plucker_geom import (E, ProjSubspace, coordinate_line, normalize, span_of,
                           tangent_spaces_containing)
from .rohn22 import BiForm22, classify_E, classify_real, pinch_points, rohn_b, rohn_form
from .ruled_family import (FamilyError, ParamLineFamily, bundle_type, check_plucker_identity, curve_span,
                           curve_singularities, dual_family, family_from_curve, forms_proportional,
                           implicitize, map_degree_and_ramification, plucker_curve,
                           point_map_to_line, remove_content, verify_equation)
from .scalar_poly import (HOM, UNI, homog_degree, nullspace, poly_str, rank, rat, rat_str,
                          squarefree_part, sturm_count)
from .singular_analysis import (DELTA, XYZ, CayleySymbol, U, _quadric_matrix,
                                classify_tc_case, expand_tc, multiplicity_along_line,
                                plane_section, section_point_label, singular_symbol)

t = UNI.gens[0]
u = U.gens[0]
t1, t2, t3, t4 = HOM.gens
X, Y, Z = XYZ.gens

GENERIC_PLANE = (3, -5, 7, 11)


class CatalogError(ValueError):
    pass


class ConstraintError(CatalogError):
    def __init__(self, entry_id: str, constraint: str):
        super().__init__(f"{entry_id}: parameter constraint violated: {constraint}")
        self.entry_id = entry_id
        self.constraint = constraint


# ------------------------------------------------------------------ types

@dataclass(frozen=True)
class ParamValue:
    name: str
    value: object
    constraint: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "value": rat_str(self.value), "constraint": self.constraint}


@dataclass(frozen=True)
class Expected:
    symbol: str | None
    degree: int = 4
    dimPC: int | None = None
    curve_sing: str | None = None
    tangent_count: int | None = None
    bundle: tuple | None = None
    cremona: int | None = None
    xiii: tuple = ()
    genus: int | None = 0
    dual_id: str | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"symbol": self.symbol, "degree": self.degree, "dimPC": self.dimPC,
                "curve_sing": self.curve_sing, "tangent_count": self.tangent_count,
                "bundle": list(self.bundle) if self.bundle else None, "cremona": self.cremona,
                "xiii": list(self.xiii), "genus": self.genus, "dual_id": self.dual_id,
                **({"extra": self.extra} if self.extra else {})}


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    title: str
    parameters: tuple
    family: ParamLineFamily | None
    equation: PolyElement | None
    witnesses: tuple
    expected: Expected
    status: str = "verified"  # "verified" | "recorded"
    data: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def params(self) -> dict:
        return {p.name: p.value for p in self.parameters}

    def to_json(self) -> dict:
        out = {"id": self.id, "title": self.title, "status": self.status,
               "parameters": [p.to_json() for p in self.parameters],
               "family": self.family.to_json() if self.family else None,
               "equation": poly_str(self.equation) if self.equation is not None else None,
               "witnesses": [_witness_json(w) for w in self.witnesses],
               "expected": self.expected.to_json()}
        data = {}
        for k, v in self.data.items():
            if k == "H":
                data[k] = poly_str(v)
            elif k == "biform":
                data[k] = v.to_json()
            elif isinstance(v, PolyElement):
                data[k] = poly_str(v)
            else:
                data[k] = _jsonable(v)
        if data:
            out["data"] = data
        if self.notes:
            out["notes"] = self.notes
        return out


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, PolyElement):
        return poly_str(v)
    return rat_str(v)


def _witness_json(w: dict) -> dict:
    out = {"kind": w["kind"]}
    if "span" in w:
        out["span"] = [[rat_str(c) for c in p] for p in w["span"]]
    if "param" in w:
        out["param"] = [poly_str(p) for p in w["param"]]
    if "degree" in w:
        out["degree"] = w["degree"]
    return out


# ----------------------------------------------------------- small helpers

def _fam(a: Sequence, b: Sequence) -> ParamLineFamily:
    return ParamLineFamily(tuple(a), tuple(b))


def _line_w(p: Sequence, q: Sequence) -> dict:
    return {"kind": "line", "span": [tuple(rat(c) for c in p), tuple(rat(c) for c in q)]}


def _coord_w(i: int, j: int) -> dict:
    return _line_w(E[i - 1], E[j - 1])


def _curve_w(param: Sequence, degree: int | None = None) -> dict:
    w = {"kind": "curve", "param": [_to_u(p) for p in param]}
    if degree is not None:
        w["degree"] = degree
    return w


def _to_u(p) -> PolyElement:
    if isinstance(p, PolyElement):
        if p.ring is U:
            return p
        return sum((c * u ** m[0] for m, c in p.terms()), U.zero)
    return U(rat(p))


def _conic_w(fam: ParamLineFamily, plane: Sequence) -> dict:
    """Double conic in a plane, parametrized by each ruling's point on that plane."""
    w = plucker_curve(fam).w
    c = tuple(UNI(rat(x)) for x in plane)
    X_ = remove_content(ext.contract(w, c))
    return _curve_w(X_) | {"plane": tuple(rat(x) for x in plane)}


def binary_real_roots(coeffs: Sequence) -> int:
    """Distinct real roots on P^1 of sum c_k x^(n-k) y^k, with c listed from x^n down."""
    n = len(coeffs) - 1
    f = sum((rat(c) * t ** k for k, c in enumerate(coeffs)), UNI.zero)  # y/x = t
    cnt = 0
    if f.degree() < n:
        cnt += 1
    if f.degree() > 0:
        cnt += sturm_count(squarefree_part(f))
    return cnt


def _binary_squarefree(coeffs: Sequence) -> bool:
    n = len(coeffs) - 1
    f = sum((rat(c) * t ** k for k, c in enumerate(coeffs)), UNI.zero)
    if not f:
        return False
    if f.degree() < n - 1:
        return False
    g = f.gcd(f.diff(t))
    return g.degree() <= 0


# ------------------------------------------------------- N14 constructions

def conic_param(H: PolyElement, p: Sequence) -> list:
    """Rational parametrization of the conic H = 0 in P^2 through its rational point p."""
    p = [rat(c) for c in p]
    M = _quadric_matrix(H)

    def B(a, b):
        return sum((M[i][j] * a[i] * b[j] for i in range(3) for j in range(3)), UNI.zero)

    if B(p, p):
        raise CatalogError("base point is not on the conic")
    basis: list = []
    for d in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
        if rank([p] + basis + [d], 3) > len(basis) + 1:
            basis.append(d)
        if len(basis) == 2:
            break
    q = [UNI(basis[0][i]) + t * basis[1][i] for i in range(3)]
    Qq = B(q, q)
    Bpq = B(p, q)
    return [Qq * p[i] - 2 * Bpq * q[i] for i in range(3)]


def fibre_family(H: PolyElement, p: Sequence) -> ParamLineFamily:
    """Ruling of the quartic with equation  H(X, Y, Z) = 0  for the twisted-cubic quadrics."""
    x, y, z = conic_param(H, p)
    c1 = (z, y, x, UNI.zero)
    c2 = (UNI.zero, z, y, x)
    return family_from_curve(ext.dual_map(ext.wedge2(c1, c2)))


# ------------------------------------------------------------ entry specs

@dataclass(frozen=True)
class _Spec:
    title: str
    defaults: tuple  # ((name, default), ...)
    constraints: tuple  # ((description, predicate(params)), ...)
    build: Callable[[dict], dict]
    expected: Expected
    fixed: bool = True  # witnesses only certified for the defaults?


_SPECS: dict[str, _Spec] = {}


def _spec(eid: str, title: str, expected: Expected, defaults=(), constraints=()):
    def deco(fn):
        _SPECS[eid] = _Spec(title, tuple(defaults), tuple(constraints), fn, expected)
        return fn
    return deco


def _q(x) -> object:
    return rat(x)


B13 = (-1, -3)
B22 = (-2, -2)

# ---- Number 1 (a, b, c): triple line, bundle -1,-3


def _n1(b3, b4):
    fam = _fam((1, t, 0, 0), (0, 0, b3, b4))
    eq = _hom_sub(b3, 3) * t4 - _hom_sub(b4, 3) * t3
    return {"family": fam, "equation": eq, "witnesses": (_coord_w(3, 4),)}


def _hom_sub(p: PolyElement, d: int) -> PolyElement:
    """t1^d p(t2/t1), the degree-d homogenization of p in (t1, t2)."""
    return sum((c * t2 ** m[0] * t1 ** (d - m[0]) for m, c in p.terms()), HOM.zero)


E_N1 = Expected("1^3", 4, 3, "none", 2, B13, 9, (), 0, None)
_MU_C = ("mu not in {0, 1, 1/2}", lambda p: p["mu"] not in (0, 1, QQ(1, 2)))


@_spec("N1a", "triple line, (b3:b4) ramified (3,3)", E_N1)
def _b_n1a(p):
    return _n1(UNI.one, t**3)


@_spec("N1b", "triple line, (b3:b4) ramified (3,2,2)", E_N1)
def _b_n1b(p):
    return _n1(UNI.one, t**2 * (t + 1))


@_spec("N1c", "triple line, (b3:b4) ramified (2,2,2,2)", E_N1, (("mu", 2),), (_MU_C,))
def _b_n1c(p):
    mu = p["mu"]
    return _n1(t - mu, (2 * mu - 1) * t**3 + (2 - 3 * mu) * t**2)


# ---- Number 2 (a, b, c): double twisted cubic

E_N2 = Expected("3^2", 4, 4, "none", 1, B13, 7, (), 0, None)


@_spec("N2a", "double twisted cubic, (b3:b4) ramified (3,3)", E_N2)
def _b_n2a(p):
    fam = _fam((1, t, 0, 0), (0, t**2, 1, t**3))
    return {"family": fam, "witnesses": (_curve_w([u, -u**2, 1, u**3]),)}


@_spec("N2b", "double twisted cubic, (b3:b4) ramified (3,2,2)", E_N2)
def _b_n2b(p):
    fam = _fam((1, t, 0, 0), (0, t**2, 1, t**3 + t**2))
    return {"family": fam, "witnesses": (_curve_w([u + 1, -u**2 - u, 1, u**3 + u**2]),)}


@_spec("N2c", "double twisted cubic, (b3:b4) ramified (2,2,2,2)", E_N2, (("mu", 2),), (_MU_C,))
def _b_n2c(p):
    mu = p["mu"]
    fam = _fam((1, t, 0, 0), (0, 1, t - mu, (2 * mu - 1) * t**3 + (2 - 3 * mu) * t**2))
    wit = ()
    if mu == 2:
        wit = (_curve_w([3 * u**2 - 12 * u + 12, -3 * u**3 + 10 * u**2 - 4 * u - 8,
                         16 - 8 * u, -24 * u**3 + 32 * u**2]),)
    return {"family": fam, "witnesses": wit}


# ---- Number 3 (a, b): line and conic, bundle -1,-3

E_N3 = Expected("1^2,2^2", 4, 4, "none", 1, B13, 4, (), 0, None)


def _n3(alpha, beta):
    fam = _fam((t + beta, 1, 0, 0), (0, t**3 + alpha * t, t**2, 1))
    eq = (t3 * t4 * (t2 - beta * (t3 + alpha * t4)) ** 2
          - (t3 * (t3 + alpha * t4) - beta * t2 * t4 + t1 * t4) ** 2)
    plane = (0, 1, -beta, -alpha * beta)
    return {"family": fam, "equation": eq,
            "witnesses": (_coord_w(1, 2), _conic_w(fam, plane))}


@_spec("N3a", "line and conic, beta != 0", E_N3, (("alpha", 1), ("beta", 1)),
       (("beta != 0", lambda p: p["beta"] != 0),))
def _b_n3a(p):
    return _n3(p["alpha"], p["beta"])


@_spec("N3b", "line and conic, beta = 0 (the point L meet D is a ramification point)", E_N3,
       (("alpha", 1),))
def _b_n3b(p):
    return _n3(p["alpha"], QQ(0))


# ---- Numbers 4, 5

@_spec("N4", "triple line, C with a node", Expected("1^3", 4, 3, "node", 1, B13, 10, (7,), 0, None),
       (("alpha", 1), ("beta", 2)),
       (("gcd(t^3 + alpha, t + beta) = 1, i.e. alpha != beta^3",
         lambda p: p["alpha"] != p["beta"] ** 3),))
def _b_n4(p):
    al, be = p["alpha"], p["beta"]
    fam = _fam((t, 1, 0, 0), (0, t**3 + al, t * (t + be), t + be))
    eq = (t1 * t4**2 * (t3 + be * t4) - t2 * t3 * t4 * (t3 + be * t4)
          + al * t3 * t4**3 + t3**4)
    return {"family": fam, "equation": eq, "witnesses": (_coord_w(1, 2),)}


@_spec("N5", "triple line, C with a cusp", Expected("1^3", 4, 3, "cusp", 1, B13, 10, (), 0, None),
       (("alpha", 1),))
def _b_n5(p):
    al = p["alpha"]
    fam = _fam((t, 1, 0, 0), (0, t**3 + al * t**2, t, 1))
    eq = t1 * t4**3 - t2 * t3 * t4**2 + al * t3**3 * t4 + t3**4
    return {"family": fam, "equation": eq, "witnesses": (_coord_w(1, 2),)}


# ---- Numbers 6, 7: three double lines

@_spec("N6", "three double lines, C with a node",
       Expected("1^2,1^2,1^2", 4, 3, "node", 2, B22, 5, (), 0, None),
       (("lambda", 2),), (("lambda^2 not in {0, 1}", lambda p: p["lambda"] ** 2 not in (0, 1)),))
def _b_n6(p):
    lam2 = p["lambda"] ** 2
    fam = _fam((1, t**2, 0, 0), (0, 0, (t - 1) ** 2, (t - lam2) ** 2))
    wit = (_coord_w(1, 2), _coord_w(3, 4), _line_w((1, lam2, 0, 0), (0, 0, 1, lam2)))
    return {"family": fam, "witnesses": wit}


@_spec("N7", "three double lines, C with a cusp",
       Expected("1^2,1^2,1^2", 4, 3, "cusp", 2, B22, 5, (), 0, None))
def _b_n7(p):
    fam = _fam((1, t**2, 0, 0), (0, 0, 1, (t - 1) ** 2))
    return {"family": fam, "witnesses": (_coord_w(1, 2), _coord_w(3, 4), _coord_w(2, 4))}


# ---- Numbers 8, 9, bundle -2,-2 with a triple line

@_spec("N8", "triple line, (b3:b4) = (1:t)", Expected("1^3", 4, 4, "none", 1, B22, 3, (), 0, "N3a"))
def _b_n8(p):
    fam = _fam((1, t**2, 0, 0), (t**2, 0, 1, t))
    # b1 = t^2, b2 = 0 in the printed equation
    eq = t1 * t3 * t4**2 - t2 * t3**3 - t4**4
    return {"family": fam, "equation": eq, "witnesses": (_coord_w(1, 2),)}


@_spec("N9", "triple line, (b3:b4) = (t - alpha : t(t - alpha))",
       Expected("1^3", 4, 4, "none", 1, B22, 3, (), 0, "N3b"),
       (("alpha", 1),), (("alpha != 0", lambda p: p["alpha"] != 0),))
def _b_n9(p):
    al = p["alpha"]
    fam = _fam((1, t**2, 0, 0), (t**2, 0, t - al, t * (t - al)))
    # b1 = t^2, b2 = 0 in the printed equation
    eq = (t1 * (t4 - al * t3) * t4**2 - t2 * t3**2 * (t4 - al * t3) - t4**4)
    return {"family": fam, "equation": eq, "witnesses": (_coord_w(1, 2),)}


# ---- Number 10 (a, b): two intersecting double lines

_C_NZ = ("c != 0", lambda p: p["c"] != 0)


@_spec("N10a", "two intersecting double lines, C with a node",
       Expected("1^2,1^2 int", 4, 3, "node", 1, B22, 6, (), 0, None), (("c", 1),), (_C_NZ,))
def _b_n10a(p):
    c = p["c"]
    fam = _fam((1, t**2, 0, 0), (c * t, c * t, 1, t**2))
    eq = c**2 * t3 * t4 * (t3 - t4) ** 2 - (t1 * t4 - t2 * t3) ** 2
    wit = (_coord_w(1, 2), _line_w((1, 1, 0, 0), (0, 0, 1, 1)))
    return {"family": fam, "equation": eq, "witnesses": wit}


@_spec("N10b", "two intersecting double lines, C with a cusp",
       Expected("1^2,1^2 int", 4, 3, "cusp", 1, B22, 6, (), 0, None), (("c", 1),), (_C_NZ,))
def _b_n10b(p):
    c = p["c"]
    fam = _fam((1, t**2, 0, 0), (0, c * t, 1, t**2))
    eq = (t1 * t4 - t2 * t3) ** 2 - c**2 * t3**3 * t4
    wit = (_coord_w(1, 2), _coord_w(2, 4))
    return {"family": fam, "equation": eq, "witnesses": wit,
            "data": {"as_printed": {
                "equation": "(t2*t3 - t1*t4 - alpha^2*t1*t3 + alpha^2*t3^2)^2"
                            " - t1*t3*t4*(t3 - 2*alpha*t1)^2",
                "status": "as-printed, unverified"}}}


# ---- Numbers 11, 12: line and conic, bundle -2,-2

@_spec("N11", "line and conic, image in L x D with a cusp",
       Expected("1^2,2^2", 4, 4, "none", 1, B22, 2, (), 0, None, {"e_type": "cusp"}),
       (("b1", 1), ("b2", 2)), (("b1 != 0", lambda p: p["b1"] != 0),))
def _b_n11(p):
    b1, b2 = p["b1"], p["b2"]
    fam = _fam((1, t**2, 0, 0), (b1 * (t - 1), b2 * (t - 1), 1, (t - 1) ** 2))
    eq = (t3 * t4 * (2 * t1 + (b2 - b1) * t3 - b1 * t4) ** 2
          - (t2 * t3 - t1 * t3 - t1 * t4 + 2 * b1 * t3 * t4) ** 2)
    plane = (2, 0, b2 - b1, -b1)
    return {"family": fam, "equation": eq,
            "witnesses": (_coord_w(1, 2), _conic_w(fam, plane)), "data": {"conic_plane": plane}}


@_spec("N12", "line and conic, image in L x D with a node",
       Expected("1^2,2^2", 4, 4, "none", 1, B22, 2, (8,), 0, None, {"e_type": "node"}),
       (("mu", 2),), (("mu not in {0, 1}", lambda p: p["mu"] not in (0, 1)),))
def _b_n12(p):
    mu = p["mu"]
    k = (mu - 1) ** 2
    fam = _fam((1, t**2, 0, 0), (0, 1, (t - 1) ** 2, (t - mu) ** 2))
    eq = (4 * t3 * t4 * (k * (t2 - mu * t1) - 2 * t3 - 2 * t4) ** 2
          - (k * (-mu**2 * t1 * t3 - t1 * t4 + t2 * t3 + t2 * t4)
             - t3**2 - 6 * t3 * t4 - t4**2) ** 2)
    plane = (-mu * k, k, -2, -2)
    return {"family": fam, "equation": eq,
            "witnesses": (_coord_w(1, 2), _conic_w(fam, plane)), "data": {"conic_plane": plane}}


# ---- Number 13 (a, b, c): duals of Number 2

E_N13 = Expected("1^3", 4, 4, "none", 1, B22, 8, (6,), 0, None)


def _n13(c1, c2):
    fam = _fam((c1, c2, 0, 0), (0, t**2, 1, t))
    return {"family": fam, "witnesses": (_coord_w(1, 2),)}


@_spec("N13a", "triple line, point map ramified (3,3)", E_N13)
def _b_n13a(p):
    return _n13(UNI.one, t**3)


@_spec("N13b", "triple line, point map ramified (3,2,2)", E_N13)
def _b_n13b(p):
    return _n13(UNI.one, t**3 + t**2)


@_spec("N13c", "triple line, point map ramified (2,2,2,2)", E_N13, (("mu", 3),), (_MU_C,))
def _b_n13c(p):
    mu = p["mu"]
    return _n13(t - mu, (2 * mu - 1) * t**3 + (2 - 3 * mu) * t**2)


# ---- Number 14: six configurations of the conic H = 0 against T = 0

N14_FORMS = {
    "td": (Y**2 - 4 * X * Z, (0, 0, 1), "tangent-developable"),
    "generic": (X**2 - Z**2 + X * Y, (1, -1, 0), "generic"),
    "i": (X * Z + X**2 + X * Y + QQ(1, 4) * Y**2, (0, 0, 1), "case-i"),
    "ii": (X * Z + X * Y - QQ(1, 4) * Y**2, (0, 0, 1), "case-ii"),
    "iii": (X * Z + X**2 + 3 * X * Y + 2 * Y**2, (0, 0, 1), "case-iii"),
    "iv": (X * Z + X**2 - QQ(1, 4) * Y**2, (0, 0, 1), "case-iv"),
}


def _n14_builder(H, base):
    def build(p):
        fam = fibre_family(H, base)
        return {"family": fam, "equation": expand_tc(H), "witnesses": ({"kind": "tc"},),
                "data": {"H": H, "base_point": base}}
    return build


for _key, (_H, _pt, _case) in N14_FORMS.items():
    _SPECS[f"N14-{_key}"] = _Spec(
        f"double twisted cubic, H = 0 meets T = 0 as {_case}", (), (), _n14_builder(_H, _pt),
        Expected("3^2", 4, 4, "none", 0, B22, 1, (9, 10) if _key == "generic" else (), 0, None,
                 {"tc_case": _case}))


# ---- Numbers 15, 16: genus one

def _n15_H(h) -> PolyElement:
    return sum((rat(c) * t3 ** (4 - k) * t4**k for k, c in enumerate(h)), HOM.zero)


_N15_ROHN_DISPLAY = {"equation": "a*(t3^2 +- t4^2) + 2*b*t3^2*t4^2 + c*(t4*t2 - t4*t1)^2",
                     "status": "as-printed, unverified"}


def _n15(h):
    H = _n15_H(h)
    return {"equation": (t4 * t1 - t3 * t2) ** 2 + H, "witnesses": (_coord_w(1, 2),),
            "data": {"ruling": "n15", "H_coeffs": tuple(rat(c) for c in h),
                     "as_printed": _N15_ROHN_DISPLAY}}


_H_SQF = ("H(t3, t4) has four distinct roots",
          lambda p: _binary_squarefree([p[f"h{k}"] for k in range(5)]))


@_spec("N15", "one double line, C of genus one",
       Expected("1^2", 4, 3, None, 1, None, 12, (5,), 1, None),
       (("h0", 0), ("h1", 1), ("h2", -3), ("h3", 2), ("h4", 0)), (_H_SQF,))
def _b_n15(p):
    return _n15([p[f"h{k}"] for k in range(5)])


def _n16(F: BiForm22):
    return {"equation": F.to_surface(), "witnesses": (_coord_w(1, 2), _coord_w(3, 4)),
            "data": {"ruling": "n16", "biform": F}}


def _smooth_rohn(p):
    try:
        b = rohn_b(p["a1"], p["a2"], p["a3"])
    except ValueError:
        return False
    return b not in (2, -2)


_ROHN_SMOOTH = ("a1 a2 != 0 and b = (a1^2 + a2^2 - a3^2)/(a1 a2) != +-2", _smooth_rohn)


@_spec("N16", "two skew double lines, C of genus one",
       Expected("1^2,1^2", 4, 3, None, 2, None, 11, (1, 2, 3, 4), 1, None),
       (("a1", 1), ("a2", 2), ("a3", 5)), (_ROHN_SMOOTH,))
def _b_n16(p):
    return _n16(rohn_form(p["a1"], p["a2"], p["a3"], "++"))


# ---- cubics, tangent developable, Steiner

@_spec("cubic-1", "ruled cubic, directrix and double line",
       Expected("1^2", 3, 3, "none", 2, None, None, (), 0, None))
def _b_cubic1(p):
    fam = family_from_curve((UNI.zero, -t**2, UNI.one, -t**3, t, UNI.zero))
    return {"family": fam, "equation": t3 * t1**2 + t4 * t2**2, "witnesses": (_coord_w(3, 4),)}


@_spec("cubic-2", "Cayley's ruled cubic",
       Expected("1^2", 3, 3, "none", 1, None, None, (), 0, None))
def _b_cubic2(p):
    fam = family_from_curve((UNI.zero, t**3, t**2, -t**2, -t, -UNI.one))
    return {"family": fam, "equation": t3 * t1 * t2 + t4 * t1**2 + t2**3,
            "witnesses": (_coord_w(3, 4),)}


@_spec("tc-tangent", "tangent developable of the twisted cubic",
       Expected("3^2", 4, 4, "none", 0, B22, 1, (), 0, None, {"tc_identity": True}))
def _b_tc(p):
    fam = _fam((1, t, t**2, t**3), (0, 1, 2 * t, 3 * t**2))
    eq = (t1 * t4 - t2 * t3) ** 2 - 4 * (t1 * t3 - t2**2) * (t2 * t4 - t3**2)
    return {"family": fam, "equation": eq, "witnesses": ({"kind": "tc"},)}


@_spec("steiner", "Steiner's Roman surface: three concurrent double lines, no other lines",
       Expected("1^2,1^2,1^2", 4, None, None, None, None, None, (), 0, None))
def _b_steiner(p):
    eq = (t2 * t3 + t1 * t3 + t1 * t2) ** 2 + t4 * t1 * t2 * t3
    return {"equation": eq, "witnesses": (_coord_w(3, 4), _coord_w(2, 4), _coord_w(1, 4))}


# ---- Series XIII string models

def _xiii_rohn(a1, a2, a3, variant, case, nr):
    F = rohn_form(a1, a2, a3, variant)
    exp = Expected("1^2,1^2", 4, 3, None, 2, None, 11, (nr,), 1, None, {"real_case": case})

    def build(p):
        return _n16(F) | {"data": {"ruling": "n16", "biform": F, "variant": variant}}
    return build, exp


for _nr, (_a, _v, _case) in {1: ((1, 1, 5), "++", "a"), 2: ((1, -1, 1), "++", "b"),
                              3: ((1, -1, 1), "half-symmetric", "c")}.items():
    _b, _e = _xiii_rohn(*_a, _v, _case, _nr)
    _SPECS[f"xiii-{_nr}"] = _Spec(f"string model {_nr}: Rohn form {_v} {_a}, real case ({_case})",
                                  (), (), _b, _e)


@_spec("xiii-4", "string model 4: two conjugate double lines (recorded only)",
       Expected("1^2,1^2", 4, None, None, None, None, 11, (4,), 1, None))
def _b_x4(p):
    return {"status": "recorded",
            "notes": "the double lines are complex conjugate; no rational normal form is stored"}


@_spec("xiii-5", "string model 5: Rohn form with four real ramification points",
       Expected("1^2", 4, 3, None, 1, None, 12, (5,), 1, None, {"real_ramification": 4}),
       (("a", 1), ("b", -2)),
       (("a != 0 and b/a < -1 (real ramification, sign +)",
         lambda p: p["a"] != 0 and p["b"] / p["a"] < -1),))
def _b_x5(p):
    a, b = p["a"], p["b"]
    out = _n15([a, 0, 2 * b, 0, a])
    out["data"]["sign"] = "+"
    return out


def _alias(src: str, nr: int, title: str):
    s = _SPECS[src]
    e = s.expected
    exp = Expected(e.symbol, e.degree, e.dimPC, e.curve_sing, e.tangent_count, e.bundle,
                   e.cremona, (nr,), e.genus, e.dual_id, dict(e.extra))
    _SPECS[f"xiii-{nr}"] = _Spec(title, (), (), lambda p: s.build(dict(s.defaults)), exp)


_alias("N13a", 6, "string model 6: Number 13 a")
_alias("N4", 7, "string model 7: Number 4")


@_spec("xiii-8", "string model 8: conic and line, image in L x D with a node",
       Expected("1^2,2^2", 4, 4, "none", 1, B22, 2, (8,), 0, None, {"e_type": "node"}))
def _b_x8(p):
    fam = _fam((t, QQ(1, 8) * t**2 + QQ(3, 8), 0, 0), (27 * t**2 + 1, 8 * t, -24 * t, 9 * t**2 + 3))
    eq = (t1**2 * t3**2 + 3 * ((t2 * t3 - t4**2) ** 2 + t1**2 * t4**2)
          + 10 * t1 * t4 * (t2 * t3 - t4**2))
    wit = (_coord_w(1, 2), _curve_w([0, 1, u**2, u]))
    return {"family": fam, "equation": eq, "witnesses": wit,
            "data": {"conic_plane": (1, 0, 0, 0), "rohn_node": (1, 3, 5)}}


def _x14(nr, H, base):
    exp = Expected("3^2", 4, 4, "none", 0, B22, 1, (nr,), 0, None, {"tc_case": "generic"})
    _SPECS[f"xiii-{nr}"] = _Spec(f"string model {nr}: Number 14 with generic H", (), (),
                                 _n14_builder(H, base), exp)


_x14(9, X**2 - Z**2 + X * Y, (1, -1, 0))
_x14(10, X**2 + Y * Z - 2 * Z**2, (0, 1, 0))


# ----------------------------------------------------------------- ids

QUARTIC_IDS = ("N1a", "N1b", "N1c", "N2a", "N2b", "N2c", "N3a", "N3b", "N4", "N5", "N6", "N7",
               "N8", "N9", "N10a", "N10b", "N11", "N12", "N13a", "N13b", "N13c",
               "N14-td", "N14-generic", "N14-i", "N14-ii", "N14-iii", "N14-iv", "N15", "N16")
EXTRA_IDS = ("cubic-1", "cubic-2", "tc-tangent", "steiner") + tuple(f"xiii-{k}" for k in range(1, 11))

DUALS = {"N2a": "N13a", "N2b": "N13b", "N2c": "N13c", "N13a": "N2a", "N13b": "N2b", "N13c": "N2c",
         "N3a": "N8", "N3b": "N9", "N8": "N3a", "N9": "N3b", "xiii-6": "N2a"}
SUBCASE_PAIRS = {"N2a", "N2b", "N2c", "N13a", "N13b", "N13c", "xiii-6"}
DEVELOPABLE = {"N14-td", "tc-tangent"}


def nonruled_control(N=1) -> PolyElement:
    """w x^2 (x + 3N z) + x^4 + y^4 in (x, y, z, w) = (t1, t2, t3, t4).

    A quartic once proposed as ruled; a general point of it lies on no line.
    Kept as a negative example and never listed as a catalog entry.
    """
    x, y, z, w = t1, t2, t3, t4
    return w * x**2 * (x + 3 * rat(N) * z) + x**4 + y**4


def list_entries() -> list[str]:
    return list(QUARTIC_IDS + EXTRA_IDS)


def _check_constraints(eid: str, params: dict):
    for desc, pred in _SPECS[eid].constraints:
        if not pred(params):
            raise ConstraintError(eid, desc)


def instantiate(eid: str, params: dict | None = None) -> CatalogEntry:
    if eid not in _SPECS:
        raise CatalogError(f"unknown catalog id {eid!r}")
    spec = _SPECS[eid]
    names = [n for n, _ in spec.defaults]
    values = {n: rat(v) for n, v in spec.defaults}
    for k, v in (params or {}).items():
        if k not in values:
            raise CatalogError(f"{eid}: unknown parameter {k!r} (expected one of {names})")
        values[k] = rat(v)
    _check_constraints(eid, values)
    out = spec.build(values)
    is_default = all(values[n] == rat(d) for n, d in spec.defaults)
    exp = spec.expected
    if exp.dual_id is None and exp.genus == 0 and out.get("family") is not None:
        exp = Expected(exp.symbol, exp.degree, exp.dimPC, exp.curve_sing, exp.tangent_count,
                       exp.bundle, exp.cremona, exp.xiii, exp.genus, DUALS.get(eid, eid), exp.extra)
    witnesses = tuple(out.get("witnesses", ()))
    notes = out.get("notes", "")
    if not is_default and witnesses and any(w["kind"] == "curve" and "plane" not in w
                                            for w in witnesses):
        witnesses = ()
        notes = "witnesses are certified for the default parameters only; symbol is derived"
    cparams = tuple(ParamValue(n, values[n], "; ".join(d for d, _ in spec.constraints))
                    for n in names)
    return CatalogEntry(eid, spec.title, cparams, out.get("family"), out.get("equation"),
                        witnesses, exp, out.get("status", "verified"), out.get("data", {}), notes)


# --------------------------------------------------- genus-one rulings

def genus1_span(entry: CatalogEntry, samples: Sequence = (0, 1, 2, 3, -1, 5, 7)) -> ProjSubspace:
    """Span of the line curve, from the rational and irrational parts of sampled lines."""
    kind = entry.data.get("ruling")
    vecs = []
    if kind == "n15":
        for s in samples:
            s = rat(s)
            vecs.append((QQ(0), QQ(1), s, s, s * s, QQ(0)))
        vecs.append((QQ(1), QQ(0), QQ(0), QQ(0), QQ(0), QQ(0)))
    elif kind == "n16":
        c = entry.data["biform"].c
        for s in samples:
            s = rat(s)
            A, B, C = (sum((c[i][j] * s**i for i in range(3)), QQ(0)) for j in range(3))
            vecs.append((QQ(0), 2 * C, -B, 2 * C * s, -B * s, QQ(0)))
            vecs.append((QQ(0), QQ(0), QQ(1), QQ(0), s, QQ(0)))
    else:
        raise CatalogError(f"{entry.id} has no genus-one ruling sampler")
    return span_of(vecs)


# -------------------------------------------------------- derived symbol

def derived_symbol(fam: ParamLineFamily, F: PolyElement, plane=GENERIC_PLANE) -> CayleySymbol:
    """Cayley symbol from the curve data and a plane section, without witnesses.

    Candidate singular lines are the tangent-space lines of P(C) and the lines at
    rational singular points of C. The section's remaining delta must come from a
    double conic (2) or a double twisted cubic (3).
    """
    curve = plucker_curve(fam)
    cands = list(curve_tangent_lines(curve))
    for s in curve_singularities(fam):
        par = s.parameters[0]
        if isinstance(par, tuple):
            continue
        w = curve.at(par)
        if any(w):
            cands.append(normalize(w))
    uniq = []
    for L in cands:
        if L not in uniq:
            uniq.append(L)
    lines = []
    for L in uniq:
        m = multiplicity_along_line(F, L)
        if m >= 2:
            lines.append((L, m))
    sec = plane_section(F, plane)
    total = sum(p.delta * p.orbit_degree for p in sec.points)
    cov = [rat(x) for x in plane]
    on_lines = 0
    for L, _ in lines:
        on_lines += DELTA[section_point_label(F, plane, ext.contract(L, cov))]
    r = total - on_lines
    comps = [(1, m) for _, m in lines]
    if r == 2:
        comps.append((2, 2))
    elif r == 3:
        comps.append((3, 2))
    elif r != 0:
        raise CatalogError(f"residual delta {r} does not fit a conic or twisted cubic")
    tags = set()
    if len(comps) == 2 and len(lines) == 2 and all(m == 2 for _, m in lines):
        if ext.plucker_form(lines[0][0], lines[1][0]) == 0:
            tags.add("int")
    return CayleySymbol(tuple(comps), frozenset(tags))


def curve_tangent_lines(curve) -> tuple:
    ts = tangent_spaces_containing(curve_span(curve))
    return ts.lines if not ts.infinite else ()


# ---------------------------------------------------- line x conic image

def line_conic_image(fam: ParamLineFamily, L: Sequence, plane: Sequence) -> str:
    """Type of the image of C in L x D (D the double conic in the given plane)."""
    pm = point_map_to_line(fam, L)
    if pm is None:
        raise CatalogError("the rulings do not all meet the line")
    x0, x1 = pm
    w = plucker_curve(fam).w
    c = tuple(UNI(rat(v)) for v in plane)
    Xc = remove_content(ext.contract(w, c))
    p0 = None
    for s in (0, 1, 2, 3, 5):
        v = tuple(q(s) for q in Xc)
        if any(v):
            p0 = v
            break
    ells = [tuple(v) for v in nullspace([list(p0)], 4)]
    ells = [e for e in ells if rank([list(e), [rat(x) for x in plane]], 4) == 2]
    basis = []
    for e in ells:
        if rank([[rat(x) for x in plane]] + basis + [list(e)], 4) > len(basis) + 1:
            basis.append(list(e))
        if len(basis) == 2:
            break
    y0, y1 = (sum((UNI(e[i]) * Xc[i] for i in range(4)), UNI.zero) for e in basis)
    g = y0.gcd(y1)
    y0, y1 = y0.quo(g), y1.quo(g)
    mons = [x0 ** (2 - i) * x1**i * y0 ** (2 - j) * y1**j for i in range(3) for j in range(3)]
    deg = max(m.degree() for m in mons if m)
    rows = [[QQ(m[(k,)]) if (k,) in m else QQ(0) for m in mons] for k in range(deg + 1)]
    ker = nullspace(rows, 9)
    if len(ker) != 1:
        raise CatalogError(f"image in L x D is not a unique (2,2) curve (kernel {len(ker)})")
    cvec = ker[0]
    G = BiForm22(tuple(tuple(cvec[3 * i + j] for j in range(3)) for i in range(3)))
    return classify_E(G).kind


# ---------------------------------------------------------------- reports

@dataclass
class Check:
    name: str
    expected: object
    actual: object
    passed: bool

    def to_json(self) -> dict:
        return {"check": self.name, "expected": _jsonable(self.expected),
                "actual": _jsonable(self.actual), "pass": self.passed}


@dataclass
class Report:
    id: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, actual, passed=None):
        if passed is None:
            passed = expected == actual
        self.checks.append(Check(name, expected, actual, bool(passed)))

    def run(self, name, expected, fn):
        try:
            actual = fn()
        except Exception as exc:  # failures are report content
            self.checks.append(Check(name, expected, f"error: {exc}", False))
            return None
        self.add(name, expected, actual)
        return actual

    def to_json(self) -> dict:
        return {"id": self.id, "pass": self.passed, "checks": [c.to_json() for c in self.checks],
                **({"notes": self.notes} if self.notes else {})}


def sing_kind(fam: ParamLineFamily) -> str:
    kinds = sorted({s.kind for s in curve_singularities(fam)})
    return "none" if not kinds else "+".join(kinds)


def _tc_identity(fam: ParamLineFamily) -> bool:
    from .ruled_family import TS
    w = plucker_curve(fam).w
    a, b = TS.gens
    wt = [p.set_ring(TS) for p in w]
    ws = [p.set_ring(TS).compose(a, b) for p in w]
    P = ext.plucker_form(wt, ws)
    target = (a - b) ** 4
    return bool(P) and P * target.LC == target * P.LC


def entry_equation(entry: CatalogEntry) -> PolyElement:
    if entry.equation is not None:
        return entry.equation
    if entry.family is None:
        raise CatalogError(f"{entry.id} has neither a family nor an equation")
    return implicitize(entry.family, plucker_curve(entry.family).degree)


def verify_entry(eid: str | CatalogEntry, params: dict | None = None) -> Report:
    entry = eid if isinstance(eid, CatalogEntry) else instantiate(eid, params)
    rep = Report(entry.id)
    exp = entry.expected
    if entry.status == "recorded":
        rep.notes.append("recorded entry: no equation or family to verify")
        return rep
    fam = entry.family
    if fam is not None and entry.equation is not None:
        rep.run("equation", True, lambda: verify_equation(fam, entry.equation))
    F = rep.run("implicit form", exp.degree, lambda: homog_degree(entry_equation(entry)))
    F = entry_equation(entry) if F is not None else None
    if fam is not None:
        curve = plucker_curve(fam)
        rep.add("degree", exp.degree, curve.degree)
        rep.add("plucker identity", True, check_plucker_identity(curve))
        if exp.dimPC is not None:
            rep.run("dim P(C)", exp.dimPC, lambda: curve_span(curve).dim)
        if exp.tangent_count is not None:
            rep.run("tangent spaces", exp.tangent_count,
                    lambda: tangent_spaces_containing(curve_span(curve)).count)
        if exp.curve_sing is not None:
            rep.run("curve singularities", exp.curve_sing, lambda: sing_kind(fam))
        if exp.bundle is not None:
            rep.run("bundle", exp.bundle, lambda: bundle_type(fam))
    elif entry.data.get("ruling"):
        P = genus1_span(entry)
        if exp.dimPC is not None:
            rep.add("dim P(C)", exp.dimPC, P.dim)
        if exp.tangent_count is not None:
            rep.run("tangent spaces", exp.tangent_count, lambda: tangent_spaces_containing(P).count)
    if F is None:
        return rep
    if exp.symbol is not None:
        if entry.witnesses:
            rep.run("symbol", exp.symbol, lambda: singular_symbol(F, entry.witnesses).ascii())
        elif fam is not None:
            rep.notes.append("symbol derived from curve data and a plane section")
            rep.run("symbol", exp.symbol, lambda: derived_symbol(fam, F).ascii())
    if exp.genus is not None:
        rep.run("genus", exp.genus, lambda: plane_section(F, GENERIC_PLANE).genus)
    _extra_checks(entry, rep, F)
    return rep


def _extra_checks(entry: CatalogEntry, rep: Report, F: PolyElement):
    ex = entry.expected.extra
    if "tc_case" in ex:
        rep.run("tc case", ex["tc_case"], lambda: classify_tc_case(entry.data["H"]))
        rep.run("equation matches H", True,
                lambda: forms_proportional(F, expand_tc(entry.data["H"])))
    if ex.get("tc_identity"):
        rep.run("plucker_form(w(t), w(s)) ~ (t - s)^4", True, lambda: _tc_identity(entry.family))
    if "e_type" in ex:
        rep.run("image in L x D", ex["e_type"],
                lambda: line_conic_image(entry.family, coordinate_line(1, 2),
                                         entry.data["conic_plane"]))
    if "real_case" in ex:
        rep.run("real case", ex["real_case"], lambda: classify_real(entry.data["biform"]).case)
        rep.notes.append(f"pinch points {list(pinch_points(entry.data['biform']))}")
    if "real_ramification" in ex:
        rep.run("real ramification points", ex["real_ramification"],
                lambda: binary_real_roots(entry.data["H_coeffs"]))


# ---------------------------------------------------------------- duality

def _signature(fam: ParamLineFamily, dual: ParamLineFamily, w0) -> tuple:
    """Degrees and ramification of the point map to w0 and of the plane map around w0."""
    pm = point_map_to_line(fam, w0)
    pl = point_map_to_line(dual, ext.dual_map(w0))
    return (map_degree_and_ramification(*pm) if pm else None,
            map_degree_and_ramification(*pl) if pl else None)


def class_data(fam: ParamLineFamily, F: PolyElement) -> dict:
    curve = plucker_curve(fam)
    ts = tangent_spaces_containing(curve_span(curve))
    data = {"degree": curve.degree, "dimPC": curve_span(curve).dim, "tangent_count": ts.count,
            "curve_sing": sing_kind(fam), "symbol": derived_symbol(fam, F).ascii(),
            "genus": plane_section(F, GENERIC_PLANE).genus}
    if curve.degree == 4:
        data["bundle"] = bundle_type(fam)
    return data


def _expected_class(exp: Expected) -> dict:
    out = {"degree": exp.degree, "dimPC": exp.dimPC, "tangent_count": exp.tangent_count,
           "curve_sing": exp.curve_sing, "symbol": exp.symbol, "genus": exp.genus}
    if exp.degree == 4:
        out["bundle"] = exp.bundle
    return out


def duality_check(eid: str, params: dict | None = None) -> Report:
    entry = instantiate(eid, params)
    rep = Report(entry.id)
    if entry.family is None or entry.expected.genus != 0:
        raise CatalogError(f"{eid}: duality needs a genus-0 family")
    fam = entry.family
    if eid in DEVELOPABLE:
        try:
            dual_family(fam)
        except FamilyError:
            rep.add("reciprocal degenerates to a curve (developable surface)", True, True)
        else:
            rep.add("reciprocal degenerates to a curve (developable surface)", True, False)
        return rep
    dual = dual_family(fam)
    Fd = implicitize(dual, plucker_curve(dual).degree)
    target_id = entry.expected.dual_id or eid
    target = instantiate(target_id)
    rep.notes.append(f"expected reciprocal class: {target_id}")
    got = class_data(dual, Fd)
    want = _expected_class(target.expected)
    for k, v in want.items():
        rep.add(f"dual {k}", v, got.get(k))
    if eid in SUBCASE_PAIRS:
        w0 = curve_tangent_lines(plucker_curve(fam))[0]
        mine = _signature(fam, dual, w0)
        dual_sig = (mine[1], mine[0])
        tf = target.family
        tw0 = curve_tangent_lines(plucker_curve(tf))[0]
        rep.add("dual ramification signature", _signature(tf, dual_family(tf), tw0), dual_sig)
    return rep


# ------------------------------------------------------------ catalog.json

def catalog_json() -> dict:
    entries = []
    for eid in list_entries():
        e = instantiate(eid)
        obj = e.to_json()
        if e.equation is None and e.family is not None:
            obj["equation"] = poly_str(entry_equation(e))
            obj["equation_source"] = "implicitized"
        elif e.equation is not None:
            obj["equation_source"] = "closed form"
        entries.append(obj)
    return {"schema": "ruled-surface-catalog/1", "entries": entries,
            "negative_examples": [{"id": "nonruled-control", "parameters": {"N": "1"},
                                   "equation": poly_str(nonruled_control(1)),
                                   "note": "a general point lies on no line of the surface"}]}


def write_catalog_json(path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(catalog_json(), fh, indent=1, sort_keys=False)
        fh.write("\n")


def _validate_defaults():
    for eid, spec in _SPECS.items():
        _check_constraints(eid, {n: rat(v) for n, v in spec.defaults})


_validate_defaults()

__all__ = ["CatalogEntry", "CatalogError", "ConstraintError", "Expected", "ParamValue", "Report",
           "instantiate", "list_entries", "nonruled_control", "verify_entry", "duality_check", "derived_symbol",
           "conic_param", "fibre_family", "genus1_span", "line_conic_image", "catalog_json",
           "write_catalog_json", "QUARTIC_IDS", "EXTRA_IDS"]
