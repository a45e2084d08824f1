"""Exact rationals, polynomials and dense linear algebra over Q.

Polynomials are sympy ``PolyElement`` objects over ``QQ`` (gmpy2 ``mpq``
coefficients when gmpy2 is installed); this module adds the handful of
operations the rest of the package relies on plus a stable JSON encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing, ring
from sympy.polys.rootisolation import dup_count_real_roots

Rational = type(QQ(1))


class PolyError(ValueError):
    pass


def rat(x) -> Rational:
    """Coerce int, Fraction, str ("p/q" or decimal) or mpq to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return QQ(f.numerator, f.denominator)
    if isinstance(x, float):
        f = Fraction(x)
        return QQ(f.numerator, f.denominator)
    try:
        return QQ.convert(x)
    except Exception as exc:  # pragma: no cover - defensive
        raise TypeError(f"cannot convert {x!r} to a rational") from exc


def rat_str(q) -> str:
    q = rat(q)
    return f"{QQ.numer(q)}/{QQ.denom(q)}"


def to_fraction(q) -> Fraction:
    q = rat(q)
    return Fraction(int(QQ.numer(q)), int(QQ.denom(q)))


@lru_cache(maxsize=None)
def get_ring(names: tuple[str, ...]) -> PolyRing:
    return ring(",".join(names), QQ)[0]


UNI = get_ring(("t",))
HOM = get_ring(("t1", "t2", "t3", "t4"))
T = UNI.gens[0]
T1, T2, T3, T4 = HOM.gens


def uni(coeffs: Sequence, R: PolyRing = UNI) -> PolyElement:
    """Univariate polynomial from ascending coefficients."""
    x = R.gens[0]
    return sum((rat(c) * x**k for k, c in enumerate(coeffs)), R.zero)


def uni_coeffs(p: PolyElement) -> list[Rational]:
    """Ascending coefficient list; the zero polynomial gives []."""
    if not p:
        return []
    d = p.degree()
    out = [QQ(0)] * (d + 1)
    for (k,), c in p.terms():
        out[k] = c
    return out


def parse_poly(text: str, R: PolyRing = HOM) -> PolyElement:
    """Parse a polynomial written in sympy syntax ("^" accepted for powers)."""
    expr = sympy.sympify(text.replace("^", "**"), locals={s.name: s for s in R.symbols})
    return R.from_expr(sympy.expand(expr))


def total_degree(p: PolyElement) -> int:
    if not p:
        return -1
    return max(sum(m) for m in p.monoms())


def is_homogeneous(p: PolyElement) -> bool:
    if not p:
        return True
    return len({sum(m) for m in p.monoms()}) == 1


def homog_degree(F: PolyElement) -> int:
    """Degree of a nonzero homogeneous form; raises if F is not homogeneous."""
    if not F:
        raise PolyError("zero form has no degree")
    if not is_homogeneous(F):
        raise PolyError("form is not homogeneous")
    return total_degree(F)


def substitute(F: PolyElement, values: Sequence) -> PolyElement:
    """F(values) where values live in any commutative ring (e.g. another PolyRing)."""
    if len(values) != F.ring.ngens:
        raise PolyError("wrong number of values")
    powers: list[dict[int, object]] = [{0: 1} for _ in values]
    total = 0
    for monom, c in F.terms():
        term = c
        for i, e in enumerate(monom):
            if e:
                cache = powers[i]
                if e not in cache:
                    cache[e] = values[i] ** e
                term = term * cache[e]
        total = total + term
    return total


def primitive_part(p: PolyElement) -> PolyElement:
    """Scale so the leading coefficient (in the ring's order) is 1."""
    if not p:
        return p
    return p.quo_ground(p.LC)


def poly_gcd(p: PolyElement, q: PolyElement) -> PolyElement:
    """Monic gcd; gcd(0, 0) = 0."""
    if not p and not q:
        return p.ring.zero
    g = p.gcd(q)
    return primitive_part(g)


def gcd_many(polys: Iterable[PolyElement], R: PolyRing | None = None) -> PolyElement:
    g = None
    for p in polys:
        if R is None:
            R = p.ring
        g = p if g is None else g.gcd(p)
    if g is None:
        return R.zero if R is not None else UNI.zero
    return primitive_part(g) if g else g


def _reorder(p: PolyElement, var: int) -> tuple[PolyElement, PolyRing]:
    names = [s.name for s in p.ring.symbols]
    order = [names[var]] + names[:var] + names[var + 1:]
    R2 = get_ring(tuple(order))
    return p.set_ring(R2), R2


def resultant(p: PolyElement, q: PolyElement, var: int = 0):
    """Sylvester resultant eliminating generator ``var``.

    Univariate input returns a rational; multivariate input returns a
    polynomial in the original ring (free of the eliminated variable).
    The computation is delegated to sympy's subresultant PRS, which returns
    res(q, p) without the (-1)^(mn) factor when p has the smaller degree, so
    the arguments are put in order here.
    """
    if not p or not q:
        raise PolyError("resultant of a zero polynomial")
    x = p.ring.gens[var]
    m, n = p.degree(x), q.degree(x)
    if m < n:
        r = resultant(q, p, var)
        return -r if (m * n) % 2 else r
    if p.ring.ngens == 1:
        r = p.resultant(q)
        return p.ring.domain.convert(r) if not isinstance(r, PolyElement) else r.LC if r else QQ(0)
    if var == 0:
        r = p.resultant(q)
        return r.set_ring(p.ring) if isinstance(r, PolyElement) else p.ring(r)
    p2, R2 = _reorder(p, var)
    q2 = q.set_ring(R2)
    return p2.resultant(q2).set_ring(p.ring)


def derivative(p: PolyElement, var: int = 0) -> PolyElement:
    return p.diff(p.ring.gens[var])


def squarefree_part(p: PolyElement) -> PolyElement:
    if not p:
        return p
    return primitive_part(p.sqf_part())


def sturm_count(p: PolyElement, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in (lo, hi]; None means infinite."""
    if not p:
        raise PolyError("zero polynomial has infinitely many roots")
    if p.degree() <= 0:
        return 0
    sq = squarefree_part(p)
    lo_q = None if lo is None else rat(lo)
    hi_q = None if hi is None else rat(hi)
    if lo_q is not None and hi_q is not None and lo_q >= hi_q:
        return 0
    n = dup_count_real_roots(sq.to_dense(), QQ, inf=lo_q, sup=hi_q)
    if lo_q is not None and sq(lo_q) == 0:
        n -= 1
    return n


@dataclass(frozen=True)
class LinearSolution:
    kind: str  # "unique" | "kernel" | "inconsistent"
    x: tuple | None = None
    kernel: tuple[tuple, ...] = field(default_factory=tuple)


def _dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [[rat(c) for c in r] for r in rows]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix(rows, (len(rows), n), QQ)


def _normalize_vec(v: Sequence) -> tuple:
    for c in v:
        if c:
            return tuple(x / c for x in v)
    return tuple(v)


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of {x : A x = 0}; each vector scaled so its first nonzero entry is 1."""
    n = ncols if ncols is not None else len(rows[0])
    if not rows:
        return [tuple(QQ(int(i == j)) for j in range(n)) for i in range(n)]
    M = _dm(rows, n)
    K = M.nullspace()
    out = []
    for r in K.to_Matrix().tolist() if K.shape[0] else []:
        out.append(_normalize_vec([rat(c) for c in r]))
    return out


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def rowspace_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Nonzero rows of the reduced row echelon form."""
    if not rows:
        return []
    R, pivots = _dm(rows, ncols).rref()
    mat = R.to_Matrix().tolist()
    return [tuple(rat(c) for c in mat[i]) for i in range(len(pivots))]


def solve_exact(A: Sequence[Sequence], b: Sequence) -> LinearSolution:
    """Solve A x = b exactly.

    Returns ``unique`` with x, ``kernel`` with a particular solution x and a
    kernel basis when the system is underdetermined, or ``inconsistent``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m:
        raise PolyError("dimension mismatch")
    aug = [[rat(c) for c in row] + [rat(bi)] for row, bi in zip(A, b)]
    R, pivots = _dm(aug, n + 1).rref()
    mat = [[rat(c) for c in row] for row in R.to_Matrix().tolist()]
    if n in pivots:
        return LinearSolution("inconsistent")
    x = [QQ(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = mat[i][n]
    kernel = nullspace([row[:n] for row in mat], n) if len(pivots) < n else []
    if kernel:
        return LinearSolution("kernel", tuple(x), tuple(kernel))
    return LinearSolution("unique", tuple(x))


def binary_quadratic_disc_coeffs(A: Sequence, B: Sequence, C: Sequence) -> list[Rational]:
    """B^2 - 4AC for binary quadratics given by coefficient triples (x0^2, x0x1, x1^2).

    Returns five coefficients of x0^(4-k) x1^k, k = 0..4.
    """
    def mul(p, q):
        out = [QQ(0)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, c in enumerate(q):
                out[i + j] += a * c
        return out

    B2 = mul(B, B)
    AC = mul(A, C)
    return [B2[k] - 4 * AC[k] for k in range(5)]


def disc_quadratic_in_pair(coeffs: Sequence[Sequence], which: str = "first"):
    """Discriminant B^2-4AC of a (2,2) biform viewed as a quadratic in one pair.

    ``coeffs[i][j]`` multiplies x-monomial i and y-monomial j, both ordered
    (z0^2, z0 z1, z1^2).  ``which="first"`` writes F = A y0^2 + B y0 y1 + C y1^2
    and returns a binary quartic in x; ``"second"`` swaps the roles.  The
    result is the univariate polynomial obtained by setting the leading
    homogeneous variable to 1 (so the coefficient list is ascending in x1/y1).
    """
    c = [[rat(v) for v in row] for row in coeffs]
    if all(v == 0 for row in c for v in row):
        raise PolyError("biform is identically zero")
    if which == "second":
        c = [list(r) for r in zip(*c)]
    elif which != "first":
        raise PolyError("which must be 'first' or 'second'")
    A = [c[i][0] for i in range(3)]
    B = [c[i][1] for i in range(3)]
    C = [c[i][2] for i in range(3)]
    return uni(binary_quadratic_disc_coeffs(A, B, C))


# ---------------------------------------------------------------- JSON codec

def _grlex_key(monom: tuple[int, ...]):
    return (sum(monom), monom)


def poly_to_json(p: PolyElement) -> dict:
    terms = sorted(p.terms(), key=lambda mc: _grlex_key(mc[0]), reverse=True)
    return {
        "vars": [s.name for s in p.ring.symbols],
        "terms": [{"c": rat_str(c), "e": list(m)} for m, c in terms],
    }


def poly_from_json(obj) -> PolyElement:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return UNI(rat(obj))
    if not isinstance(obj, dict) or "vars" not in obj or "terms" not in obj:
        raise PolyError("polynomial JSON needs 'vars' and 'terms'")
    names = tuple(obj["vars"])
    if not names or not all(isinstance(n, str) for n in names):
        raise PolyError("'vars' must be a nonempty list of names")
    R = get_ring(names)
    p = R.zero
    for term in obj["terms"]:
        e = term["e"]
        if len(e) != len(names) or any((not isinstance(k, int)) or k < 0 for k in e):
            raise PolyError(f"bad exponent vector {e!r}")
        mono = R.one
        for g, k in zip(R.gens, e):
            mono *= g**k
        p += rat(term["c"]) * mono
    return p


def poly_str(p: PolyElement) -> str:
    return str(p.as_expr()) if p else "0"
