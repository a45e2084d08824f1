from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.scalar_poly import (HOM, UNI, PolyError, disc_quadratic_in_pair, parse_poly, poly_from_json,
                                  poly_gcd, poly_to_json, rat, rat_str, resultant, solve_exact,
                                  sturm_count, uni, uni_coeffs)

t = UNI.gens[0]


def sylvester(p, q):
    """Resultant as the determinant of the Sylvester matrix (independent oracle)."""
    a = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(uni_coeffs(p))]
    b = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(uni_coeffs(q))]
    m, n = len(a) - 1, len(b) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (m - 1 - i))
    return sympy.Matrix(rows).det()


def numeric_real_roots(p, tol=1e-7):
    c = [float(x) for x in reversed(uni_coeffs(p))]
    r = np.roots(c)
    return sorted(x.real for x in r if abs(x.imag) < tol)


small = st.integers(-6, 6)
polys = st.lists(small, min_size=1, max_size=7).map(lambda cs: uni(cs))


# ------------------------------------------------------------- rationals

def test_rational_normalization():
    q = rat("-6/4")
    assert rat_str(q) == "-3/2"
    assert rat_str(rat(0)) == "0/1"
    assert rat_str(rat("10/5")) == "2/1"


def test_rat_rejects_bool():
    with pytest.raises(TypeError):
        rat(True)


# ------------------------------------------------------------------ gcd

@pytest.mark.parametrize("p, q, g", [
    (t**2 - 1, t - 1, t - 1),
    (t**3 + 1, t + 1, t + 1),
    (t**3 + 2, t + 1, UNI.one),
])
def test_gcd_examples(p, q, g):
    assert poly_gcd(p, q) == g


def test_gcd_of_zeros():
    assert poly_gcd(UNI.zero, UNI.zero) == UNI.zero


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_gcd_divides_and_matches_resultant(p, q):
    if not p or not q:
        return
    g = poly_gcd(p, q)
    assert p.rem(g) == 0 and q.rem(g) == 0
    if p.degree() >= 1 and q.degree() >= 1:
        assert (resultant(p, q) == 0) == (g.degree() >= 1)


# ------------------------------------------------------------ resultant

@pytest.mark.parametrize("p, q, r", [
    (t - 1, t + 1, 2),
    (t + 1, t - 1, -2),
    (t + 2, t**3, -8),
    (t**2 + 1, t - 2, 5),
    (t**2 - 1, t - 1, 0),
])
def test_resultant_examples(p, q, r):
    assert resultant(p, q) == r


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_resultant_matches_sylvester_determinant(p, q):
    if not p or not q or p.degree() < 1 or q.degree() < 1:
        return
    assert Fraction(str(resultant(p, q))) == Fraction(str(sylvester(p, q)))


def test_resultant_rejects_zero():
    with pytest.raises(PolyError):
        resultant(UNI.zero, t)


def test_bivariate_resultant_eliminates_variable():
    x, y = HOM.gens[0], HOM.gens[1]
    r = resultant(x**2 + y**2 - 1, x - y, var=0)
    assert r.degree(x) <= 0
    assert r == 2 * y**2 - 1


# ---------------------------------------------------------------- Sturm

@pytest.mark.parametrize("p, n", [
    (t**2 + 1, 0),
    (t**4 - 3 * t**2 + 1, 4),
    (t**4 + 3 * t**2 + 1, 0),
])
def test_sturm_examples(p, n):
    assert sturm_count(p) == n


def test_sturm_half_open_interval():
    p = (t - 1) * (t - 2) * (t - 3)
    assert sturm_count(p, 1, 3) == 2
    assert sturm_count(p, 0, 1) == 1
    assert sturm_count(p**2) == 3


def test_sturm_against_numeric_oracle():
    rng = np.random.default_rng(7)
    done = 0
    while done < 200:
        p = uni([int(c) for c in rng.integers(-9, 10, size=5)])
        if p.degree() != 4 or p.sqf_part().degree() != 4:
            continue
        roots = numeric_real_roots(p)
        # skip near-double real roots where the float oracle is unreliable
        if any(abs(a - b) < 1e-4 for a, b in zip(roots, roots[1:])):
            continue
        assert sturm_count(p) == len(roots)
        done += 1


# --------------------------------------------------------- linear solve

def test_solve_identity():
    s = solve_exact([[1, 0], [0, 1]], [1, 0])
    assert s.kind == "unique" and s.x == (1, 0)


def test_solve_kernel():
    s = solve_exact([[1, 1]], [0])
    assert s.kind == "kernel"
    assert s.kernel == ((1, -1),)


def test_solve_inconsistent():
    assert solve_exact([[0]], [1]).kind == "inconsistent"


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve_back_substitution(m, n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small) for _ in range(m)]
    s = solve_exact(A, b)
    if s.kind == "inconsistent":
        M = sympy.Matrix(A)
        assert M.rank() < M.row_join(sympy.Matrix(b)).rank()
        return
    for row, bi in zip(A, b):
        assert sum(rat(a) * x for a, x in zip(row, s.x)) == bi
    for k in s.kernel:
        for row in A:
            assert sum(rat(a) * x for a, x in zip(row, k)) == 0


# ---------------------------------------------------------- discriminant

def test_disc_of_rohn_form():
    a1, a2, a3 = rat(1), rat(2), rat(5)
    c = [[a1, 0, a2], [0, 2 * a3, 0], [a2, 0, a1]]
    b = (a1**2 + a2**2 - a3**2) / (a1 * a2)
    D = disc_quadratic_in_pair(c)
    assert D == -4 * a1 * a2 * (t**4 + b * t**2 + 1)


def test_disc_examples():
    assert disc_quadratic_in_pair([[1, 0, 0], [0, 0, 0], [0, 0, 1]]) == -4 * t**2
    assert disc_quadratic_in_pair([[0, 0, 0], [0, 1, 0], [0, 0, 0]]) == t**2


def test_disc_rejects_zero():
    with pytest.raises(PolyError):
        disc_quadratic_in_pair([[0] * 3] * 3)


# ------------------------------------------------------------------ JSON

def test_poly_json_round_trip_and_order():
    F = parse_poly("-4*t1*t3*t4**2 + t2**4 + 3", HOM)
    obj = poly_to_json(F)
    assert obj["vars"] == ["t1", "t2", "t3", "t4"]
    assert obj["terms"][-1] == {"c": "3/1", "e": [0, 0, 0, 0]}
    assert poly_from_json(obj) == F


def test_poly_json_rejects_bad_exponent():
    with pytest.raises(PolyError):
        poly_from_json({"vars": ["t"], "terms": [{"c": "1/1", "e": [1, 2]}]})
