import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.exterior import (bivector_wedge_vector, contract, dual_map, is_decomposable, pair_covector,
                               plucker_form, plucker_quadric, wedge2, wedge3)
from artifact.scalar_poly import UNI, rat

t = UNI.gens[0]
E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
BASIS = [tuple(int(i == k) for i in range(6)) for k in range(6)]
e12, e13, e14, e23, e24, e34 = BASIS

q = st.fractions(min_value=-20, max_value=20, max_denominator=7).map(rat)
vec = st.tuples(q, q, q, q)


def det4(*rows):
    return sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in rows]).det()


def add(*ws):
    return tuple(sum(c) for c in zip(*ws))


# --------------------------------------------------------------- wedge2

def test_wedge2_basis():
    assert wedge2(E[0], E[1]) == e12


def test_wedge2_twisted_cubic_tangent():
    w = wedge2((1, t, t**2, t**3), (0, 1, 2 * t, 3 * t**2))
    assert w == (1, 2 * t, 3 * t**2, t**2, 2 * t**3, t**4)


def test_wedge2_polynomial_example():
    assert wedge2((1, t, 0, 0), (0, 0, 1, t**2)) == (0, 1, t**2, t, t**3, 0)


@settings(max_examples=200, deadline=None)
@given(vec, vec)
def test_wedge2_antisymmetric_and_decomposable(u, v):
    w = wedge2(u, v)
    assert w == tuple(-x for x in wedge2(v, u))
    assert plucker_form(w, w) == 0
    if any(w):
        assert is_decomposable(w)


# ---------------------------------------------------------- plucker_form

def test_plucker_form_top_power():
    assert plucker_form(e12, e34) == 1


def test_plucker_form_tangents_of_twisted_cubic():
    R = sympy.polys.rings.ring("t,s", sympy.QQ)[0]
    T, S = R.gens

    def w(x):
        return wedge2((1, x, x**2, x**3), (0, 1, 2 * x, 3 * x**2))
    assert plucker_form(w(T), w(S)) == (T - S) ** 4


@settings(max_examples=200, deadline=None)
@given(vec, vec, vec, vec)
def test_plucker_form_is_determinant(a, b, c, d):
    # independent oracle: (a^b) ^ (c^d) = det(a, b, c, d)
    assert plucker_form(wedge2(a, b), wedge2(c, d)) == det4(a, b, c, d)


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[q] * 6), st.tuples(*[q] * 6), st.tuples(*[q] * 6), q)
def test_plucker_form_symmetric_bilinear(w1, w2, w3, k):
    assert plucker_form(w1, w2) == plucker_form(w2, w1)
    lhs = plucker_form(add(w1, tuple(k * x for x in w3)), w2)
    assert lhs == plucker_form(w1, w2) + k * plucker_form(w3, w2)
    assert plucker_form(w1, w1) == 2 * plucker_quadric(w1)


# ------------------------------------------------------- decomposability

def test_decomposable_examples():
    assert not is_decomposable(add(e12, e34))
    assert is_decomposable(e12)
    w = add(e13, e14, e23, e24)
    assert is_decomposable(w)
    assert w == wedge2((1, 1, 0, 0), (0, 0, 1, 1))


def test_decomposable_rejects_zero():
    with pytest.raises(ValueError):
        is_decomposable((0,) * 6)


# ---------------------------------------------------------------- wedge3

def test_wedge3_conventions():
    assert wedge3(E[1], E[2], E[3]) == (1, 0, 0, 0)
    assert wedge3(E[0], E[1], E[2]) == (0, 0, 0, -1)
    assert wedge3(E[0], E[1], E[0]) == (0, 0, 0, 0)


@settings(max_examples=200, deadline=None)
@given(vec, vec, vec, vec)
def test_wedge3_pairs_to_determinant(u, v, x, y):
    c = wedge3(u, v, x)
    assert pair_covector(c, y) == det4(y, u, v, x)
    for z in (u, v, x):
        assert pair_covector(c, z) == 0
    assert bivector_wedge_vector(wedge2(u, v), x) == c


# -------------------------------------------------------------- dual map

def test_dual_map_table():
    assert dual_map(e12) == e34
    assert dual_map(e13) == tuple(-x for x in e24)
    assert dual_map(e14) == e23
    assert dual_map(e24) == tuple(-x for x in e13)
    for w in BASIS:
        assert dual_map(dual_map(w)) == w


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[q] * 6), st.tuples(*[q] * 6))
def test_dual_map_preserves_pairing(w1, w2):
    assert plucker_form(dual_map(w1), dual_map(w2)) == plucker_form(w1, w2)


@settings(max_examples=100, deadline=None)
@given(vec, vec, vec, vec)
def test_dual_of_a_line_is_the_pencil_of_planes(a, b, c, d):
    # dual_map(a ^ b) is the line of planes through a ^ b: it equals wedge2 of two
    # planes containing the line, up to a scalar.
    w = wedge2(a, b)
    if not any(w):
        return
    p1, p2 = wedge3(a, b, c), wedge3(a, b, d)
    W = wedge2(p1, p2)
    if not any(W):
        return
    f = dual_map(w)
    assert all(f[i] * W[j] == f[j] * W[i] for i in range(6) for j in range(6))


@settings(max_examples=100, deadline=None)
@given(vec, vec, vec)
def test_contract_lands_on_line_and_plane(a, b, c):
    w = wedge2(a, b)
    x = contract(w, c)
    assert pair_covector(c, x) == 0
    assert all(v == 0 for v in wedge3(a, b, x))
