import logging
import random

import numpy as np
import pytest

from artifact.catalog import instantiate
from artifact.rohn22 import (ACCEPT_TOL, CUSP_FORM, BiForm22, RohnError, act, b_from_ramification,
                             classify_E, classify_real, discriminants, node_form, pinch_points,
                             rohn_b, rohn_form, singular_normal_form, symmetrize, to_normal_form)
from artifact.scalar_poly import rat

log = logging.getLogger(__name__)
NONZERO = [x for x in range(-9, 10) if x]


def random_smooth_rohn(rng):
    while True:
        a = [rng.choice(NONZERO) for _ in range(3)]
        if rohn_b(*a) not in (2, -2):
            return a


def random_moebius(rng):
    while True:
        M = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if M[0][0] * M[1][1] - M[0][1] * M[1][0]:
            return M


def check_symmetric(res):
    assert res.sign in (1, -1)
    G = res.G
    if res.exact:
        assert all(G[i][j] == res.sign * G[j][i] for i in range(3) for j in range(3))
    else:
        G = np.array(G, dtype=complex)
        assert np.abs(G - res.sign * G.T).max() <= ACCEPT_TOL * np.abs(G).max()


# ------------------------------------------------------------- biforms

def test_biform_round_trips():
    F = rohn_form(1, 2, 5)
    assert BiForm22.from_poly(F.to_poly()) == F
    assert BiForm22.from_json(F.to_json()) == F
    assert F.transpose() == F and F.is_symmetric()


def test_biform_rejects_zero_and_bad_shape():
    with pytest.raises(RohnError):
        BiForm22(((0, 0, 0),) * 3)
    with pytest.raises(RohnError):
        BiForm22(((1, 0), (0, 1)))


def test_discriminant_of_rohn_form():
    # D1 = -4 a1 a2 (l^4 + b l^2 + 1), read as a quartic in lambda
    D1, D2 = discriminants(rohn_form(1, 2, 5))
    t = D1.ring.gens[0]
    assert D1 == -8 * (t**4 - 10 * t**2 + 1)
    assert D2 == D1


# ------------------------------------------------------- singularities

def test_classify_E_examples():
    assert rohn_b(1, 2, 5) == -10
    assert classify_E(rohn_form(1, 2, 5)).kind == "smooth"
    assert classify_E(node_form(1, 1, -1, sign=-1)).kind == "node"
    assert classify_E(node_form(1, 1, 2)).kind == "node"
    assert classify_E(CUSP_FORM).kind == "cusp"
    assert classify_E(BiForm22(((0, 0, 1), (0, -2, 0), (1, 0, 0)))).kind == "reducible-or-nonreduced"


def test_printed_node_sign_gives_a_cusp():
    # (1, 1, -1) with the + sign has tangent cone (l - m)^2 at the origin
    assert classify_E(node_form(1, 1, -1)).kind == "cusp"


def test_rohn_b_degenerate_values_are_singular():
    # b = +-2 exactly when the Rohn curve acquires singular points
    assert rohn_b(1, 1, 0) == 2
    assert classify_E(rohn_form(1, 1, 0)).kind != "smooth"
    with pytest.raises(RohnError):
        rohn_b(0, 1, 1)


def test_classify_E_invariant_under_moebius():
    rng = random.Random(5)
    for F in (rohn_form(1, 2, 5), node_form(1, 1, 2), CUSP_FORM):
        kind = classify_E(F).kind
        for _ in range(5):
            G = act(F, random_moebius(rng), random_moebius(rng))
            assert classify_E(G).kind == kind


# ---------------------------------------------------------- symmetrize

def test_symmetrize_already_symmetric():
    res = symmetrize(rohn_form(1, 2, 5))
    assert res.exact and res.sign == 1
    M = res.M
    assert M[0][1] == 0 and M[1][0] == 0 and M[0][0] == M[1][1]


def test_symmetrize_recovers_precomposed_form():
    F = act(rohn_form(1, 2, 5), [[1, 1], [0, 1]])
    res = symmetrize(F)
    check_symmetric(res)
    assert res.exact and res.solutions == 4


def test_symmetrize_node_has_two_solutions():
    for F in (node_form(1, 1, 2), node_form(1, 1, -1, sign=-1)):
        res = symmetrize(act(F, [[2, 1], [1, 1]]))
        check_symmetric(res)
        assert res.solutions == 2


def test_symmetrize_cusp_is_unique():
    res = symmetrize(act(CUSP_FORM, [[1, 1], [0, 1]]))
    check_symmetric(res)
    assert res.solutions == 1


def test_symmetrize_rejects_reducible():
    with pytest.raises(RohnError):
        symmetrize(BiForm22(((0, 0, 1), (0, -2, 0), (1, 0, 0))))


def test_symmetrize_random_smooth_forms():
    rng = random.Random(2024)
    counts = []
    for _ in range(100):
        F = act(rohn_form(*random_smooth_rohn(rng)), random_moebius(rng))
        res = symmetrize(F)
        check_symmetric(res)
        assert res.solutions >= 1
        counts.append(res.solutions)
    special = [c for c in counts if c != 4]
    if special:
        log.info("symmetrizing maps differing from 4: %s", special)
    assert counts.count(4) >= 90


# -------------------------------------------------------- normal forms

def test_to_normal_form_fixed_point():
    nf = to_normal_form(rohn_form(1, 2, 5))
    assert (nf.a1, nf.a2, nf.a3) == (1, 2, 5) and nf.b == -10 and nf.exact


def test_to_normal_form_scaled():
    F = rohn_form(7, 14, 35)
    nf = to_normal_form(F)
    assert nf.b == -10
    assert nf.a2 / nf.a1 == 2 and nf.a3 / nf.a1 == 5


def test_b_from_ramification():
    assert b_from_ramification(rat("1/2")) == b_from_ramification(2)
    assert b_from_ramification(1) == -2


def test_to_normal_form_from_ramification_points():
    # a1 = a2 = 1, a3 = 5/2 puts the ramification points at +-2, +-1/2
    F = rohn_form(1, 1, rat("5/2"))
    lam = discriminants(F)[0].ring.gens[0]
    assert discriminants(F)[0] == -4 * (lam - 2) * (lam + 2) * (2 * lam - 1) * (2 * lam + 1) / 4
    # moving the points to +-2/3, +-1/6 forces the numeric pairing route
    N = [[1, 0], [0, 3]]
    nf = to_normal_form(act(F, N, N))
    assert abs(float(nf.b) + 17 / 4) <= 1e-9
    assert b_from_ramification(2) == rat("-17/4")


def test_to_normal_form_requires_symmetric_smooth():
    with pytest.raises(RohnError):
        to_normal_form(act(rohn_form(1, 2, 5), [[1, 1], [0, 1]]))
    with pytest.raises(RohnError):
        to_normal_form(node_form(1, 1, 2))


def test_b_invariant_under_diagonal_scaling():
    rng = random.Random(17)
    for _ in range(50):
        a = random_smooth_rohn(rng)
        k = rng.choice([2, 3, -2, rat("1/3")])
        N = [[1, 0], [0, k]]
        G = act(rohn_form(*a), N, N)
        nf = to_normal_form(G)
        assert abs(float(nf.b) - float(rohn_b(*a))) <= 1e-9 * max(1, abs(float(rohn_b(*a))))
        nf_t = to_normal_form(G.transpose())
        assert abs(float(nf_t.b) - float(nf.b)) <= 1e-9 * max(1, abs(float(nf.b)))


# ----------------------------------------------------------- real data

def test_pinch_points_node_cases():
    assert pinch_points(node_form(1, 1, 2)) == (2, 2)            # four real in total
    assert pinch_points(node_form(1, 1, rat("1/2"))) == (0, 0)


def test_classify_real_examples():
    r = classify_real(rohn_form(1, 1, 5))
    assert (r.case, r.n1, r.n2, r.sign_rule) == ("a", 4, 4, "a")
    assert classify_real(rohn_form(1, 2, 1, "connected")).case == "connected"


@pytest.mark.parametrize("eid, case", [("xiii-1", "a"), ("xiii-2", "b"), ("xiii-3", "c")])
def test_series_xiii_real_cases(eid, case):
    assert classify_real(instantiate(eid).data["biform"]).case == case


def test_sign_rule_against_sturm():
    rng = random.Random(99)
    checked = 0
    while checked < 200:
        a = random_smooth_rohn(rng)
        r = classify_real(rohn_form(*a))
        assert r.case in ("a", "b")
        assert r.sign_rule == r.case
        checked += 1


def test_real_root_count_oracle():
    # cross-check the exact count on x^4 + b x^2 + 1 with numpy roots
    rng = random.Random(4)
    for _ in range(50):
        a = random_smooth_rohn(rng)
        b = rohn_b(*a)
        n1, _ = pinch_points(rohn_form(*a))
        roots = np.roots([1, 0, float(b), 0, 1])
        assert n1 == sum(abs(r.imag) < 1e-9 for r in roots)


# -------------------------------------------------- singular normal forms

def test_singular_normal_form_cusp():
    m = singular_normal_form(act(CUSP_FORM, [[1, 1], [0, 1]]))
    assert m.family == "l^2 m^2 + (l - m)^2 - 2 l m (l + m)" and m.params == {}


def test_singular_normal_form_node():
    m = singular_normal_form(act(node_form(1, 1, 2), [[2, 1], [1, 1]]))
    assert m.family.startswith("a1 l^2 m^2")
    assert m.params["a3^2/a2^2"] == 4 and m.params["sign"] == "+"


def test_singular_normal_form_reducible():
    m = singular_normal_form(BiForm22(((0, 0, 1), (0, -2, 0), (1, 0, 0))))
    assert m.family == "(l - m)^2"


def test_singular_normal_form_rejects_smooth():
    with pytest.raises(RohnError):
        singular_normal_form(rohn_form(1, 2, 5))
