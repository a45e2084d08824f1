"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every criterion records one PASS/FAIL line, printed in the terminal summary.
"""

import random
import time

import numpy as np
import pytest
import sympy
from sympy import QQ
from sympy.polys.rings import ring

from artifact import exterior as ext
from artifact.catalog import (DUALS, QUARTIC_IDS, binary_real_roots, duality_check, entry_equation,
                              instantiate, list_entries, nonruled_control, verify_entry)
from artifact.plucker_geom import lines_meet
from artifact.rohn22 import (ACCEPT_TOL, CUSP_FORM, act, classify_E, classify_real,
                             discriminants, node_form, rohn_b, rohn_form, symmetrize, to_normal_form)
from artifact.ruled_family import (FamilyError, ParamLineFamily, forms_proportional, implicitize,
                                   lines_through_point, rational_surface_point, verify_equation)
from artifact.scalar_poly import HOM, UNI, rat
from artifact.singular_analysis import (DELTA, SingularityError, classify_tc_case, plane_section,
                                        tc_representation)

t = UNI.gens[0]
t1, t2, t3, t4 = HOM.gens
NONZERO = [x for x in range(-9, 10) if x]


@pytest.fixture
def criterion(request):
    """Run body() under criterion n; record PASS/FAIL with the elapsed time against the budget."""
    def run(n, title, budget, body):
        start = time.perf_counter()
        detail, ok = "", False
        try:
            detail = body() or ""
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            ok = ok and elapsed < budget
            line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {elapsed:7.2f} s / {budget} s  {title}"
            if detail:
                line += f"  [{detail}]"
            request.config.acceptance[n] = line
            print(line)
        assert elapsed < budget, f"criterion {n} took {elapsed:.1f} s, budget {budget} s"
    return run


def random_moebius(rng):
    while True:
        M = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if M[0][0] * M[1][1] - M[0][1] * M[1][0]:
            return M


def random_smooth_rohn(rng):
    while True:
        a = [rng.choice(NONZERO) for _ in range(3)]
        if rohn_b(*a) not in (2, -2):
            return a


def symmetric_ok(res):
    if res.exact:
        return all(res.G[i][j] == res.sign * res.G[j][i] for i in range(3) for j in range(3))
    G = np.array(res.G, dtype=complex)
    return np.abs(G - res.sign * G.T).max() <= ACCEPT_TOL * np.abs(G).max()


# ---------------------------------------------------------------- 1

def test_criterion_01_plucker_fuzz(criterion):
    def body():
        rng = random.Random(1)

        def q():
            return rat(f"{rng.randint(-50, 50)}/{rng.randint(1, 12)}")
        for _ in range(1000):
            w = ext.wedge2([q() for _ in range(4)], [q() for _ in range(4)])
            assert ext.plucker_quadric(w) == 0
        meeting = 0
        for _ in range(1000):
            while True:
                p = [[q() for _ in range(4)] for _ in range(3)]
                if rng.random() < 0.5:
                    a, b = q(), q()
                    p.append([a * x + b * y for x, y in zip(p[0], p[2])])
                else:
                    p.append([q() for _ in range(4)])
                L1, L2 = ext.wedge2(p[0], p[1]), ext.wedge2(p[2], p[3])
                if any(L1) and any(L2):
                    break
            M = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in p])
            expect = M.rank() < 4
            assert lines_meet(L1, L2) == expect
            meeting += expect
        return f"{meeting} of 1000 pairs meet"
    criterion(1, "Pluecker identity and incidence fuzz", 5, body)


# ---------------------------------------------------------------- 2

def test_criterion_02_tangent_developable(criterion):
    def body():
        R, T, S = ring("t,s", QQ)

        def w(x):
            return ext.wedge2((1, x, x**2, x**3), (0, 1, 2 * x, 3 * x**2))
        assert ext.plucker_form(w(T), w(S)) == (T - S) ** 4
        tc = ParamLineFamily((1, t, t**2, t**3), (0, 1, 2 * t, 3 * t**2))
        expected = (t1 * t4 - t2 * t3) ** 2 - 4 * (t1 * t3 - t2**2) * (t2 * t4 - t3**2)
        assert forms_proportional(implicitize(tc, 4), expected)
    criterion(2, "tangent developable pairing and equation", 5, body)


# ---------------------------------------------------------------- 3

def test_criterion_03_table_reproduction(criterion):
    def body():
        ids = list(QUARTIC_IDS) + ["cubic-1", "cubic-2"]
        checks = 0
        for eid in ids:
            rep = verify_entry(eid)
            assert rep.passed, (eid, [c.to_json() for c in rep.checks if not c.passed])
            names = {c.name for c in rep.checks}
            assert "symbol" in names and "genus" in names, eid
            if instantiate(eid).family is not None:
                assert {"degree", "dim P(C)", "tangent spaces", "curve singularities"} <= names, eid
            checks += len(rep.checks)
        return f"{len(ids)} entries, {checks} checks"
    criterion(3, "verify-all on 29 quartic classes and 2 cubics", 300, body)


# ---------------------------------------------------------------- 4

def test_criterion_04_duality(criterion):
    def body():
        for a, b in [("N2a", "N13a"), ("N2b", "N13b"), ("N2c", "N13c"), ("N3a", "N8"), ("N3b", "N9")]:
            assert DUALS[a] == b and DUALS[b] == a
        n = 0
        for eid in QUARTIC_IDS + ("cubic-1", "cubic-2"):
            e = instantiate(eid)
            if e.family is None or e.expected.genus != 0:
                continue
            rep = duality_check(eid)
            assert rep.passed, (eid, [c.to_json() for c in rep.checks if not c.passed])
            n += 1
        return f"{n} genus-0 families"
    criterion(4, "duality pairings", 120, body)


# ---------------------------------------------------------------- 5

def test_criterion_05_plane_section_genus(criterion):
    def body():
        rng = random.Random(2026)
        coeffs = [x for x in range(-50, 51) if x]
        surfaces = redraws = 0
        for eid in list_entries():
            e = instantiate(eid)
            if e.status != "verified":
                continue
            F = entry_equation(e)
            done = 0
            while done < 3:
                plane = [rng.choice(coeffs) for _ in range(4)]
                try:
                    rep = plane_section(F, plane)
                except SingularityError:
                    redraws += 1
                    assert redraws <= 5, "too many special planes"
                    continue
                assert rep.genus == e.expected.genus, (eid, plane, rep)
                assert all(p.label in DELTA for p in rep.points), (eid, plane, rep)
                done += 1
            surfaces += 1
        return f"{surfaces} surfaces x 3 planes, {redraws} redraws"
    criterion(5, "plane section genus via the Pluecker formula", 120, body)


# ---------------------------------------------------------------- 6

def test_criterion_06_n14_subcases(criterion):
    def body():
        seen = set()
        for case in ("td", "generic", "i", "ii", "iii", "iv"):
            e = instantiate(f"N14-{case}")
            H = e.data["H"]
            got = classify_tc_case(H)
            want = "tangent-developable" if case == "td" else case if case == "generic" else f"case-{case}"
            assert got == want
            H2 = tc_representation(entry_equation(e))
            assert H2 is not None and forms_proportional(H2, H)
            seen.add(got)
        assert len(seen) == 6
    criterion(6, "Number 14 subcases", 5, body)


# ---------------------------------------------------------------- 7

def test_criterion_07_symmetrize(criterion):
    def body():
        rng = random.Random(7)
        rational_inputs = rational_misses = 0
        for _ in range(100):
            res = symmetrize(act(rohn_form(*random_smooth_rohn(rng)), random_moebius(rng)))
            assert symmetric_ok(res)
            rational_inputs += 1
            rational_misses += not res.exact
        # nodal standard forms with the + sign and the cusp are symmetric, so a
        # rational symmetrizing map exists for them as for the smooth forms
        for _ in range(20):
            while True:
                a = [rng.choice(NONZERO) for _ in range(3)]
                if classify_E(node_form(*a)).kind == "node":
                    break
            res = symmetrize(act(node_form(*a), random_moebius(rng)))
            assert symmetric_ok(res) and res.solutions == 2
            rational_inputs += 1
            rational_misses += not res.exact
        for _ in range(20):
            res = symmetrize(act(CUSP_FORM, random_moebius(rng)))
            assert symmetric_ok(res) and res.solutions == 1
            rational_inputs += 1
            rational_misses += not res.exact
        # with the - sign the symmetrizing map needs c^2 = a1 a2: numeric in general
        numeric = 0
        for _ in range(20):
            while True:
                a = [rng.choice(NONZERO) for _ in range(3)]
                if classify_E(node_form(*a, sign=-1)).kind == "node":
                    break
            res = symmetrize(act(node_form(*a, sign=-1), random_moebius(rng)))
            assert symmetric_ok(res) and res.solutions == 2
            numeric += not res.exact
        rate = rational_misses / rational_inputs
        assert rate < 0.05
        return (f"rationalization failures {rational_misses}/{rational_inputs}; "
                f"minus-sign nodes numeric {numeric}/20")
    criterion(7, "Rohn symmetrization", 60, body)


# ---------------------------------------------------------------- 8

def rational_ramification_ratio(G):
    """q = r1 / r2 for the positive rational roots r1 > r2 of the first discriminant."""
    D1, _ = discriminants(G)
    roots = sorted(-f.coeff(1) / f.LC for f, _ in D1.factor_list()[1] if f.degree() == 1)
    pos = [r for r in roots if r > 0]
    assert len(roots) == 4 and len(pos) == 2
    return pos[1] / pos[0]


def test_criterion_08_rohn_invariant(criterion):
    def body():
        rng = random.Random(8)
        n = 0
        for d in (2, 3, rat("3/2"), 5, rat("7/3"), rat("5/4"), 4, rat("9/2")):
            F = rohn_form(1, 1, d + 1 / rat(d))   # ramification points +-d^(+-1)
            for k in (1, 2, rat("-1/3"), 5):
                G = act(F, [[1, 0], [0, k]], [[1, 0], [0, k]])
                q = rational_ramification_ratio(G)
                b_ram = -(q + 1 / q)
                nf = to_normal_form(G)
                assert nf.exact and nf.b == b_ram
                n += 1
        for _ in range(200):
            r = classify_real(rohn_form(*random_smooth_rohn(rng)))
            assert r.sign_rule == r.case
        return f"{n} rational-ramification forms, 200 sign-rule forms"
    criterion(8, "Rohn b invariant and sign rule", 30, body)


# ---------------------------------------------------------------- 9

def test_criterion_09_series_xiii(criterion):
    def body():
        for eid, case in (("xiii-1", "a"), ("xiii-2", "b"), ("xiii-3", "c")):
            assert classify_real(instantiate(eid).data["biform"]).case == case
        e = instantiate("xiii-5")
        got = {c.name: c.actual for c in verify_entry("xiii-5").checks}
        assert got["symbol"] == "1^2"
        h = e.data["H_coeffs"]
        a, b = e.params["a"], e.params["b"]
        assert b / a < -1 and e.data["sign"] == "+"
        assert binary_real_roots(h) == 4
        roots = np.roots([float(c) for c in h])
        assert sum(abs(r.imag) < 1e-9 for r in roots) == 4
    criterion(9, "Series XIII real cases and model 5", 5, body)


# ---------------------------------------------------------------- 10

def test_criterion_10_negative_control(criterion):
    def body():
        F = nonruled_control(1)
        for eid in list_entries():
            fam = instantiate(eid).family
            if fam is not None:
                assert not verify_equation(fam, F)
        rng = random.Random(10)
        pts = 0
        while pts < 5:
            p = rational_surface_point(F, rng)
            try:
                res = lines_through_point(F, p)
            except FamilyError:     # landed on the singular locus
                continue
            assert res.count == 0
            pts += 1
        # positive control: the same search finds the ruling on a ruled quartic
        G = entry_equation(instantiate("N10a"))
        assert lines_through_point(G, rational_surface_point(G, rng)).count == 1
        return f"{pts} surface points, no line through any"
    criterion(10, "negative control: non-ruled quartic", 30, body)

