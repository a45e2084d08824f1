import dataclasses
import json
from importlib import resources

import pytest

from artifact.catalog import (DEVELOPABLE, DUALS, EXTRA_IDS, QUARTIC_IDS, CatalogError, ConstraintError,
                              catalog_json, duality_check, entry_equation, instantiate, list_entries,
                              nonruled_control, verify_entry)
from artifact.ruled_family import forms_proportional, verify_equation
from artifact.scalar_poly import HOM, rat

t1, t2, t3, t4 = HOM.gens
GENUS0 = [e for e in list_entries() if instantiate(e).family is not None
          and instantiate(e).expected.genus == 0]


def test_entry_counts():
    assert len(QUARTIC_IDS) == 29
    assert len([e for e in QUARTIC_IDS if e.startswith("N14-")]) == 6
    assert [e for e in EXTRA_IDS if e.startswith("cubic")] == ["cubic-1", "cubic-2"]
    assert len(set(list_entries())) == len(list_entries())


def test_instantiate_examples():
    e = instantiate("N10a", {"c": 1})
    assert forms_proportional(e.equation, t3 * t4 * (t3 - t4) ** 2 - (t1 * t4 - t2 * t3) ** 2)
    assert instantiate("steiner").equation == (t2 * t3 + t1 * t3 + t1 * t2) ** 2 + t4 * t1 * t2 * t3


def test_instantiate_parameter_errors():
    with pytest.raises(ConstraintError):
        instantiate("N12", {"mu": 0})
    with pytest.raises(ConstraintError):
        instantiate("N12", {"mu": 1})
    with pytest.raises(CatalogError):
        instantiate("N99")
    with pytest.raises(CatalogError):
        instantiate("N12", {"nu": 2})


def test_parameters_carry_constraints():
    (p,) = instantiate("N12").parameters
    assert p.name == "mu" and p.value == 2 and p.constraint


@pytest.mark.parametrize("eid", list_entries())
def test_verify_entry(eid):
    rep = verify_entry(eid)
    assert rep.passed, [c.to_json() for c in rep.checks if not c.passed]


def test_verify_entry_n1a_checks():
    rep = verify_entry("N1a")
    got = {c.name: c.actual for c in rep.checks}
    assert got["degree"] == 4 and got["dim P(C)"] == 3 and got["tangent spaces"] == 2
    assert got["bundle"] == (-1, -3) and got["symbol"] == "1^3" and got["genus"] == 0


def test_verify_entry_genus_one():
    got = {c.name: c.actual for c in verify_entry("N16").checks}
    assert got["symbol"] == "1^2,1^2" and got["genus"] == 1 and got["tangent spaces"] == 2


def test_verify_entry_detects_wrong_expectation():
    e = instantiate("N1a")
    bad = dataclasses.replace(e, expected=dataclasses.replace(e.expected, symbol="1^2,2^2"))
    rep = verify_entry(bad)
    assert not rep.passed
    assert [c.name for c in rep.checks if not c.passed] == ["symbol"]


@pytest.mark.parametrize("eid, params", [("N1c", {"mu": 3}), ("N12", {"mu": -1}),
                                         ("N6", {"lambda": 3}), ("N4", {"alpha": 2, "beta": 1})])
def test_verify_entry_other_parameters(eid, params):
    assert verify_entry(eid, params).passed


def test_families_reproduce_equations():
    for eid in list_entries():
        e = instantiate(eid)
        if e.family is not None and e.equation is not None:
            assert verify_equation(e.family, e.equation), eid


@pytest.mark.parametrize("eid", GENUS0)
def test_duality(eid):
    rep = duality_check(eid)
    assert rep.passed, [c.to_json() for c in rep.checks if not c.passed]
    if eid in DEVELOPABLE:
        assert [c.name for c in rep.checks] == ["reciprocal degenerates to a curve (developable surface)"]


def test_duality_pairings_are_symmetric():
    for a, b in DUALS.items():
        if b in DUALS and a.startswith("N"):
            assert DUALS[b] == a


def test_duality_needs_genus_zero():
    with pytest.raises(CatalogError):
        duality_check("N16")


def test_shipped_catalog_json_in_sync():
    shipped = json.loads(resources.files("artifact").joinpath("catalog.json").read_text("utf-8"))
    assert shipped == json.loads(json.dumps(catalog_json()))


def test_catalog_json_equations_parse():
    from artifact.scalar_poly import parse_poly
    for obj in catalog_json()["entries"]:
        eq = obj["equation"]
        if eq is None:
            assert obj["status"] == "recorded"
            continue
        assert forms_proportional(parse_poly(eq), entry_equation(instantiate(obj["id"])))


def test_nonruled_control_is_not_reproduced():
    F = nonruled_control(1)
    assert F == t4 * t1**2 * (t1 + 3 * t3) + t1**4 + t2**4
    assert nonruled_control(rat(2)) != F
    for eid in list_entries():
        fam = instantiate(eid).family
        if fam is not None:
            assert not verify_equation(fam, F)
