"""The subset oracle computes everything from first principles, so these
tests lean on hand-worked examples plus exhaustive small censuses."""

import json
from itertools import chain, combinations

import pytest

from phasegame.data import data_path
from phasegame.errors import (ForeignElement, NotAssociative, NotCommutative,
                              SizeExceeded)
from phasegame.subset_oracle import (SubsetPhase, all_commutative_monoids,
                                     cyclic_monoid, load_monoid,
                                     monoid_from_doc, oracle_report)


def all_poles(elements):
    return [frozenset(c) for r in range(len(elements) + 1)
            for c in combinations(elements, r)]


def test_z2_hand_computed_duals():
    els, mult, unit = cyclic_monoid(2)
    sp = SubsetPhase(els, mult, unit, frozenset({"0"}))
    assert sp.dual(frozenset({"0"})) == frozenset({"0"})
    assert sp.dual(frozenset({"1"})) == frozenset({"1"})
    assert sp.dual(frozenset()) == frozenset({"0", "1"})
    assert sp.dual(frozenset({"0", "1"})) == frozenset()
    # every subset of Z/2 with pole {0} is a fact
    assert len(sp.facts()) == 4
    assert sp.tensor(frozenset({"1"}), frozenset({"1"})) == frozenset({"0"})
    assert sp.impl(frozenset({"1"}), frozenset({"0"})) == frozenset({"1"})
    assert sp.one() == frozenset({"0"})


def test_z2_all_poles_pass():
    els, mult, unit = cyclic_monoid(2)
    for pole in all_poles(els):
        report = oracle_report(els, mult, unit, pole)
        assert report["ok"], (pole, report)
        assert report["subsets"] == 4


def test_z3_all_poles_pass():
    els, mult, unit = cyclic_monoid(3)
    for pole in all_poles(els):
        report = oracle_report(els, mult, unit, pole)
        assert report["ok"], (pole, report)
        assert report["subsets"] == 8


def test_cyclic_four_passes():
    els, mult, unit = cyclic_monoid(4)
    report = oracle_report(els, mult, unit, frozenset({"0"}))
    assert report["ok"]
    assert report["subsets"] == 16
    assert all(law["status"] == "pass" for law in report["laws"])


def test_report_shape():
    els, mult, unit = cyclic_monoid(2)
    report = oracle_report(els, mult, unit, frozenset({"0"}))
    names = [law["law"] for law in report["laws"]]
    assert "triple_dual" in names
    assert "implication_is_residual" in names
    assert "tensor_associative_on_facts" in names
    for law in report["laws"]:
        assert law["status"] in ("pass", "fail")
        assert law["witnesses"] == []


def test_census_sizes():
    assert len(all_commutative_monoids(1)) == 1
    assert len(all_commutative_monoids(2)) == 2
    assert len(all_commutative_monoids(3)) == 9


def test_census_all_poles_pass():
    for n in (1, 2, 3):
        for els, mult, unit in all_commutative_monoids(n):
            for pole in all_poles(els):
                report = oracle_report(els, mult, unit, pole)
                assert report["ok"], (n, mult, pole)


def test_census_cap():
    with pytest.raises(SizeExceeded):
        all_commutative_monoids(4)


def test_monoid_size_cap():
    els = ["m%d" % i for i in range(7)]
    mult = {(x, y): "m0" for x in els for y in els}
    with pytest.raises(SizeExceeded):
        SubsetPhase(els, mult, "m0", frozenset())


def test_rejects_non_associative():
    doc = {"elements": ["u", "a", "b"], "unit": "u",
           "mult": [["u", "u", "u"], ["u", "a", "a"], ["u", "b", "b"],
                    ["a", "a", "b"], ["a", "b", "a"], ["b", "b", "u"]]}
    els, mult, unit = monoid_from_doc(doc)
    with pytest.raises(NotAssociative):
        SubsetPhase(els, mult, unit, frozenset())


def test_rejects_non_commutative():
    mult = {("u", "u"): "u", ("u", "a"): "a",
            ("a", "u"): "u", ("a", "a"): "a"}
    with pytest.raises(NotCommutative):
        SubsetPhase(["u", "a"], mult, "u", frozenset())


def test_rejects_non_neutral_unit():
    doc = {"elements": ["u", "a"], "unit": "u",
           "mult": [["u", "u", "u"], ["u", "a", "u"], ["a", "a", "a"]]}
    els, mult, unit = monoid_from_doc(doc)
    with pytest.raises(NotAssociative, match="unit"):
        SubsetPhase(els, mult, unit, frozenset())


def test_rejects_foreign_product():
    mult = {("u", "u"): "z"}
    with pytest.raises(ForeignElement):
        SubsetPhase(["u"], mult, "u", frozenset())


def test_rejects_foreign_pole():
    els, mult, unit = cyclic_monoid(2)
    with pytest.raises(ForeignElement):
        SubsetPhase(els, mult, unit, frozenset({"7"}))


def test_shipped_monoid_files():
    for name in ("trivial_monoid.json", "z2_monoid.json", "z3_monoid.json"):
        doc = json.loads(open(data_path(name)).read())
        els, mult, unit = load_monoid(data_path(name))
        report = oracle_report(els, mult, unit,
                               frozenset(doc["falsum_subset"]))
        assert report["ok"], name


def test_doc_symmetrizes_table():
    els, mult, unit = load_monoid(data_path("z3_monoid.json"))
    assert mult[("2", "1")] == mult[("1", "2")] == "0"
