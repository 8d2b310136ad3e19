from fractions import Fraction

import pytest

import roughren


def test_enumeration_and_encoding():
    trees = roughren.enumerate_trees(2, 1)
    assert len(trees) == 6
    assert roughren.canonical("1[1[] 0[]]") == "1[0[] 1[]]"


def test_coproduct_and_antipode():
    cp = roughren.coproduct("1[1[]]")
    assert cp == {("", "1[1[]]"): 1, ("1[]", "1[]"): 1, ("1[1[]]", ""): 1}
    assert roughren.antipode("1[0[]]") == {"0[] 1[]": 1, "1[0[]]": -1}
    assert len(roughren.extraction("1[0[]]")) == 5


def test_words():
    assert roughren.psi("1[1[]]") == {("1[1[]]",): 1, ("1[]", "1[]"): 1}
    assert sum(roughren.shuffle("1[]", "0[] 0[]").values()) == 3


def test_renorm_checks():
    reports = roughren.renorm_check({"1[1[]]": Fraction(1, 2), "1[]": 3})
    assert all(r["passed"] for r in reports)


def test_lift_exact_and_float():
    out = roughren.lift(depth=3)
    assert out["path"]["mode"] == "exact"
    assert all(r["passed"] for r in out["reports"])
    walk = roughren.lift(driver="walk", exact=False, depth=3)
    assert all(r["max_defect"] < 1e-10 for r in walk["reports"])


def test_g_table():
    out = roughren.g_table({"1[]": 2}, depth=2)
    assert out["report"]["passed"]
    assert out["csv"].startswith("formula,tree,t,g_value\n")


def test_verify_and_mutation():
    (c2,) = roughren.verify([2])
    assert c2["passed"]
    (m2,) = roughren.verify([2], mutate=2, depth=3)
    assert not m2["passed"]
    assert m2["reports"][0]["counterexample"]


def test_bad_config():
    with pytest.raises(ValueError):
        roughren.lift(n=3, gamma=0.24)
