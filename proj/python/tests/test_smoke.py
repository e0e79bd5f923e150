# Copyright 2026 The semfo Authors.
# SPDX-License-Identifier: Apache-2.0

import pathlib

import pytest

import semfo

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_semiring_arithmetic():
    v = semfo.Semiring("viterbi")
    assert v.mul("1/2", "1/2") == "1/4"
    assert v.add("1/2", "1/4") == "1/2"
    assert semfo.Semiring("lukasiewicz").mul("1/2", "1/3") == "0"
    assert not semfo.Semiring("nat").leq("3", "2")


def test_formulas():
    assert semfo.render("E   x .R( x )") == "E x. R(x)"
    assert semfo.free_vars("E y. E(x,y)") == ["x"]
    assert semfo.metrics("E x. R(x)")["size"] == 2
    assert semfo.fo_to_foneq("E x. R(x)") == "E! x. R(x)"
    assert semfo.foneq_to_fo("E! y. E(x,y)") == "E y. y != x & E(x,y)"
    with pytest.raises(semfo.ParseError):
        semfo.render("E x. (R(x) & )")


def test_eval_on_files():
    pi = semfo.Interpretation.load(str(DATA / "viterbi_pi2.txt"))
    assert pi.size == 2
    assert semfo.eval(pi, "A x. R(x)") == "1/4"
    assert semfo.eval(pi.restrict(["a"]), "A x. R(x)") == "1/2"
    assert semfo.eval(pi, "R(x)", {"x": "b"}) == "1/2"
    with pytest.raises(semfo.ParseError):
        semfo.Interpretation.load(str(DATA / "malformed.txt"))


def test_built_interpretation():
    pi = semfo.Interpretation("nat", 2, {"R": 1})
    pi.set("R", ["1"], "2")
    pi.set("R", ["2"], "3")
    assert semfo.eval(pi, "E x. R(x)") == "5"
    assert semfo.eval(pi, "A x. R(x)") == "6"
    assert pi.value("R", ["1"], negated=True) == "0"
    with pytest.raises(semfo.Error):
        pi.set("Q", ["1"], "1")


def test_strategies_and_provenance():
    assert semfo.strategy_count("E x. A y. R(x)", 2) == 2
    pi = semfo.Interpretation("viterbi", 2, {"R": 1})
    pi.set("R", ["1"], "1/2")
    pi.set("R", ["2"], "1/2")
    assert semfo.optimal(pi, "E x. A y. R(x)") == ("1/4", 2)
    assert semfo.canonical_polynomial("E x. R(x)", 2, nat=True) == "R(1) + R(2)"


def test_preservation():
    r = semfo.check_preservation("A x. R(x)", "viterbi")
    assert r["refuted"]
    assert semfo.Semiring("viterbi").leq(r["value_b"], r["value_a"])
    assert not semfo.check_preservation("E x. R(x)", "viterbi")["refuted"]
    assert semfo.eventual_triviality("E! x. E! y. true") == "trivial"
    assert not semfo.is_trivial_at("E! x. E! y. true", 1)


def test_lattice_rewrite():
    r = semfo.rewrite("A y. ((E z. R(z)) | E z. (R(z) & Q(y)))", mode="lattice")
    assert r["ok"]
    assert r["output"] == "E z. R(z)"
