// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "corpus.h"
#include "semfo/error.h"
#include "semfo/formula.h"

namespace semfo {
namespace {

TEST_CASE("parsing builds the expected trees") {
  CHECK(equal(parse("E x. A y. R(x)"), exists("x", forall("y", atom("R", {"x"})))));
  CHECK(equal(parse("~(R(x) & Q(x))"), disj(neg_atom("R", {"x"}), neg_atom("Q", {"x"}))));
  const Formula d = parse("E! z. R(z)");
  CHECK(equal(d, exists_d("z", atom("R", {"z"}))));
  CHECK(flavor(d) == Flavor::kFONeq);
  CHECK(flavor(parse("E x. x = x")) == Flavor::kFO);
  CHECK(flavor(parse("R(x) & Q(x)")) == Flavor::kNone);
  CHECK(flavor(parse("E x. E! y. R(y)")) == Flavor::kMixed);
}

TEST_CASE("precedence and scope") {
  CHECK(equal(parse("R(x) | Q(x) & P(x)"), disj(atom("R", {"x"}), conj(atom("Q", {"x"}), atom("P", {"x"})))));
  CHECK(equal(parse("A! x. R(x) | E! x. R(x)"),
              forall_d("x", disj(atom("R", {"x"}), exists_d("x", atom("R", {"x"}))))));
  CHECK(equal(parse("(A! x. R(x)) | E! x. R(x)"),
              disj(forall_d("x", atom("R", {"x"})), exists_d("x", atom("R", {"x"})))));
  CHECK(equal(parse("~A x. E y. x != y"), exists("x", forall("y", eq("x", "y")))));
  CHECK(equal(parse("~~R(x)"), atom("R", {"x"})));
}

TEST_CASE("render and parse are inverse on the corpora") {
  for (const auto* list : {&corpus::foneq_sentences(), &corpus::fo_sentences(), &corpus::triviality_formulas(),
                           &corpus::strict_rewrite_sentences()}) {
    for (const auto& text : *list) {
      const Formula f = parse(text);
      INFO(text);
      CHECK(equal(parse(render(f)), f));
      CHECK(render(parse(render(f))) == render(f));
    }
  }
  CHECK(render(parse("E   x .R( x )")) == "E x. R(x)");
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("E x. (R(x) & )");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 14);
  }
  try {
    parse("E x.\n  R(x) &");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("R(x) & R(x,y)"), Error);
  CHECK_THROWS_AS(parse_sentence("R(x)"), Error);
  CHECK_THROWS_AS(parse("E . R(x)"), ParseError);
  CHECK_THROWS_AS(parse("R()"), ParseError);
}

TEST_CASE("free variables and vocabulary") {
  const Formula f = parse("E x. (E(x,y) & A y. R(y)) | Q(z)");
  CHECK(free_vars(f) == std::vector<std::string>{"y", "z"});
  CHECK_FALSE(is_sentence(f));
  const Vocabulary v = vocabulary_of(f);
  CHECK(v.arity("E") == 2);
  CHECK(v.arity("R") == 1);
  CHECK(v.symbols().size() == 3);
  CHECK(has_shadowing(parse("E x. E x. R(x)")));
  CHECK_FALSE(has_shadowing(parse("(E x. R(x)) & E x. Q(x)")));
}

TEST_CASE("fragments") {
  CHECK(is_existential(parse("E x. E y. (R(x) | ~E(x,y))")));
  CHECK_FALSE(is_existential(parse("E x. A y. R(x)")));
  CHECK(is_universal_fragment(parse("A x. (R(x) & A y. E(x,y))")));
  CHECK(has_negative_literal(parse("E x. x != x")));
  CHECK(is_quantifier_free(parse("R(x) & true")));
}

TEST_CASE("metrics") {
  CHECK(metrics(parse("E x. R(x)")).size == 2);
  CHECK(metrics(parse("A! y. E! z. (R(z) & Q(y))")).qr_forall == 1);
  const FormulaMetrics m = metrics(parse("E x. A y. A z. (R(x) | E w. Q(w))"));
  CHECK(m.qr == 4);
  CHECK(m.qr_forall == 2);
  CHECK(m.size == 7);
  for (const auto& f : corpus::parse_all(corpus::foneq_sentences())) {
    const FormulaMetrics k = metrics(f);
    CHECK(k.qr_forall <= k.qr);
    CHECK(k.qr <= k.size);
  }
}

TEST_CASE("substitution") {
  const Formula host = parse("E! x. A! y. R(x)");
  CHECK(equal(substitute_subformula(host, {0}, f_true()), exists_d("x", f_true())));
  CHECK(equal(subformula_at(host, {0, 0}), atom("R", {"x"})));
  CHECK(visible_vars(host, {0, 0}) == std::vector<std::string>{"x", "y"});
  CHECK_THROWS(substitute_subformula(host, {1}, f_true()));
  CHECK_THROWS(substitute_subformula(host, {0, 0, 0}, f_true()));
  CHECK_THROWS(substitute_subformula(host, {0}, atom("R", {"z"})));
  CHECK(equal(substitute_subformula(host, {0}, atom("Q", {"x"})), exists_d("x", atom("Q", {"x"}))));
}

TEST_CASE("leftmost innermost search") {
  const Formula f = parse("A! x. (E! y. (A! z. R(z)) | A! w. Q(w))");
  auto p = find_leftmost_innermost(f, [](const Formula& g) { return is_universal(g->kind); });
  REQUIRE(p);
  CHECK(render(subformula_at(f, *p)) == "A! z. R(z)");
  CHECK(find_all(f, [](const Formula& g) { return is_universal(g->kind); }).size() == 3);
}

TEST_CASE("negation and renaming") {
  CHECK(equal(negate(parse("A x. (R(x) | x = x)")), parse("E x. (~R(x) & x != x)")));
  CHECK(equal(negate(parse("A! x. true")), parse("E! x. false")));
  CHECK(equal(rename_free(parse("R(x) & E x. Q(x)"), "x", "y"), parse("R(y) & E x. Q(x)")));
}

}  // namespace
}  // namespace semfo
