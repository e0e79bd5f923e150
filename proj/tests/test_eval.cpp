// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "corpus.h"
#include "semfo/error.h"
#include "semfo/eval.h"
#include "semfo/formula.h"
#include "semfo/interpretation.h"

namespace semfo {
namespace {

// Direct recursion over the syntax tree.
Value naive(const Interpretation& pi, const Formula& f, std::map<std::string, Elem> a) {
  const Semiring& s = pi.semiring();
  auto args = [&] {
    std::vector<Elem> out;
    for (const auto& v : f->args) out.push_back(a.at(v));
    return out;
  };
  switch (f->kind) {
    case NodeKind::kTrue:
      return s.one();
    case NodeKind::kFalse:
      return s.zero();
    case NodeKind::kAtom:
      return pi.value(f->rel, false, args());
    case NodeKind::kNegAtom:
      return pi.value(f->rel, true, args());
    case NodeKind::kEq:
      return a.at(f->args[0]) == a.at(f->args[1]) ? s.one() : s.zero();
    case NodeKind::kNeq:
      return a.at(f->args[0]) != a.at(f->args[1]) ? s.one() : s.zero();
    case NodeKind::kAnd:
      return s.mul(naive(pi, f->left, a), naive(pi, f->right, a));
    case NodeKind::kOr:
      return s.add(naive(pi, f->left, a), naive(pi, f->right, a));
    default:
      break;
  }
  const bool distinct = is_distinct_quantifier(f->kind);
  std::vector<Value> parts;
  for (Elem e = 0; e < pi.size(); ++e) {
    bool taken = false;
    for (const auto& [v, x] : a) taken = taken || (v != f->var && x == e);
    if (distinct && taken) continue;
    auto b = a;
    b[f->var] = e;
    parts.push_back(naive(pi, f->left, b));
  }
  return is_universal(f->kind) ? s.product(parts) : s.sum(parts);
}

Interpretation unary(const Semiring& s, const std::vector<Value>& r) {
  Vocabulary v;
  v.add("R", 1);
  Interpretation pi = Interpretation::over(s, r.size(), v);
  for (Elem e = 0; e < r.size(); ++e) pi.set_atom("R", std::vector<Elem>{e}, r[e]);
  return pi;
}

TEST_CASE("universal products in the viterbi semiring") {
  const Interpretation pi = unary(Semiring::viterbi(), {rational(1, 2), rational(1, 4)});
  CHECK(eval(pi, parse("A x. R(x)")) == rational(1, 8));
  CHECK(eval(restrict(pi, {0}), parse("A x. R(x)")) == rational(1, 2));
  CHECK(eval(pi, parse("E x. R(x)")) == rational(1, 2));
  CHECK(eval(pi, parse("A x. (R(x) | ~R(x))")) == rational(1, 8));
  CHECK(eval(pi, parse("E x. ~R(x)")) == rational(0));
}

TEST_CASE("equality") {
  const Interpretation pi = unary(Semiring::viterbi(), {rational(1, 2), rational(1, 4)});
  CHECK(eval(pi, parse("x = y"), {{"x", 0}, {"y", 0}}) == rational(1));
  CHECK(eval(pi, parse("x = y"), {{"x", 0}, {"y", 1}}) == rational(0));
  CHECK(eval(pi, parse("E x. E y. (x = y & R(x))")) == rational(1, 2));
  CHECK(eval(pi, parse("A x. A y. (x = y | R(x))")) == rational(1, 8));
}

TEST_CASE("sums and products in the natural numbers") {
  const Interpretation pi = unary(Semiring::nat(), {natural(2), natural(3)});
  CHECK(eval(pi, parse("E x. R(x)")) == natural(5));
  CHECK(eval(pi, parse("A x. R(x)")) == natural(6));
  CHECK(eval(pi, parse("E x. true")) == natural(2));
  CHECK(eval(pi, parse("E! x. E! y. true")) == natural(2));
  CHECK(eval(unary(Semiring::nat(), {natural(1), natural(1), natural(1)}), parse("E! x. E! y. true")) == natural(6));
  CHECK(eval(pi, parse("E! x. E! y. (R(x) & R(y))")) == natural(12));
}

TEST_CASE("distinct quantifiers skip the elements in scope") {
  const Interpretation pi = unary(Semiring::nat(), {natural(2), natural(3)});
  CHECK(eval(pi, parse("R(x) & E! y. R(y)"), {{"x", 0}}) == natural(6));
  CHECK(eval(pi, parse("x = x & A! y. R(y)"), {{"x", 1}}) == natural(2));
  CHECK(eval(pi, parse("E! y. R(y)"), {{"x", 0}}) == natural(5));
  CHECK(eval(restrict(pi, {0}), parse("A! x. A! y. false")) == natural(1));
  CHECK(eval(restrict(pi, {0}), parse("E! x. E! y. true")) == natural(0));
}

TEST_CASE("sets of sentences") {
  const Interpretation pi = unary(Semiring::viterbi(), {rational(1, 2), rational(1, 4)});
  CHECK(eval_set(pi, {}) == rational(1));
  CHECK(eval_set(pi, {parse("E x. R(x)"), parse("A x. R(x)")}) == rational(1, 16));
}

TEST_CASE("unbound variables are rejected") {
  const Interpretation pi = unary(Semiring::viterbi(), {rational(1, 2)});
  CHECK_THROWS(eval(pi, parse("R(x)")));
  CHECK_THROWS(eval(pi, parse("R(x)"), {{"x", 4}}));
  CHECK_THROWS(eval(pi, parse("Q(x)"), {{"x", 0}}));
}

TEST_CASE("compiled evaluation agrees with direct recursion") {
  std::mt19937_64 rng(11);
  const auto sentences = corpus::parse_all(corpus::foneq_sentences());
  const auto fo = corpus::parse_all(corpus::fo_sentences());
  for (const auto& s : {Semiring::viterbi(), Semiring::nat(), Semiring::lukasiewicz(), Semiring::tropical()}) {
    for (const auto* list : {&sentences, &fo}) {
      for (const auto& f : *list) {
        INFO(s.id() << " " << render(f));
        const InterpretationSpace space(s, vocabulary_of(f), 3, s.default_grid());
        for (int i = 0; i < 5; ++i) {
          const Interpretation pi = space.random(rng);
          CHECK(eval(pi, f) == naive(pi, f, {}));
        }
      }
    }
  }
}

TEST_CASE("evaluators with an explicit variable order") {
  const Interpretation pi = unary(Semiring::nat(), {natural(2), natural(3)});
  const Evaluator ev(parse("R(x) & E! z. R(z)"), {"x"});
  CHECK(ev(pi, std::vector<Elem>{0}) == natural(6));
  CHECK(ev(pi, std::vector<Elem>{1}) == natural(6));
  const Evaluator two(parse("R(y) & x = y"), {"y", "x"});
  CHECK(two(pi, std::vector<Elem>{1, 1}) == natural(3));
  CHECK(two(pi, std::vector<Elem>{1, 0}) == natural(0));
}

TEST_CASE("entailment search") {
  const std::vector<Formula> phi = {parse("E x. R(x)")};
  const std::vector<Formula> psi = {parse("E x. (R(x) | Q(x))")};
  const Semiring v = Semiring::viterbi();
  EntailmentResult r = entails_at(phi, psi, v, 2, v.default_grid());
  CHECK(r.holds);
  CHECK(r.exhaustive);
  CHECK(r.checked > 0);
  EntailmentResult back = entails_at(psi, phi, v, 1, v.default_grid());
  CHECK_FALSE(back.holds);
  REQUIRE(back.witness);
  CHECK(v.less(*back.phi_value, *back.psi_value) == false);
  CHECK(eval_set(*back.witness, psi) == *back.phi_value);

  const Semiring s3 = Semiring::s3();
  const std::vector<Formula> sphi = {parse("E x. x = x")};
  const std::vector<Formula> spsi = {parse("E x. (R(x) | ~R(x))")};
  CHECK_FALSE(entails_at(sphi, spsi, s3, 1, {level(kS3Eps), level(kS3One)}).holds);
  CHECK(entails_at(sphi, spsi, s3, 1, {level(kS3One)}).holds);
  CHECK(entails_at(spsi, sphi, s3, 2, {level(kS3Eps), level(kS3One)}).holds);

  SearchOptions sample;
  sample.guard = 10;
  sample.samples = 50;
  EntailmentResult sampled = entails_at(phi, psi, v, 3, v.default_grid(), sample);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.checked == 50);
}

TEST_CASE("existential sentences are not preserved by collapsing maps in the natural numbers") {
  const Interpretation two = unary(Semiring::nat(), {natural(1), natural(1)});
  const Interpretation one = restrict(two, {0});
  CHECK(check_interp_hom({0, 0}, two, one) == HomClass::kNone);
  const Formula f = parse("E x. true");
  CHECK_FALSE(Semiring::nat().leq(eval(two, f), eval(one, f)));
  const Interpretation bigger = unary(Semiring::nat(), {natural(2)});
  CHECK(check_interp_hom({0, 0}, two, bigger) == HomClass::kHom);
  CHECK_FALSE(Semiring::nat().leq(eval(two, f), eval(bigger, f)));
}

TEST_CASE("vocabulary of a sentence set") {
  const Vocabulary v = vocabulary_of(std::vector<Formula>{parse("E x. R(x)"), parse("E x. E(x,x)")});
  CHECK(v.arity("E") == 2);
  CHECK_THROWS(vocabulary_of(std::vector<Formula>{parse("E x. R(x)"), parse("E x. R(x,x)")}));
}

}  // namespace
}  // namespace semfo
