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
#include "semfo/transform.h"

namespace semfo {
namespace {

// Compares f and g on every S3 interpretation of the given size and every
// injective assignment of their free variables.
bool same_on_s3(const Formula& f, const Formula& g, std::size_t size) {
  std::vector<std::string> vars = free_vars(f);
  for (const auto& v : free_vars(g)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  if (vars.size() > size) return true;
  const Vocabulary vocab = vocabulary_of(std::vector<Formula>{f, g});
  const auto inj = corpus::injections(vars.size(), size);
  bool ok = true;
  corpus::for_each_s3(vocab, size, [&](const Interpretation& pi) {
    for (const auto& tuple : inj) {
      std::map<std::string, Elem> a;
      for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = tuple[i];
      if (!(eval(pi, f, a) == eval(pi, g, a))) {
        ok = false;
        return false;
      }
    }
    return true;
  });
  return ok;
}

bool same_on_viterbi_samples(const Formula& f, const Formula& g, std::size_t size, int samples) {
  const Semiring v = Semiring::viterbi();
  const InterpretationSpace space(v, vocabulary_of(std::vector<Formula>{f, g}), size, v.default_grid());
  std::mt19937_64 rng(7);
  for (int i = 0; i < samples; ++i) {
    const Interpretation pi = space.random(rng);
    if (!(eval(pi, f) == eval(pi, g))) return false;
  }
  return true;
}

TEST_CASE("FO to FO with distinct quantifiers") {
  CHECK(render(fo_to_foneq(parse("E y. E(x,y)"))) == "E(x,x) | (E! y. E(x,y))");
  CHECK(render(fo_to_foneq(parse("A y. E(x,y)"))) == "E(x,x) & (A! y. E(x,y))");
  CHECK(render(fo_to_foneq(parse("E x. R(x)"))) == "E! x. R(x)");
  CHECK(render(fo_to_foneq(parse("E x. E y. (x = y & R(x))"))) == "E! x. R(x)");
  CHECK(flavor(fo_to_foneq(parse("A x. E y. (x = y | E(x,y))"))) != Flavor::kFO);
}

TEST_CASE("FO with distinct quantifiers to FO") {
  CHECK(render(foneq_to_fo(parse("E! y. E(x,y)"))) == "E y. y != x & E(x,y)");
  CHECK(render(foneq_to_fo(parse("A! y. E(x,y)"))) == "A y. y = x | E(x,y)");
  CHECK(flavor(foneq_to_fo(parse("E! x. A! y. R(x)"))) == Flavor::kFO);
}

TEST_CASE("translations preserve valuations") {
  for (const auto& f : corpus::parse_all(corpus::fo_sentences())) {
    INFO(render(f));
    const Formula g = fo_to_foneq(f);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(same_on_s3(f, g, n));
    CHECK(same_on_viterbi_samples(f, g, 3, 100));
  }
  for (const auto& f : corpus::parse_all(corpus::translation_sentences())) {
    INFO(render(f));
    const Formula g = foneq_to_fo(f);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(same_on_s3(f, g, n));
    CHECK(same_on_viterbi_samples(f, g, 3, 100));
    const Formula back = fo_to_foneq(g);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(same_on_s3(f, back, n));
  }
}

TEST_CASE("translations of formulae with free variables") {
  for (const char* text : {"E y. E(x,y)", "A y. (E(x,y) | x = y)", "E y. A z. (E(y,z) & z != x)"}) {
    const Formula f = parse(text);
    INFO(text);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(same_on_s3(f, fo_to_foneq(f), n));
  }
}

TEST_CASE("size n unfolding") {
  const Formula f = parse("E x. A y. R(x)");
  CHECK(render(psi_n(f, 2)) == "E x1. E x2. x1 != x2 & (R(x1) & R(x1) | R(x2) & R(x2))");
  CHECK(is_sentence(psi_n(f, 3)));
  CHECK(flavor(psi_n(parse("E! x. A! y. R(y)"), 2)) == Flavor::kFO);
  CHECK(metrics(psi_n(f, 2)).qr_forall == 0);
}

TEST_CASE("renaming apart and simplification") {
  const Formula f = rename_apart(parse("(E x. R(x)) & E x. Q(x)"));
  CHECK_FALSE(has_shadowing(f));
  CHECK(same_on_s3(f, parse("(E x. R(x)) & E x. Q(x)"), 2));
  CHECK(render(simplify_exact(parse("true & (false | R(x))"))) == "R(x)");
  CHECK(render(simplify_exact(parse("E x. false"))) == "false");
  CHECK(render(simplify_exact(parse("true | R(x)"))) == "true | R(x)");
  CHECK(render(simplify_absorptive(parse("true | R(x)"))) == "true");
  CHECK(render(simplify_absorptive(parse("R(x) | R(x)"))) == "R(x)");
}

TEST_CASE("flattening existential combinations") {
  CHECK(render(flatten_sigma1(parse("(E x. R(x)) & E y. Q(y)"))) == "E x. E y. R(x) & Q(y)");
  CHECK(render(flatten_sigma1(parse("(E x. R(x)) | E x. Q(x)"))) == "E x1. E x. R(x1) | Q(x)");
  CHECK_THROWS_AS(flatten_sigma1(parse("A x. R(x)")), PreconditionError);
  for (const char* text : {"(E x. R(x)) & E y. Q(y)", "(E x. R(x)) | E x. Q(x)", "R(z) & E x. (Q(x) | E y. E(x,y))"}) {
    const Formula f = parse(text);
    INFO(text);
    const std::size_t top = vocabulary_of(f).contains("E") ? 2 : 3;
    for (std::size_t n = 1; n <= top; ++n) CHECK(same_on_s3(f, flatten_sigma1(f), n));
  }
}

TEST_CASE("existential prenex DNF") {
  const Formula f = parse("(E! z. R(z)) & E! u. Q(u)");
  const PrenexDnf d = existential_prenex_dnf(f);
  CHECK(d.bound == std::vector<std::string>{"z", "u"});
  CHECK(render(d.to_formula()) == "E! z. E! u. Q(z) & R(z) | Q(u) & R(z)");
  for (std::size_t n = 2; n <= 3; ++n) CHECK(same_on_s3(f, d.to_formula(), n));
  // The prefix needs two distinct elements.
  CHECK_FALSE(same_on_s3(f, d.to_formula(), 1));

  const PrenexDnf q = existential_prenex_dnf(parse("R(x) | Q(x)"));
  CHECK(q.bound.empty());
  CHECK(q.disjuncts.size() == 2);
  for (const char* text : {"E! x. (R(x) | E! y. (E(x,y) & Q(y)))", "(E! x. (R(x) & ~R(x))) | E! y. Q(y)",
                           "(E! x. ~R(x)) | E! y. ~Q(y)"}) {
    const Formula g = parse(text);
    INFO(text);
    const Formula h = existential_prenex_dnf(g).to_formula();
    const std::size_t need = existential_prenex_dnf(g).bound.size();
    const std::size_t top = vocabulary_of(g).contains("E") ? 2 : 3;
    for (std::size_t n = std::max<std::size_t>(need, 1); n <= top; ++n) CHECK(same_on_s3(g, h, n));
  }
  CHECK_THROWS_AS(existential_prenex_dnf(parse("A! x. R(x)")), PreconditionError);
}

TEST_CASE("conjunction normalization") {
  const auto lits = normalize_conjunction({atom("R", {"x"}), atom("Q", {"x"}), atom("R", {"x"})});
  CHECK(lits.size() == 2);
  CHECK(is_contradictory({atom("R", {"x"}), neg_atom("R", {"x"})}));
  CHECK(is_contradictory({neq("x", "x")}));
  CHECK(is_contradictory({eq("x", "y"), neq("y", "x")}));
  CHECK_FALSE(is_contradictory({atom("R", {"x"}), neg_atom("R", {"y"})}));
}

}  // namespace
}  // namespace semfo
