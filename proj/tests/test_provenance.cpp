// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "corpus.h"
#include "semfo/error.h"
#include "semfo/eval.h"
#include "semfo/provenance.h"

namespace semfo {
namespace {

std::string nat_text(const char* f, std::size_t n) {
  return Semiring::nat_poly().format(canonical_polynomial(parse(f), n, PolyFlavor::kNat));
}

std::string abs_text(const char* f, std::size_t n) {
  return Semiring::abs_poly().format(canonical_polynomial(parse(f), n));
}

TEST_CASE("canonical polynomials") {
  CHECK(nat_text("E x. R(x)", 2) == "R(1) + R(2)");
  CHECK(nat_text("A x. R(x)", 2) == "R(1)*R(2)");
  CHECK(abs_text("A x. (R(x) | ~R(x))", 2) == "R(1)*R(2) + R(1)*~R(2) + R(2)*~R(1) + ~R(1)*~R(2)");
  CHECK(nat_text("E x. (R(x) & ~R(x))", 2) == "R(1)*~R(1) + R(2)*~R(2)");
  CHECK(abs_text("E x. (R(x) & ~R(x))", 2) == "0");
  CHECK(nat_text("E x. A y. E(x,y)", 2) == "E(1,1)*E(1,2) + E(2,1)*E(2,2)");
  CHECK(nat_text("E! x. E! y. true", 2) == "2");
  CHECK(abs_text("E! x. E! y. true", 2) == "1");
  CHECK(nat_text("E x. E y. R(x)", 2) == "2*R(1) + 2*R(2)");
  CHECK(abs_text("E x. E y. R(x)", 2) == "R(1) + R(2)");
}

TEST_CASE("canonical interpretations") {
  Vocabulary v;
  v.add("R", 1);
  v.add("E", 2);
  const Interpretation pi = pi_n(v, 2);
  CHECK(pi.atom_count() == 6);
  CHECK(pi.validate().status == Validity::kPolynomial);
  CHECK(pi_n(v, 3, PolyFlavor::kNat).semiring() == Semiring::nat_poly());
}

TEST_CASE("degree and support") {
  const Value p = canonical_polynomial(parse("E x. A y. E(x,y)"), 3, PolyFlavor::kNat);
  CHECK(degree(p) == 3);
  CHECK(support(p).size() == 9);
  CHECK(degree(canonical_polynomial(parse("E x. true"), 3)) == 0);
  CHECK(support(canonical_polynomial(parse("A x. ~R(x)"), 2)) ==
        std::set<Var>{Var::negative("R(1)"), Var::negative("R(2)")});
}

TEST_CASE("specialization recovers the valuation") {
  std::mt19937_64 rng(13);
  const auto sentences = corpus::parse_all(corpus::foneq_sentences());
  for (const auto& s : {Semiring::viterbi(), Semiring::lukasiewicz(), Semiring::s3(), Semiring::nat()}) {
    const PolyFlavor fl = s.flags().absorptive ? PolyFlavor::kAbsorptive : PolyFlavor::kNat;
    for (std::size_t i = 0; i < sentences.size(); i += 3) {
      const Formula& f = sentences[i];
      const Value p = canonical_polynomial(f, 2, fl);
      const InterpretationSpace space(s, vocabulary_of(f), 2, s.default_grid());
      for (int k = 0; k < 3; ++k) {
        const Interpretation pi = space.random(rng);
        INFO(s.id() << " " << render(f));
        CHECK(specialize(p, assignment_of(pi), s) == eval(pi, f));
      }
    }
  }
}

TEST_CASE("specialization preconditions") {
  const Value p = canonical_polynomial(parse("E x. R(x)"), 1);
  const Semiring v = Semiring::viterbi();
  auto both = [](Var) -> Value { return rational(1, 2); };
  CHECK_THROWS_AS(specialize(p, both, v), PreconditionError);
  auto ok = [](Var x) -> Value { return x.negated() ? rational(0) : rational(1, 2); };
  CHECK(specialize(p, ok, v) == rational(1, 2));
  auto nat = [](Var x) -> Value { return x.negated() ? natural(0) : natural(2); };
  CHECK_THROWS_AS(specialize(p, nat, Semiring::nat()), PreconditionError);
  const Value q = canonical_polynomial(parse("E x. R(x)"), 2, PolyFlavor::kNat);
  CHECK(specialize(q, nat, Semiring::nat()) == natural(4));
}

TEST_CASE("renaming variables") {
  const Value p = canonical_polynomial(parse("E x. R(x)"), 2, PolyFlavor::kNat);
  auto swap = [](Var x) {
    const std::string a = x.atom() == "R(1)" ? "R(2)" : "R(1)";
    return x.negated() ? Var::negative(a) : Var::positive(a);
  };
  CHECK(rename_variables(std::get<NatPoly>(p), swap) == std::get<NatPoly>(p));
  const Value q = canonical_polynomial(parse("A x. (x = x & R(x)) | E y. ~R(y)"), 2);
  const AbsorptivePoly r = rename_variables(std::get<AbsorptivePoly>(q), swap);
  CHECK(monomial_set(r) == monomial_set(std::get<AbsorptivePoly>(q)));
  CHECK(monomial_set(std::get<AbsorptivePoly>(q)).size() == 6);
}

}  // namespace
}  // namespace semfo
