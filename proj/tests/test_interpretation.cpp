// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "semfo/error.h"
#include "semfo/homomorphism.h"
#include "semfo/interpretation.h"

namespace semfo {
namespace {

const std::string kData = SEMFO_DATA_DIR;

Vocabulary unary() {
  Vocabulary v;
  v.add("R", 1);
  return v;
}

Interpretation viterbi_pair(const Value& ra, const Value& rb) {
  Interpretation pi(Semiring::viterbi(), {"a", "b"}, unary());
  pi.set_atom("R", std::vector<Elem>{0}, ra);
  pi.set_atom("R", std::vector<Elem>{1}, rb);
  return pi;
}

TEST_CASE("fresh interpretations are model-defining") {
  const Interpretation pi = Interpretation::over(Semiring::viterbi(), 3, unary());
  CHECK(pi.size() == 3);
  CHECK(pi.element_name(0) == "1");
  CHECK(pi.value("R", true, std::vector<Elem>{2}) == rational(1));
  CHECK(pi.validate().ok());
  CHECK(pi.atom_count() == 3);
}

TEST_CASE("setting literals keeps the dual consistent") {
  Interpretation pi = Interpretation::over(Semiring::s3(), 1, unary());
  pi.set_atom("R", std::vector<Elem>{0}, level(kS3Eps));
  CHECK(pi.value("R", true, std::vector<Elem>{0}) == level(kS3Zero));
  pi.set_negated("R", std::vector<Elem>{0}, level(kS3Zero));
  CHECK(pi.value("R", false, std::vector<Elem>{0}) == level(kS3One));
  pi.set_both("R", std::vector<Elem>{0}, level(kS3Eps), level(kS3Eps));
  CHECK_FALSE(pi.validate().ok());
  CHECK_THROWS_AS(pi.require_valid(), NotModelDefining);
  CHECK_THROWS(pi.set_atom("Q", std::vector<Elem>{0}, level(kS3One)));
  CHECK_THROWS(pi.set_atom("R", std::vector<Elem>{0, 0}, level(kS3One)));
}

TEST_CASE("files load and print") {
  const Interpretation one = Interpretation::load(kData + "/viterbi_pi1.txt");
  const Interpretation two = Interpretation::load(kData + "/viterbi_pi2.txt");
  CHECK(one.size() == 1);
  CHECK(two.value("R", false, std::vector<Elem>{1}) == rational(1, 2));
  CHECK(Interpretation::parse(two.to_string()) == two);
  CHECK_THROWS_AS(Interpretation::load(kData + "/viterbi_pi1.txt", Semiring::nat()), CarrierMismatch);
  CHECK(Interpretation::load(kData + "/viterbi_pi1.txt", Semiring::viterbi()) == one);
}

TEST_CASE("malformed files report the line") {
  try {
    Interpretation::load(kData + "/malformed.txt");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(Interpretation::parse("universe: a\n"), ParseError);
  CHECK_THROWS_AS(Interpretation::parse("semiring: viterbi\nuniverse: a\nrelations: R\n"), ParseError);
  CHECK_THROWS_AS(Interpretation::parse("semiring: viterbi\nuniverse: a\nrelations: R/1\nR(a) = 3/2\n"), Error);
  CHECK_THROWS_AS(Interpretation::parse("semiring: viterbi\nuniverse: a\nrelations: R/1\nR(c) = 1/2\n"), Error);
  CHECK_THROWS_AS(Interpretation::load(kData + "/missing.txt"), Error);
}

TEST_CASE("restriction and padding") {
  const Interpretation one = Interpretation::load(kData + "/viterbi_pi1.txt");
  const Interpretation two = Interpretation::load(kData + "/viterbi_pi2.txt");
  CHECK(restrict(two, {0}) == one);
  CHECK(is_subinterpretation(one, two));
  CHECK_FALSE(is_subinterpretation(two, one));
  const Interpretation padded = pad(one, 2, rational(1, 4));
  CHECK(padded.size() == 3);
  CHECK(is_subinterpretation(one, padded));
  CHECK(padded.value("R", false, std::vector<Elem>{2}) == rational(1, 4));
  CHECK(padded.value("R", true, std::vector<Elem>{2}) == rational(0));
  CHECK(pad(one, 1, rational(0)).value("R", true, std::vector<Elem>{1}) == rational(1));
  CHECK_THROWS(restrict(two, {0, 0}));
  CHECK_THROWS(restrict(two, {2}));
  Interpretation other = viterbi_pair(rational(1, 2), rational(1, 4));
  CHECK_FALSE(is_subinterpretation(other, two));
}

TEST_CASE("homomorphisms between interpretations") {
  const Interpretation a = viterbi_pair(rational(1, 2), rational(1, 4));
  const Interpretation b = restrict(a, {0});
  CHECK(check_interp_hom({0, 0}, a, b) == HomClass::kHom);
  CHECK(check_interp_hom({0, 1}, a, a) == HomClass::kEmbedding);
  CHECK(check_interp_hom({1, 0}, a, a) == HomClass::kNone);
  const Interpretation flat = viterbi_pair(rational(1, 2), rational(1, 2));
  CHECK(check_interp_hom({0, 0}, flat, restrict(flat, {0})) == HomClass::kStrongHom);

  Interpretation n2(Semiring::nat(), {"a", "b"}, unary());
  n2.set_atom("R", std::vector<Elem>{0}, natural(2));
  n2.set_atom("R", std::vector<Elem>{1}, natural(3));
  Interpretation n1(Semiring::nat(), {"a"}, unary());
  n1.set_atom("R", std::vector<Elem>{0}, natural(4));
  CHECK(check_interp_hom({0, 0}, n2, n1) == HomClass::kNone);
  n1.set_atom("R", std::vector<Elem>{0}, natural(5));
  CHECK(check_interp_hom({0, 0}, n2, n1) == HomClass::kHom);

  CHECK_THROWS(check_interp_hom({0}, a, b));
  CHECK_THROWS(check_interp_hom({0, 1}, a, b));
  CHECK_THROWS_AS(check_interp_hom({0, 0}, a, n1), CarrierMismatch);
  CHECK(to_string(HomClass::kEmbedding) == "embedding");
}

TEST_CASE("composing with semiring homomorphisms") {
  Interpretation pi = Interpretation::over(Semiring::s3(), 2, unary());
  pi.set_atom("R", std::vector<Elem>{0}, level(kS3Eps));
  const Interpretation up = compose_hom(threshold_hom(Threshold::kGeqEps), pi);
  CHECK(up.value("R", false, std::vector<Elem>{0}) == level(kS3One));
  CHECK_THROWS_AS(compose_hom(threshold_hom(Threshold::kGeqOne), pi), NotModelDefining);
  const Interpretation raw = compose_hom_unchecked(threshold_hom(Threshold::kGeqOne), pi);
  CHECK_FALSE(raw.validate().ok());
  CHECK(compose_hom(s3_to_fuzzy(), pi).value("R", false, std::vector<Elem>{0}) == rational(1, 2));
  CHECK_THROWS_AS(compose_hom(s3_to_fuzzy(), compose_hom(s3_to_fuzzy(), pi)), CarrierMismatch);
}

TEST_CASE("interpretation spaces") {
  const Semiring s = Semiring::s3();
  const std::vector<Value> both = {level(kS3Eps), level(kS3One)};
  CHECK(InterpretationSpace(s, unary(), 1, both).count() == 4);
  CHECK(InterpretationSpace(s, unary(), 1, {level(kS3One)}).count() == 2);
  CHECK(InterpretationSpace(s, unary(), 2, both).count() == 16);
  CHECK(InterpretationSpace(s, unary(), 1, {level(kS3Zero), level(kS3One)}).count() == 2);
  CHECK_THROWS_AS(InterpretationSpace(s, unary(), 1, {level(kS3Zero)}), PreconditionError);

  const InterpretationSpace space(s, unary(), 2, both);
  std::uint64_t seen = 0;
  space.for_each([&](const Interpretation& pi) {
    CHECK(pi.validate().ok());
    ++seen;
    return true;
  });
  CHECK(seen == 16);
  CHECK(space.at(5) == space.at(5));
  CHECK_FALSE(space.at(0) == space.at(1));

  Vocabulary big;
  big.add("E", 2);
  const InterpretationSpace huge(s, big, 4, both, 1000);
  CHECK_FALSE(huge.within_guard());
  CHECK_THROWS_AS(huge.for_each([](const Interpretation&) { return true; }), GuardExceeded);
  std::mt19937_64 rng(3);
  CHECK(huge.random(rng).validate().ok());
}

TEST_CASE("nonzero value grids") {
  const Semiring v = Semiring::viterbi();
  const auto g = nonzero_values(v, {rational(0), rational(1, 2), rational(1, 2), rational(1)});
  CHECK(g == std::vector<Value>{rational(1, 2), rational(1)});
}

}  // namespace
}  // namespace semfo
