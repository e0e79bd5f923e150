// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"
#include "semfo/error.h"
#include "semfo/eval.h"
#include "semfo/formula.h"
#include "semfo/strategy.h"

namespace semfo {
namespace {

Interpretation unary(const Semiring& s, const std::vector<Value>& r) {
  Vocabulary v;
  v.add("R", 1);
  Interpretation pi = Interpretation::over(s, r.size(), v);
  for (Elem e = 0; e < r.size(); ++e) pi.set_atom("R", std::vector<Elem>{e}, r[e]);
  return pi;
}

// Maximum over all enumerated strategies, optionally within one class.
std::optional<Value> brute_best(const Interpretation& pi, const GameTree& tree,
                                std::optional<StrategyClass> cls = std::nullopt) {
  const Semiring& s = pi.semiring();
  std::optional<Value> best;
  for_each_strategy(tree, [&](const Strategy& t) {
    if (cls && classify(t).cls != *cls) return true;
    const Value v = eval_strategy(pi, t);
    if (!best || s.leq(*best, v)) best = v;
    return true;
  });
  return best;
}

TEST_CASE("strategy counts") {
  CHECK(GameTree(parse("E x. A y. R(x)"), 2).strategy_count() == 2);
  CHECK(GameTree(parse("E x. E y. R(x)"), 2).strategy_count() == 4);
  CHECK(GameTree(parse("A x. E y. E(x,y)"), 2).strategy_count() == 4);
  CHECK(GameTree(parse("E! x. E! y. E(x,y)"), 3).strategy_count() == 6);
  CHECK(GameTree(parse("E! x. E! y. E(x,y)"), 1).strategy_count() == 0);
  CHECK(GameTree(parse("A! x. A! y. E(x,y)"), 1).strategy_count() == 1);
  CHECK(GameTree(parse("R(x) | Q(x)"), 2, {{"x", 1}}).strategy_count() == 2);
  CHECK_THROWS(GameTree(parse("R(x)"), 2));
}

TEST_CASE("enumeration matches the count and yields valid strategies") {
  for (const auto& f : corpus::parse_all(corpus::foneq_sentences())) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const GameTree tree(f, n);
      if (tree.strategy_count() > 5000) continue;
      INFO(render(f) << " n=" << n);
      const auto all = enumerate_strategies(tree);
      CHECK(all.size() == tree.strategy_count());
      std::set<std::string> distinct;
      for (const auto& t : all) {
        CHECK_FALSE(validate_strategy(t).has_value());
        distinct.insert(t.to_string());
      }
      CHECK(distinct.size() == all.size());
    }
  }
  CHECK_THROWS_AS(enumerate_strategies(GameTree(parse("A x. E y. E(x,y)"), 4), 10), GuardExceeded);
}

TEST_CASE("strategy values sum to the valuation") {
  const Interpretation pi = unary(Semiring::nat(), {natural(2), natural(3)});
  const GameTree tree(parse("E x. A y. R(x)"), 2);
  std::vector<Value> vals;
  for (const auto& t : enumerate_strategies(tree)) vals.push_back(eval_strategy(pi, t));
  CHECK(Semiring::nat().sum(vals) == natural(13));
  CHECK(eval(pi, parse("E x. A y. R(x)")) == natural(13));
  const SumOfStrategiesReport r = sum_of_strategies_check(pi, parse("A x. (R(x) | ~R(x) | E y. R(y))"));
  CHECK(r.ok);
  CHECK(r.eval_value == r.strategy_sum);
  CHECK(r.strategies == 16);
}

TEST_CASE("optimal strategies") {
  const Interpretation pi = unary(Semiring::viterbi(), {rational(1, 2), rational(1, 2)});
  const OptimalResult r = optimal(pi, parse("E x. A y. R(x)"));
  CHECK(r.value == rational(1, 4));
  CHECK(r.tie_count == 2);
  REQUIRE(r.strategy);
  CHECK(eval_strategy(pi, *r.strategy) == rational(1, 4));
  const OptimalResult none = optimal(restrict(pi, {0}), parse("E! x. E! y. R(x)"));
  CHECK_FALSE(none.strategy);
  CHECK(none.value == rational(0));
  CHECK_THROWS_AS(optimal(unary(Semiring::nat(), {natural(1)}), parse("E x. R(x)")), PreconditionError);
}

TEST_CASE("optimal value equals the valuation and the best enumerated strategy") {
  std::mt19937_64 rng(5);
  for (const auto& s : {Semiring::viterbi(), Semiring::tropical(), Semiring::fuzzy(), Semiring::s3()}) {
    for (const auto& f : corpus::parse_all(corpus::foneq_sentences())) {
      const GameTree tree(f, 2);
      if (tree.strategy_count() > 2000) continue;
      const InterpretationSpace space(s, vocabulary_of(f), 2, s.default_grid());
      for (int i = 0; i < 3; ++i) {
        const Interpretation pi = space.random(rng);
        INFO(s.id() << " " << render(f));
        const OptimalResult r = optimal(pi, tree);
        CHECK(r.value == eval(pi, f));
        const auto b = brute_best(pi, tree);
        if (b) CHECK(*b == r.value);
      }
    }
  }
}

TEST_CASE("strategy classes") {
  const GameTree tree(parse("E x. A y. R(x)"), 2);
  const auto all = enumerate_strategies(tree);
  for (const auto& t : all) {
    const StrategyStats st = classify(t);
    CHECK(st.cls == StrategyClass::kAlmostExistential);
    CHECK(st.witnesses.size() == 1);
    CHECK(st.literal_elements == st.witnesses);
  }
  CHECK(classify(enumerate_strategies(GameTree(parse("A x. R(x)"), 2))[0]).cls == StrategyClass::kReliesOnForall);
  CHECK(classify(enumerate_strategies(GameTree(parse("E x. A y. R(x)"), 1))[0]).cls ==
        StrategyClass::kReliesOnForall);
  CHECK(classify(enumerate_strategies(GameTree(parse("E x. (R(x) & true)"), 2))[0]).cls ==
        StrategyClass::kExistential);
  CHECK(to_string(StrategyClass::kAlmostExistential) == "almost_existential");
}

TEST_CASE("best strategies within a class") {
  std::mt19937_64 rng(9);
  const Semiring v = Semiring::viterbi();
  for (const char* text : {"E x. A y. R(x)", "E x. A y. (R(x) | E(x,y))", "A x. E y. E(x,y)", "E x. E y. E(x,y)",
                           "E! x. A! y. (R(x) & (R(y) | Q(x)))"}) {
    const Formula f = parse(text);
    for (std::size_t n = 2; n <= 3; ++n) {
      const GameTree tree(f, n);
      if (tree.strategy_count() > 5000) continue;
      const InterpretationSpace space(v, vocabulary_of(f), n, v.default_grid());
      for (int i = 0; i < 5; ++i) {
        const Interpretation pi = space.random(rng);
        INFO(text << " n=" << n);
        for (StrategyClass c : {StrategyClass::kExistential, StrategyClass::kAlmostExistential}) {
          const auto got = best_in_class(pi, tree, c);
          std::optional<Value> want = brute_best(pi, tree, c);
          if (c == StrategyClass::kAlmostExistential) {
            const auto ex = brute_best(pi, tree, StrategyClass::kExistential);
            if (ex && (!want || v.leq(*want, *ex))) want = ex;
          }
          REQUIRE(got.has_value() == want.has_value());
          if (got) {
            CHECK(got->first == *want);
            CHECK(eval_strategy(pi, got->second) == got->first);
            CHECK(classify(got->second).almost_existential());
          }
        }
      }
    }
  }
  const Interpretation pi = unary(v, {rational(1, 2), rational(1, 2)});
  CHECK_THROWS_AS(best_in_class(pi, GameTree(parse("E x. R(x)"), 2), StrategyClass::kReliesOnForall),
                  PreconditionError);
}

TEST_CASE("swapping instantiations") {
  const Formula f = parse("E x. A y. (R(x) | E(x,y))");
  const GameTree tree(f, 3);
  const Semiring v = Semiring::viterbi();
  const InterpretationSpace space(v, vocabulary_of(f), 3, v.default_grid());
  std::mt19937_64 rng(2);
  const Interpretation pi = space.random(rng);
  Interpretation swapped(v, pi.universe(), pi.vocab());
  const std::vector<Elem> perm = {0, 2, 1};
  for (const auto& a : pi.atoms()) {
    std::vector<Elem> img;
    for (Elem e : a.args) img.push_back(perm[e]);
    swapped.set_both(a.rel, img, pi.value(a, false), pi.value(a, true));
  }
  for (const auto& t : enumerate_strategies(tree)) {
    const Strategy s = swap_instantiation(t, 1, 2);
    CHECK_FALSE(validate_strategy(s).has_value());
    CHECK(swap_instantiation(s, 1, 2) == t);
    CHECK(eval_strategy(swapped, s) == eval_strategy(pi, t));
  }
}

TEST_CASE("random strategies respect the allowed elements") {
  std::mt19937_64 rng(4);
  const GameTree tree(parse("E x. A y. (R(x) | E(x,y))"), 3);
  for (int i = 0; i < 50; ++i) {
    auto t = random_strategy(tree, rng, std::set<Elem>{0});
    REQUIRE(t);
    CHECK_FALSE(validate_strategy(*t).has_value());
    for (int leaf : t->leaves()) {
      if (auto els = literal_elements(t->node(leaf))) {
        for (Elem e : *els) CHECK(e == 0);
      }
    }
  }
  CHECK_FALSE(random_strategy(GameTree(parse("A x. R(x)"), 2), rng, std::set<Elem>{0}).has_value());
}

TEST_CASE("translating strategies to a smaller universe") {
  std::mt19937_64 rng(6);
  int translated = 0;
  for (const char* text : {"E! x. A! y. R(x)", "E! x. A! y. (R(x) | Q(y))", "A! x. E! y. (R(y) | Q(x))"}) {
    const Formula f = parse(text);
    const std::size_t qr = metrics(f).qr;
    const std::size_t n = (std::size_t{1} << (metrics(f).size + 1)) + qr + 1;
    const GameTree big(f, n + qr + 1);
    for (int i = 0; i < 3; ++i) {
      auto t = random_strategy(big, rng, std::set<Elem>{0});
      if (!t) break;
      INFO(text);
      const TranslationResult r = translate_strategy(*t);
      ++translated;
      CHECK(r.strategy.universe_size() == n + qr);
      CHECK_FALSE(validate_strategy(r.strategy).has_value());
      for (int leaf : r.strategy.leaves()) {
        if (auto els = literal_elements(r.strategy.node(leaf))) {
          for (Elem e : *els) CHECK(e == 0);
        }
      }
    }
  }
  CHECK(translated == 9);
}

TEST_CASE("compacting almost existential strategies") {
  CHECK(c_constant(1, 0) == 0);
  CHECK(c_constant(1, 1) == 4);
  CHECK(c_constant(1, 2) == 84);
  CHECK(universal_depth(parse("E x. A y. A z. R(x)")) == 2);
  CHECK(universal_depth(parse("(A y. R(y)) | E x. R(x)")) == 1);

  const Formula f = parse("E x. A y. (R(x) | E(x,y))");
  const GameTree tree(f, 3);
  for (const auto& t : enumerate_strategies(tree)) {
    if (!classify(t).almost_existential()) continue;
    const Strategy c = compact_almost_existential(t, universal_depth(f));
    CHECK_FALSE(validate_strategy(c).has_value());
    CHECK(classify(c).almost_existential());
  }
}

}  // namespace
}  // namespace semfo
