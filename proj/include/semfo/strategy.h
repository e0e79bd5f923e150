// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Model-checking game trees and Verifier evaluation strategies.

#ifndef SEMFO_STRATEGY_H_
#define SEMFO_STRATEGY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semfo/formula.h"
#include "semfo/interpretation.h"
#include "semfo/polynomial.h"
#include "semfo/semiring.h"

namespace semfo {

// Instantiation of the visible variables; a rebinding replaces the old entry.
using Env = std::vector<std::pair<std::string, Elem>>;

std::optional<Elem> lookup(const Env& env, const std::string& var);
Env bind(Env env, const std::string& var, Elem e);

// A node labelled with a subformula and the instantiation of its visible
// variables. `elem` is the element chosen by the parent quantifier.
struct TreeNode {
  Formula formula;
  Env env;
  std::int64_t elem = -1;
  std::vector<int> children;
};

// Distinct quantifiers get one child per element outside the instantiation;
// standard quantifiers get one child per element of the universe.
class GameTree {
 public:
  GameTree(Formula f, std::size_t n, Env env = {}, std::uint64_t guard = 10000000);

  const Formula& formula() const { return formula_; }
  std::size_t universe_size() const { return n_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(id); }
  // Number of strategies, saturating at UINT64_MAX.
  std::uint64_t strategy_count() const;

 private:
  int build(const Formula& f, Env env, std::int64_t elem);

  Formula formula_;
  std::size_t n_;
  std::uint64_t guard_;
  std::vector<TreeNode> nodes_;
};

// A Verifier strategy stored as its own labelled tree, root at index 0, in
// preorder.
class Strategy {
 public:
  Strategy() = default;
  Strategy(std::size_t n, std::vector<TreeNode> nodes) : n_(n), nodes_(std::move(nodes)) {}

  std::size_t universe_size() const { return n_; }
  const Formula& formula() const { return nodes_.at(0).formula; }
  const Env& root_env() const { return nodes_.at(0).env; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  std::vector<int> leaves() const;
  // Copy of the subtree rooted at `id`.
  Strategy subtree(int id) const;
  // Inner nodes left after cutting below every universal node.
  std::size_t truncated_inner_nodes() const;

  std::string to_string() const;
  friend bool operator==(const Strategy& a, const Strategy& b);

 private:
  std::size_t n_ = 0;
  std::vector<TreeNode> nodes_;
};

// Arguments of a relational leaf literal, or nothing for other leaves.
std::optional<std::vector<Elem>> literal_elements(const TreeNode& leaf);

// Empty if `t` is a strategy for its root label over its universe, otherwise
// the first violation found.
std::optional<std::string> validate_strategy(const Strategy& t);

// Calls `fn` on every strategy of the tree; stops early when it returns false.
// Throws GuardExceeded if the count exceeds `guard`.
void for_each_strategy(const GameTree& tree, const std::function<bool(const Strategy&)>& fn,
                       std::uint64_t guard = 1000000);
std::vector<Strategy> enumerate_strategies(const GameTree& tree, std::uint64_t guard = 1000000);

// Product of the leaf values.
Value eval_strategy(const Interpretation& pi, const Strategy& t);

struct SumOfStrategiesReport {
  bool ok = false;
  Value eval_value;
  Value strategy_sum;
  std::uint64_t strategies = 0;
};
SumOfStrategiesReport sum_of_strategies_check(const Interpretation& pi, const Formula& f,
                                              std::uint64_t guard = 1000000);

struct OptimalResult {
  Value value;
  // Absent when the tree admits no strategy at all.
  std::optional<Strategy> strategy;
  // Strategies choosing a maximal child at every choice node.
  Natural tie_count;
};

// Argmax dynamic program. Requires an additively idempotent, linearly ordered
// semiring.
OptimalResult optimal(const Interpretation& pi, const Formula& f);
OptimalResult optimal(const Interpretation& pi, const GameTree& tree);

enum class StrategyClass { kExistential, kAlmostExistential, kReliesOnForall };
std::string to_string(StrategyClass c);

struct StrategyStats {
  std::set<Elem> witnesses;
  std::set<Elem> literal_elements;
  StrategyClass cls = StrategyClass::kExistential;
  bool almost_existential() const { return cls != StrategyClass::kReliesOnForall; }
};
StrategyStats classify(const Strategy& t);

// Best strategy of the class by dynamic program, or nothing if the class is
// empty. kReliesOnForall is rejected.
std::optional<std::pair<Value, Strategy>> best_in_class(const Interpretation& pi, const GameTree& tree,
                                                        StrategyClass cls);

// Exchanges the elements b and c everywhere. Requires c outside the root
// instantiation apart from b.
Strategy swap_instantiation(const Strategy& t, Elem b, Elem c);

// Draws a strategy uniformly at every choice node. With `allowed`, only choices
// whose subtree can keep every relational literal inside `allowed` are taken.
std::optional<Strategy> random_strategy(const GameTree& tree, std::mt19937_64& rng,
                                        const std::optional<std::set<Elem>>& allowed = std::nullopt);

struct TranslationResult {
  Strategy strategy;
  // For each universal node of the input: (node, removed child), as input ids.
  std::vector<std::pair<int, int>> dropped;
};

// Rewrites a strategy over n+r+1 elements, r = qr, whose leaf literals only
// mention the first n elements, into a strategy over n+r elements by the
// relabelling g_v: the element to eliminate is the least moved image (default
// the last element) and moves to the largest element of [n+r] outside the
// instantiation and the moved images.
TranslationResult translate_strategy(const Strategy& t);

// c_0 = 0, c_{m+1} = 2^{size+1} ((c_m + 1) c_m + 1).
Natural c_constant(std::size_t formula_size, std::size_t m);

// Makes the children of universal nodes share one substrategy up to the
// universal instantiation, innermost first, for universal depth 1..m.
Strategy compact_almost_existential(const Strategy& t, std::size_t m);

// Rewrites an almost existential strategy over n+r elements with leaf literals
// in the first n elements into one over n elements.
Strategy translate_almost_existential(const Strategy& t);

std::size_t universal_depth(const Formula& f);

}  // namespace semfo

#endif  // SEMFO_STRATEGY_H_
