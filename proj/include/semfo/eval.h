// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Semiring valuation of FO and FO≠ formulae on finite interpretations.

#ifndef SEMFO_EVAL_H_
#define SEMFO_EVAL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semfo/formula.h"
#include "semfo/interpretation.h"
#include "semfo/semiring.h"

namespace semfo {

// A formula compiled to variable slots. Distinct quantifiers skip the
// elements bound to every variable in scope at the quantifier.
class Evaluator {
 public:
  // `free_order` fixes the order of the assignment; by default free_vars(f).
  explicit Evaluator(Formula f, std::vector<std::string> free_order = {});

  const Formula& formula() const { return formula_; }
  const std::vector<std::string>& free_order() const { return free_order_; }
  Value operator()(const Interpretation& pi, std::span<const Elem> assignment = {}) const;

  struct CNode {
    NodeKind kind;
    std::string rel;
    std::vector<int> arg_slots;
    int slot = -1;
    std::vector<int> excluded;
    std::vector<int> deps;
    int left = -1;
    int right = -1;
    bool memo = false;
  };

 private:
  int compile(const Formula& f, std::vector<std::pair<std::string, int>>& scope, int depth);

  Formula formula_;
  std::vector<std::string> free_order_;
  std::vector<CNode> nodes_;
  int root_ = -1;
  int slots_ = 0;
};

Value eval(const Interpretation& pi, const Formula& f, const std::map<std::string, Elem>& assignment = {});
// Product of the member valuations; 1 for the empty set.
Value eval_set(const Interpretation& pi, const std::vector<Formula>& sentences);

struct SearchOptions {
  std::uint64_t guard = 1000000;
  // Random interpretations drawn when the space exceeds the guard.
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
};

struct EntailmentResult {
  bool holds = true;
  bool exhaustive = true;
  std::uint64_t checked = 0;
  std::optional<Interpretation> witness;
  std::optional<Value> phi_value;
  std::optional<Value> psi_value;
};

// Checks pi[Phi] <= pi[Psi] on every interpretation of `size` built from
// `values`, or on a random sample when the space exceeds the guard.
EntailmentResult entails_at(const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                            const Semiring& semiring, std::size_t size, const std::vector<Value>& values,
                            const SearchOptions& options = {});

Vocabulary vocabulary_of(const std::vector<Formula>& fs);

}  // namespace semfo

#endif  // SEMFO_EVAL_H_
