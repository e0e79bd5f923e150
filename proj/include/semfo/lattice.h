// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SEMFO_LATTICE_H_
#define SEMFO_LATTICE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semfo {

// A finite bounded distributive lattice given by element names and its order.
// Join and meet tables are derived from the order and validated on construction.
class FiniteLattice {
 public:
  using Elem = std::uint32_t;

  // Builds the lattice from covering pairs (x, y) meaning x < y.
  static FiniteLattice from_covers(std::vector<std::string> names,
                                   const std::vector<std::pair<std::string, std::string>>& covers);
  static FiniteLattice chain(std::size_t k);
  // Text format: `elements: a b c` followed by `leq: x y` lines.
  static FiniteLattice parse(std::string_view text);
  static FiniteLattice load(const std::string& path);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Elem e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }
  Elem index(std::string_view name) const;

  bool leq(Elem a, Elem b) const { return leq_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  bool is_chain() const;
  // True if some a, b above the bottom have meet equal to the bottom.
  bool has_zero_divisors() const;
  // Returns L* with a new global minimum named `name`; old element i becomes i + 1.
  FiniteLattice adjoin_bottom(const std::string& name = "0*") const;
  std::string to_string() const;

  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  FiniteLattice(std::vector<std::string> names, std::vector<bool> leq);

  std::vector<std::string> names_;
  std::vector<bool> leq_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

}  // namespace semfo

#endif  // SEMFO_LATTICE_H_
