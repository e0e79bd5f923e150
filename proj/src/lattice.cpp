// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/lattice.h"

#include <fstream>
#include <optional>
#include <sstream>

#include "semfo/error.h"

namespace semfo {
namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

FiniteLattice::FiniteLattice(std::vector<std::string> names, std::vector<bool> order)
    : names_(std::move(names)), leq_(std::move(order)) {
  const std::size_t n = names_.size();
  if (n < 2) throw Error("lattice needs at least two elements");
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) throw Error("lattice order is not antisymmetric at " + names_[a]);
    }
  }
  auto bound = [&](Elem a, Elem b, bool upper) -> Elem {
    std::optional<Elem> best;
    for (Elem c = 0; c < n; ++c) {
      bool is_bound = upper ? (leq(a, c) && leq(b, c)) : (leq(c, a) && leq(c, b));
      if (!is_bound) continue;
      if (!best || (upper ? leq(c, *best) : leq(*best, c))) best = c;
    }
    if (!best) throw Error("no " + std::string(upper ? "join" : "meet") + " for " + names_[a] + ", " + names_[b]);
    for (Elem c = 0; c < n; ++c) {
      bool is_bound = upper ? (leq(a, c) && leq(b, c)) : (leq(c, a) && leq(c, b));
      if (is_bound && !(upper ? leq(*best, c) : leq(c, *best))) {
        throw Error("no unique " + std::string(upper ? "join" : "meet") + " for " + names_[a] + ", " + names_[b]);
      }
    }
    return *best;
  };
  join_.resize(n * n);
  meet_.resize(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      join_[a * n + b] = bound(a, b, true);
      meet_[a * n + b] = bound(a, b, false);
    }
  }
  bottom_ = 0;
  top_ = 0;
  for (Elem a = 1; a < n; ++a) {
    bottom_ = meet(bottom_, a);
    top_ = join(top_, a);
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
          throw Error("lattice is not distributive at " + names_[a] + ", " + names_[b] + ", " + names_[c]);
        }
      }
    }
  }
}

FiniteLattice FiniteLattice::from_covers(std::vector<std::string> names,
                                         const std::vector<std::pair<std::string, std::string>>& covers) {
  const std::size_t n = names.size();
  auto find = [&](const std::string& s) -> Elem {
    for (Elem i = 0; i < n; ++i) {
      if (names[i] == s) return i;
    }
    throw Error("unknown lattice element '" + s + "'");
  };
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = i + 1; j < n; ++j) {
      if (names[i] == names[j]) throw Error("duplicate lattice element '" + names[i] + "'");
    }
  }
  std::vector<bool> leq(n * n, false);
  for (Elem i = 0; i < n; ++i) leq[i * n + i] = true;
  for (const auto& [x, y] : covers) leq[find(x) * n + find(y)] = true;
  for (Elem k = 0; k < n; ++k) {
    for (Elem i = 0; i < n; ++i) {
      for (Elem j = 0; j < n; ++j) {
        if (leq[i * n + k] && leq[k * n + j]) leq[i * n + j] = true;
      }
    }
  }
  return FiniteLattice(std::move(names), std::move(leq));
}

FiniteLattice FiniteLattice::chain(std::size_t k) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return from_covers(std::move(names), covers);
}

FiniteLattice FiniteLattice::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  std::size_t lineno = 0;
  bool have_elements = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "elements:") {
      names.assign(w.begin() + 1, w.end());
      have_elements = true;
    } else if (w[0] == "leq:") {
      if (w.size() != 3) throw ParseError("expected 'leq: x y'", lineno, 1);
      covers.emplace_back(w[1], w[2]);
    } else {
      throw ParseError("unexpected line '" + line + "'", lineno, 1);
    }
  }
  if (!have_elements) throw ParseError("missing 'elements:' line", lineno, 1);
  return from_covers(std::move(names), covers);
}

FiniteLattice FiniteLattice::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lattice file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

FiniteLattice::Elem FiniteLattice::index(std::string_view name) const {
  for (Elem i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw Error("unknown lattice element '" + std::string(name) + "'");
}

bool FiniteLattice::is_chain() const {
  for (Elem a = 0; a < size(); ++a) {
    for (Elem b = 0; b < size(); ++b) {
      if (!leq(a, b) && !leq(b, a)) return false;
    }
  }
  return true;
}

bool FiniteLattice::has_zero_divisors() const {
  for (Elem a = 0; a < size(); ++a) {
    for (Elem b = 0; b < size(); ++b) {
      if (a != bottom_ && b != bottom_ && meet(a, b) == bottom_) return true;
    }
  }
  return false;
}

FiniteLattice FiniteLattice::adjoin_bottom(const std::string& name) const {
  const std::size_t n = size() + 1;
  std::vector<std::string> names;
  names.push_back(name);
  names.insert(names.end(), names_.begin(), names_.end());
  for (std::size_t i = 1; i < n; ++i) {
    if (names[i] == name) throw Error("name of the new bottom clashes with '" + name + "'");
  }
  std::vector<bool> order(n * n, false);
  for (Elem j = 0; j < n; ++j) order[j] = true;
  for (Elem a = 0; a < size(); ++a) {
    for (Elem b = 0; b < size(); ++b) order[(a + 1) * n + (b + 1)] = leq(a, b);
  }
  return FiniteLattice(std::move(names), std::move(order));
}

std::string FiniteLattice::to_string() const {
  std::string s = "elements:";
  for (const auto& n : names_) s += " " + n;
  s += "\n";
  for (Elem a = 0; a < size(); ++a) {
    for (Elem b = 0; b < size(); ++b) {
      if (a == b || !leq(a, b)) continue;
      bool cover = true;
      for (Elem c = 0; c < size(); ++c) {
        if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
      }
      if (cover) s += "leq: " + names_[a] + " " + names_[b] + "\n";
    }
  }
  return s;
}

}  // namespace semfo
