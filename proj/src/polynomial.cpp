// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/polynomial.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "semfo/error.h"

namespace semfo {
namespace {

class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mu_);
      auto it = index_.find(std::string(name));
      if (it != index_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto [it, inserted] = index_.emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  const std::string& name(std::uint32_t id) const {
    std::shared_lock lock(mu_);
    return names_[id];
  }

 private:
  mutable std::shared_mutex mu_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits at `sep` occurring outside parentheses.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// One product term of a polynomial: coefficient and monomial.
std::pair<Natural, Monomial> parse_term(std::string_view text) {
  Natural coeff = 1;
  Monomial m;
  for (std::string_view factor : split_top(text, '*')) {
    factor = trim(factor);
    if (factor.empty()) throw ParseError("empty factor in polynomial", 1, 1);
    if (all_digits(factor)) {
      coeff *= Natural(std::string(factor));
      continue;
    }
    std::uint32_t exponent = 1;
    std::size_t caret = factor.rfind('^');
    if (caret != std::string_view::npos && factor.find(')', caret) == std::string_view::npos) {
      std::string_view e = trim(factor.substr(caret + 1));
      if (!all_digits(e)) throw ParseError("bad exponent '" + std::string(e) + "'", 1, 1);
      unsigned long long v = std::stoull(std::string(e));
      if (v == 0 || v > std::numeric_limits<std::uint32_t>::max()) throw ParseError("exponent out of range", 1, 1);
      exponent = static_cast<std::uint32_t>(v);
      factor = trim(factor.substr(0, caret));
    }
    bool neg = false;
    if (!factor.empty() && factor.front() == '~') {
      neg = true;
      factor = trim(factor.substr(1));
    }
    if (factor.empty()) throw ParseError("missing variable name", 1, 1);
    Var v = neg ? Var::negative(factor) : Var::positive(factor);
    m = m * Monomial::of(v, exponent);
  }
  return {coeff, m};
}

bool named_less(const Monomial& a, const Monomial& b) {
  auto na = a.named();
  auto nb = b.named();
  if (na != nb) return na < nb;
  return a < b;
}

}  // namespace

Var Var::positive(std::string_view atom) { return Var(symbols().intern(atom) << 1); }

Var Var::negative(std::string_view atom) { return Var((symbols().intern(atom) << 1) | 1u); }

const std::string& Var::atom() const { return symbols().name(code_ >> 1); }

std::string Var::name() const { return negated() ? "~" + atom() : atom(); }

Monomial Monomial::of(Var v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.entries_.emplace_back(v, exponent);
  return m;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& [v, e] : entries_) d += e;
  return d;
}

std::uint32_t Monomial::exponent(Var v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, Var x) { return e.first < x; });
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      std::uint64_t e = std::uint64_t{a->second} + b->second;
      if (e > std::numeric_limits<std::uint32_t>::max()) throw Error("monomial exponent overflow (cap 2^32)");
      out.entries_.emplace_back(a->first, static_cast<std::uint32_t>(e));
      ++a;
      ++b;
    }
  }
  return out;
}

bool Monomial::has_complementary_pair() const {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if ((entries_[i - 1].first.code() >> 1) == (entries_[i].first.code() >> 1)) return true;
  }
  return false;
}

bool Monomial::divides(const Monomial& other) const {
  auto b = other.entries_.begin();
  for (const auto& [v, e] : entries_) {
    while (b != other.entries_.end() && b->first < v) ++b;
    if (b == other.entries_.end() || b->first != v || b->second < e) return false;
  }
  return true;
}

std::vector<std::pair<std::string, std::uint32_t>> Monomial::named() const {
  std::vector<std::pair<std::string, std::uint32_t>> out;
  out.reserve(entries_.size());
  for (const auto& [v, e] : entries_) out.emplace_back(v.name(), e);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Monomial::to_string() const {
  if (entries_.empty()) return "1";
  std::string s;
  for (const auto& [name, e] : named()) {
    if (!s.empty()) s += '*';
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

bool absorbs(const Monomial& m1, const Monomial& m2) { return m1.divides(m2); }

AbsorptivePoly AbsorptivePoly::one() { return of(Monomial()); }

AbsorptivePoly AbsorptivePoly::of(const Monomial& m) {
  AbsorptivePoly p;
  if (!m.has_complementary_pair()) p.monomials_.push_back(m);
  return p;
}

AbsorptivePoly AbsorptivePoly::from_unpruned(std::vector<Monomial> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  // Monomials of smaller degree come first so absorbers are kept before the absorbed.
  std::stable_sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> kept;
  for (auto& m : ms) {
    bool absorbed = false;
    for (const auto& k : kept) {
      if (absorbs(k, m)) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end());
  AbsorptivePoly p;
  p.monomials_ = std::move(kept);
  return p;
}

AbsorptivePoly AbsorptivePoly::parse(std::string_view text) {
  text = trim(text);
  if (text == "0") return zero();
  std::vector<Monomial> ms;
  for (std::string_view t : split_top(text, '+')) {
    auto [c, m] = parse_term(trim(t));
    if (c == 0) continue;
    if (!m.has_complementary_pair()) ms.push_back(m);
  }
  return from_unpruned(std::move(ms));
}

bool AbsorptivePoly::is_antichain() const {
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    if (monomials_[i].has_complementary_pair()) return false;
    for (std::size_t j = 0; j < monomials_.size(); ++j) {
      if (i != j && absorbs(monomials_[i], monomials_[j])) return false;
    }
  }
  return true;
}

AbsorptivePoly AbsorptivePoly::operator+(const AbsorptivePoly& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  std::vector<Monomial> ms = monomials_;
  ms.insert(ms.end(), other.monomials_.begin(), other.monomials_.end());
  return from_unpruned(std::move(ms));
}

AbsorptivePoly AbsorptivePoly::operator*(const AbsorptivePoly& other) const {
  std::vector<Monomial> ms;
  ms.reserve(monomials_.size() * other.monomials_.size());
  for (const auto& a : monomials_) {
    for (const auto& b : other.monomials_) {
      Monomial m = a * b;
      if (!m.has_complementary_pair()) ms.push_back(std::move(m));
    }
  }
  return from_unpruned(std::move(ms));
}

bool AbsorptivePoly::leq(const AbsorptivePoly& other) const { return *this + other == other; }

std::set<Var> AbsorptivePoly::support() const {
  std::set<Var> s;
  for (const auto& m : monomials_) {
    for (const auto& [v, e] : m.entries()) s.insert(v);
  }
  return s;
}

std::uint64_t AbsorptivePoly::degree() const {
  std::uint64_t d = 0;
  for (const auto& m : monomials_) d = std::max(d, m.degree());
  return d;
}

std::string AbsorptivePoly::to_string() const {
  if (monomials_.empty()) return "0";
  std::vector<Monomial> ms = monomials_;
  std::sort(ms.begin(), ms.end(), named_less);
  std::string s;
  for (const auto& m : ms) {
    if (!s.empty()) s += " + ";
    s += m.to_string();
  }
  return s;
}

NatPoly NatPoly::constant(const Natural& c) { return of(Monomial(), c); }

NatPoly NatPoly::of(const Monomial& m, const Natural& c) {
  NatPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

NatPoly NatPoly::parse(std::string_view text) {
  text = trim(text);
  NatPoly p;
  for (std::string_view t : split_top(text, '+')) {
    auto [c, m] = parse_term(trim(t));
    p = p + of(m, c);
  }
  return p;
}

bool NatPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

NatPoly NatPoly::operator+(const NatPoly& other) const {
  NatPoly out = *this;
  for (const auto& [m, c] : other.terms_) out.terms_[m] += c;
  return out;
}

NatPoly NatPoly::operator*(const NatPoly& other) const {
  NatPoly out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) out.terms_[ma * mb] += ca * cb;
  }
  return out;
}

bool NatPoly::leq(const NatPoly& other) const {
  for (const auto& [m, c] : terms_) {
    auto it = other.terms_.find(m);
    if (it == other.terms_.end() || it->second < c) return false;
  }
  return true;
}

std::set<Var> NatPoly::support() const {
  std::set<Var> s;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.entries()) s.insert(v);
  }
  return s;
}

std::uint64_t NatPoly::degree() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::string NatPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Natural>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return named_less(a.first, b.first); });
  std::string s;
  for (const auto& [m, c] : ts) {
    if (!s.empty()) s += " + ";
    if (m.is_one()) {
      s += c.get_str();
    } else if (c == 1) {
      s += m.to_string();
    } else {
      s += c.get_str() + "*" + m.to_string();
    }
  }
  return s;
}

}  // namespace semfo
